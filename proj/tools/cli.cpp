#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "geocross/errors.hpp"
#include "geocross/extremal.hpp"
#include "geocross/io.hpp"
#include "geocross/partition.hpp"
#include "geocross/render.hpp"

namespace geocross::cli {

namespace {

/// Bad flag value discovered after CLI11 parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string output;
  std::string pattern;
  std::string n_list = "20,40";
  std::string generator = "random-disk";
  std::string format;
  std::uint64_t seed = 1;
  std::uint64_t budget = 1'000'000;
  std::size_t trials = 1;
  std::size_t leaf_size = 2;
  Coord scale = 10'000;
  bool good = false;
};

ForbiddenQuery parse_query(const std::string& text) {
  if (text.empty()) throw UsageError("--pattern is required");
  try {
    return ForbiddenQuery::parse(text);
  } catch (const ArgumentError& e) {
    throw UsageError(std::string("bad --pattern: ") + e.what());
  }
}

std::vector<std::size_t> parse_n_list(const std::string& text) {
  std::vector<std::size_t> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      throw UsageError("bad --n list '" + text + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) throw UsageError("--n list is empty");
  return values;
}

std::string require_format(const Options& o, std::initializer_list<const char*> allowed, const char* fallback) {
  if (o.format.empty()) return fallback;
  for (const char* f : allowed) {
    if (o.format == f) return o.format;
  }
  throw UsageError("format '" + o.format + "' not supported by this command");
}

SearchBudget budget_of(const Options& o) {
  if (o.budget < 1) throw UsageError("--budget must be at least 1");
  return SearchBudget{o.budget, std::nullopt};
}

std::vector<Point> good_points(const DisjointMatching& m) {
  std::vector<Point> pts;
  for (const auto& e : good_endpoints(m)) pts.push_back(m.point(e));
  return pts;
}

std::string cmd_detect(const Options& o) {
  const auto query = parse_query(o.pattern);
  const auto format = require_format(o, {"json", "svg"}, "json");
  const auto doc = load_graph(o.input);
  const auto result = detect(doc.intersection_matrix(), query, budget_of(o));
  if (format == "svg") return render_svg(doc.geometry(), RenderOptions{result.witness, {}});
  Json j{{"query", query.to_string()}};
  j.update(to_json(result));
  return dump(j);
}

std::string cmd_decompose(const Options& o) {
  require_format(o, {"json"}, "json");
  return dump(to_json(decompose(load_graph(o.input).geometry(), o.leaf_size)));
}

std::string cmd_halving(const Options& o) {
  require_format(o, {"json"}, "json");
  const auto doc = load_graph(o.input);
  const auto& g = doc.geometry();
  const auto [u, v] = find_halving_edge(g);
  Json j{{"halving_pair", Json::array({u, v})}};
  j["rotation"] = to_json(rotate_to_balance(g));
  return dump(j);
}

std::string cmd_hamsandwich(const Options& o) {
  require_format(o, {"json"}, "json");
  const auto text = read_file(o.input);
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  std::vector<Point> v1, v2;
  if (doc.is_object() && doc.contains("v1")) {
    if (!doc.contains("v2")) throw ParseError("missing field 'v2'");
    v1 = parse_points(doc.at("v1"));
    v2 = parse_points(doc.at("v2"));
    std::vector<Point> all = v1;
    all.insert(all.end(), v2.begin(), v2.end());
    (void)GeometricGraph(all, {});
  } else {
    const auto doc_graph = parse_graph(text);
    const auto& g = doc_graph.geometry();
    const auto rotation = rotate_to_balance(g);
    const auto classes = split_by_halving(g.points(), rotation.balanced());
    for (std::size_t i : classes[0]) v1.push_back(g.points()[i]);
    for (std::size_t i : classes[1]) v2.push_back(g.points()[i]);
  }
  const auto cut = ham_sandwich(v1, v2);
  Json j{{"v1_size", v1.size()}, {"v2_size", v2.size()}};
  j["cut"] = to_json(cut);
  j["bisecting"] = is_bisecting(cut, v1.size(), v2.size());
  return dump(j);
}

std::string cmd_good(const Options& o) {
  const auto format = require_format(o, {"json", "svg"}, "json");
  const auto doc = load_graph(o.input);
  const auto& g = doc.geometry();
  const auto m = DisjointMatching::from_graph(g);
  if (format == "svg") return render_svg(g, RenderOptions{std::nullopt, good_points(m)});
  return dump(good_report(m));
}

std::string cmd_extremal(const Options& o) {
  const auto query = parse_query(o.pattern);
  const auto format = require_format(o, {"csv", "json"}, "csv");
  const auto sizes = parse_n_list(o.n_list);
  GeneratorSpec spec;
  try {
    spec.kind = parse_generator_kind(o.generator);
  } catch (const ArgumentError& e) {
    throw UsageError(e.what());
  }
  spec.coordinate_scale = o.scale;
  if (o.trials < 1) throw UsageError("--trials must be at least 1");
  const auto outcomes = growth_experiment(spec, query, sizes, o.trials, o.seed, budget_of(o));
  std::vector<ExperimentRecord> records;
  for (const auto& r : outcomes) records.push_back(r.record);
  if (format == "csv") {
    std::ostringstream ss;
    write_csv(ss, records);
    return ss.str();
  }
  Json rows = Json::array();
  for (const auto& out : outcomes) {
    const auto& r = out.record;
    rows.push_back({{"n", r.n},
                    {"trial", r.trial},
                    {"seed", r.seed},
                    {"query", r.query},
                    {"edges", r.edges},
                    {"maximal", r.maximal},
                    {"status", r.status},
                    {"elapsed_ms", r.elapsed_ms},
                    {"graph", to_json(out.graph)}});
  }
  return dump(rows);
}

std::string cmd_render(const Options& o) {
  require_format(o, {"svg"}, "svg");
  const auto doc = load_graph(o.input);
  const auto& g = doc.geometry();
  RenderOptions options;
  if (!o.pattern.empty()) {
    const auto result = detect(doc.intersection_matrix(), parse_query(o.pattern), budget_of(o));
    if (result.found()) options.witness = result.witness;
  }
  if (o.good) options.good_points = good_points(DisjointMatching::from_graph(g));
  return render_svg(g, options);
}

std::string cmd_validate(const Options& o, int& exit_code) {
  require_format(o, {"json"}, "json");
  try {
    const auto doc = load_graph(o.input);
    Json j{{"valid", true}};
    j["vertices"] = doc.graph ? doc.graph->vertex_count() : 0;
    j["edges"] = doc.graph ? doc.graph->edge_count() : doc.matrix->edge_count();
    return dump(j);
  } catch (const ValidationError& e) {
    exit_code = kExitInvalid;
    Json indices = Json::array();
    for (auto i : e.indices()) indices.push_back(i);
    return dump(Json{{"valid", false}, {"error", e.what()}, {"indices", indices}});
  } catch (const RangeError& e) {
    exit_code = kExitInvalid;
    return dump(Json{{"valid", false}, {"error", e.what()}, {"indices", Json::array()}});
  }
}

void emit(const Options& o, const std::string& payload, std::ostream& out) {
  if (o.output.empty()) {
    out << payload;
    return;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + o.output + "'");
  file << payload;
  if (!file) throw std::runtime_error("write to '" + o.output + "' failed");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Geometric graph pattern and partition toolkit", "geocross"};
  app.require_subcommand(1, 1);

  auto add_io = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("-i,--input", o.input, "Input JSON file");
    if (needs_input) in->required();
    sub->add_option("-o,--output,--out", o.output, "Output file (default: standard output)");
    sub->add_option("--format", o.format, "json | csv | svg");
  };

  auto* detect_cmd = app.add_subcommand("detect", "Search for a forbidden pattern");
  add_io(detect_cmd, true);
  detect_cmd->add_option("--pattern", o.pattern, "Pattern grammar")->required();
  detect_cmd->add_option("--budget", o.budget, "Search node limit");

  auto* decompose_cmd = app.add_subcommand("decompose", "Recursive quadrant decomposition");
  add_io(decompose_cmd, true);
  decompose_cmd->add_option("--leaf-size", o.leaf_size, "Stop splitting at this many vertices");

  auto* halving_cmd = app.add_subcommand("halving", "Halving pair and balanced rotating halving line");
  add_io(halving_cmd, true);

  auto* ham_cmd = app.add_subcommand("hamsandwich", "Simultaneous bisector of two point sets");
  add_io(ham_cmd, true);

  auto* good_cmd = app.add_subcommand("good", "Good endpoints of a disjoint matching");
  add_io(good_cmd, true);

  auto* extremal_cmd = app.add_subcommand("extremal", "Greedy pattern-free graph growth experiment");
  add_io(extremal_cmd, false);
  extremal_cmd->add_option("--pattern", o.pattern, "Pattern grammar")->required();
  extremal_cmd->add_option("--n", o.n_list, "Comma-separated vertex counts");
  extremal_cmd->add_option("--trials", o.trials, "Trials per n");
  extremal_cmd->add_option("--seed", o.seed, "Master seed");
  extremal_cmd->add_option("--budget", o.budget, "Search node limit per detector call");
  extremal_cmd->add_option("--generator", o.generator, "random-disk | convex | perturbed-grid");
  extremal_cmd->add_option("--scale", o.scale, "Coordinate scale");

  auto* render_cmd = app.add_subcommand("render", "SVG drawing of a graph");
  add_io(render_cmd, true);
  render_cmd->add_option("--pattern", o.pattern, "Highlight a witness of this pattern");
  render_cmd->add_option("--budget", o.budget, "Search node limit");
  render_cmd->add_flag("--good", o.good, "Mark good endpoints (edges must form a disjoint matching)");

  auto* validate_cmd = app.add_subcommand("validate", "Check a graph file");
  add_io(validate_cmd, true);

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  int exit_code = kExitOk;
  try {
    std::string payload;
    if (detect_cmd->parsed()) payload = cmd_detect(o);
    else if (decompose_cmd->parsed()) payload = cmd_decompose(o);
    else if (halving_cmd->parsed()) payload = cmd_halving(o);
    else if (ham_cmd->parsed()) payload = cmd_hamsandwich(o);
    else if (good_cmd->parsed()) payload = cmd_good(o);
    else if (extremal_cmd->parsed()) payload = cmd_extremal(o);
    else if (render_cmd->parsed()) payload = cmd_render(o);
    else payload = cmd_validate(o, exit_code);
    emit(o, payload, out);
    if (exit_code == kExitInvalid) err << "error: input failed validation\n";
    return exit_code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what();
    if (!e.indices().empty()) {
      err << " (indices";
      for (auto i : e.indices()) err << ' ' << i;
      err << ')';
    }
    err << "\n";
    return kExitInvalid;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const DegenerateGeometryError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const SizeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace geocross::cli
