#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "fixtures.hpp"
#include "geocross/io.hpp"

using namespace geocross;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("geocross_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string write(const std::string& name, const std::string& content) const {
    const auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// CSV text with the last column removed from every line.
std::string drop_last_column(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
  return out;
}

}  // namespace

TEST_CASE("detect reports found and not-found with exit 0") {
  TempDir dir;
  const auto fam = dir.write("fam.json", dump(to_json(fixture::family_21())));
  auto r = run_cli({"detect", "--input", fam, "--pattern", "crossing-family:2,1"});
  CHECK(r.code == cli::kExitOk);
  auto j = Json::parse(r.out);
  CHECK(j["found"] == true);
  CHECK(j["query"] == "crossing-family:2,1");
  CHECK(j["e1"] == Json::array({0, 1}));
  CHECK(j["e2"] == Json::array({2}));
  CHECK(j["status"] == "FOUND");

  r = run_cli({"detect", "-i", fam, "--pattern", "grid:2,1"});
  CHECK(r.code == cli::kExitOk);
  CHECK(Json::parse(r.out)["found"] == false);

  r = run_cli({"detect", "-i", fam, "--pattern", "circle3:family21", "--format", "svg"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("class=\"edge e1\"") != std::string::npos);

  const auto topo = dir.write("topo.json", R"({"matrix":{"edge_count":2,"pairs":[[0,1,"CROSS"]]}})");
  r = run_cli({"detect", "-i", topo, "--pattern", "pairwise-crossing:2"});
  CHECK(r.code == cli::kExitOk);
  CHECK(Json::parse(r.out)["found"] == true);
}

TEST_CASE("exit code matrix") {
  TempDir dir;
  const auto good = dir.write("g.json", dump(to_json(fixture::family_21())));
  const auto collinear = dir.write("c.json", R"({"points":[[0,0],[1,1],[2,2]],"edges":[]})");
  const auto broken = dir.write("b.json", R"({"points":[[0,0],)");
  const auto shape = dir.write("s.json", R"({"points":[[0,0,0]]})");
  const auto huge = dir.write("h.json", R"({"points":[[0,0],[1073741825,3]]})");
  const auto loop = dir.write("l.json", R"({"points":[[0,0],[1,3]],"edges":[[1,1]]})");
  const auto star = dir.write("star.json", R"({"points":[[0,0],[4,1],[1,5]],"edges":[[0,1],[0,2]]})");
  const auto odd = dir.write("odd.json", R"({"points":[[0,0],[4,1],[1,5]],"edges":[]})");
  const auto missing = dir.path("nope.json");

  struct Case {
    std::vector<std::string> args;
    int code;
  };
  const std::vector<Case> cases{
      {{"validate", "-i", good}, cli::kExitOk},
      {{"validate", "-i", collinear}, cli::kExitInvalid},
      {{"validate", "-i", huge}, cli::kExitInvalid},
      {{"validate", "-i", loop}, cli::kExitInvalid},
      {{"validate", "-i", broken}, cli::kExitUsage},
      {{"validate", "-i", shape}, cli::kExitUsage},
      {{"validate", "-i", missing}, cli::kExitUsage},
      {{"detect", "-i", good}, cli::kExitUsage},
      {{"detect", "-i", good, "--pattern", "crossing-family:0,1"}, cli::kExitUsage},
      {{"detect", "-i", good, "--pattern", "hexagon:2"}, cli::kExitUsage},
      {{"detect", "-i", good, "--pattern", "grid:2,1", "--format", "csv"}, cli::kExitUsage},
      {{"detect", "-i", good, "--pattern", "grid:2,1", "--budget", "0"}, cli::kExitUsage},
      {{"detect", "-i", collinear, "--pattern", "grid:2,1"}, cli::kExitInvalid},
      {{"detect", "-i", broken, "--pattern", "grid:2,1"}, cli::kExitUsage},
      {{"detect", "--pattern", "grid:2,1"}, cli::kExitUsage},
      {{"frobnicate"}, cli::kExitUsage},
      {{}, cli::kExitUsage},
      {{"detect", "-i", good, "--pattern", "grid:2,1", "--bogus"}, cli::kExitUsage},
      {{"decompose", "-i", good, "--leaf-size", "1"}, cli::kExitInvalid},
      {{"decompose", "-i", good, "--leaf-size", "x"}, cli::kExitUsage},
      {{"decompose", "-i", good}, cli::kExitOk},
      {{"halving", "-i", good}, cli::kExitOk},
      {{"halving", "-i", odd}, cli::kExitInvalid},
      {{"good", "-i", good}, cli::kExitInvalid},
      {{"good", "-i", star}, cli::kExitInvalid},
      {{"extremal", "--pattern", "grid:2,1", "--n", "6,x"}, cli::kExitUsage},
      {{"extremal", "--pattern", "grid:2,1", "--n", "6", "--generator", "spiral"}, cli::kExitUsage},
      {{"extremal", "--pattern", "grid:2,1", "--n", "6", "--trials", "0"}, cli::kExitUsage},
      {{"render", "-i", good, "--format", "json"}, cli::kExitUsage},
      {{"render", "-i", good, "-o", dir.path("missing_dir/out.svg")}, cli::kExitInternal},
      {{"--help"}, cli::kExitOk},
  };
  for (const auto& c : cases) {
    std::string joined;
    for (const auto& a : c.args) joined += a + " ";
    INFO(joined);
    const auto r = run_cli(c.args);
    CHECK(r.code == c.code);
    if (c.code != cli::kExitOk && c.code != cli::kExitInvalid) CHECK_FALSE(r.err.empty());
  }
}

TEST_CASE("validate reports the collinear triple") {
  TempDir dir;
  const auto collinear = dir.write("c.json", R"({"points":[[7,3],[0,0],[1,1],[2,2]],"edges":[]})");
  const auto r = run_cli({"validate", "-i", collinear});
  CHECK(r.code == cli::kExitInvalid);
  const auto j = Json::parse(r.out);
  CHECK(j["valid"] == false);
  CHECK(j["indices"] == Json::array({1, 2, 3}));
  const auto ok = run_cli({"validate", "-i", dir.write("g.json", dump(to_json(fixture::grid_21())))});
  CHECK(Json::parse(ok.out)["valid"] == true);
  CHECK(Json::parse(ok.out)["edges"] == 3);
}

TEST_CASE("output file and alias") {
  TempDir dir;
  const auto in = dir.write("g.json", dump(to_json(fixture::square_diagonals())));
  const auto a = dir.path("a.json"), b = dir.path("b.json");
  CHECK(run_cli({"halving", "-i", in, "--output", a}).code == cli::kExitOk);
  const auto r = run_cli({"halving", "-i", in, "--out", b});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.empty());
  CHECK(read(a) == read(b));
  const auto j = Json::parse(read(a));
  CHECK(j["halving_pair"] == Json::array({0, 2}));
  CHECK(j["rotation"]["balanced"]["e_left"] == 0);
}

TEST_CASE("hamsandwich accepts two point sets or a graph") {
  TempDir dir;
  const auto sets = dir.write("v.json", R"({"v1":[[0,0],[2,0]],"v2":[[1,1],[1,-1]]})");
  auto r = run_cli({"hamsandwich", "-i", sets});
  REQUIRE(r.code == cli::kExitOk);
  auto j = Json::parse(r.out);
  CHECK(j["bisecting"] == true);
  CHECK(j["v1_size"] == 2);
  CHECK(j["cut"]["counts"][1]["on"] == 2);
  const auto g = dir.write("g.json", dump(to_json(fixture::random_graph(5, 20, 30, 100))));
  r = run_cli({"hamsandwich", "-i", g});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(Json::parse(r.out)["bisecting"] == true);
  const auto bad = dir.write("bad.json", R"({"v1":[[0,0],[1,1]],"v2":[[2,2]]})");
  CHECK(run_cli({"hamsandwich", "-i", bad}).code == cli::kExitInvalid);
}

TEST_CASE("good and render on a frame with a fourth edge") {
  TempDir dir;
  const auto frame = make_triangle_frame(triangle_frame_template());
  std::mt19937_64 rng(3);
  const auto e = fixture::sample_fourth_edge(rng, frame, FourthEdgeCase::INSIDE_T);
  REQUIRE(e);
  std::vector<Segment> segs(frame.edges.begin(), frame.edges.end());
  segs.push_back(*e);
  const auto in = dir.write("m.json", dump(to_json(fixture::from_segments(segs))));
  auto r = run_cli({"good", "-i", in});
  REQUIRE(r.code == cli::kExitOk);
  const auto j = Json::parse(r.out);
  CHECK(j["good_count"].get<int>() >= 2);
  CHECK(j["lemma_holds"] == true);
  r = run_cli({"render", "-i", in, "--good"});
  REQUIRE(r.code == cli::kExitOk);
  std::size_t marks = 0;
  for (auto p = r.out.find("class=\"good\""); p != std::string::npos; p = r.out.find("class=\"good\"", p + 1)) ++marks;
  CHECK(marks >= 2);
}

TEST_CASE("extremal output is reproducible") {
  TempDir dir;
  const auto a = dir.path("r1.csv"), b = dir.path("r2.csv");
  const std::vector<std::string> base{"extremal", "--pattern", "crossing-family:2,1", "--n", "20,40",
                                      "--trials", "2", "--seed", "9"};
  auto args = base;
  args.insert(args.end(), {"--out", a});
  REQUIRE(run_cli(args).code == cli::kExitOk);
  args = base;
  args.insert(args.end(), {"--out", b});
  REQUIRE(run_cli(args).code == cli::kExitOk);
  const auto ca = read(a);
  CHECK(ca.rfind("n,trial,seed,query,edges,maximal,status,elapsed_ms\n", 0) == 0);
  CHECK(drop_last_column(ca) == drop_last_column(read(b)));
  std::size_t lines = 0;
  for (char ch : ca) lines += ch == '\n';
  CHECK(lines == 5);

  auto json_args = base;
  json_args.insert(json_args.end(), {"--format", "json", "--generator", "convex"});
  const auto r = run_cli(json_args);
  REQUIRE(r.code == cli::kExitOk);
  const auto j = Json::parse(r.out);
  REQUIRE(j.size() == 4);
  CHECK(j[0]["graph"]["points"].size() == 20);
  CHECK(j[3]["n"] == 40);
}
