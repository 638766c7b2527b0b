// Spawns the installed command line driver and checks its contract: JSON
// shapes, exit codes, byte-stable output, and the spectrum -> recover ->
// spectrum round trip.

#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const fs::path& work_dir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "qpencil_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
  REQUIRE(out.good());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt";
  const fs::path err = work_dir() / "stderr.txt";
  const std::string cmd = std::string(QPENCIL_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

// vanishing-drift pencil with mirrored condition sets sharing one spectrum
const char* kProblemOne = R"({
  "pencil": {"b": [0, 0], "c": [-1, 0]},
  "bc": [[[1,0],[0,0],[2,0],[0,0]], [[0,0],[1,0],[0,0],[0,0]]],
  "region": {"re": [-1, 1], "im": [-30, 30]}
})";

const char* kProblemTwo = R"({
  "pencil": {"b": [0, 0], "c": [-1, 0]},
  "bc": [[[1,0],[0,0],[0,0],[0,0]], [[0,0],[1,0],[0,0],[-2,0]]]
})";

fs::path problem_one() {
  const fs::path p = work_dir() / "p1.json";
  write_file(p, kProblemOne);
  return p;
}

fs::path problem_two() {
  const fs::path p = work_dir() / "p2.json";
  write_file(p, kProblemTwo);
  return p;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("minors emits the hand-computed vector") {
  const auto r = run_cli("minors " + problem_one().string());
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  const json expected =
      json::array({{1, 0}, {0, 0}, {0, 0}, {-2, 0}, {0, 0}, {0, 0}});
  CHECK(j["pluecker"] == expected);
  CHECK(std::abs(j["relation_residual"][0].get<double>()) == 0.0);
  CHECK(r.err.find("relation residual") != std::string::npos);
}

TEST_CASE("delta value matches the frozen sample") {
  const auto r = run_cli("delta " + problem_one().string() + " --lambda 1,0");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["order"] == 0);
  CHECK(j["value"][0].get<double>() ==
        doctest::Approx(-3.8219201519733721).epsilon(1e-13));
  CHECK(j["value"][1].get<double>() == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("derivative order flows through") {
  const auto r = run_cli("delta " + problem_one().string() +
                         " --lambda 1,0 --order 5");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("OrderUnsupported") != std::string::npos);
}

TEST_CASE("spectrum reports the twenty roots and writes csv") {
  const fs::path csv = work_dir() / "spec.csv";
  const auto r = run_cli("spectrum " + problem_one().string() + " --csv " +
                         csv.string());
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["eigenvalues"].size() == 20);
  CHECK(j["zero_order"] == 1);
  for (const json& e : j["eigenvalues"]) {
    CHECK(e["multiplicity"] == 1);
    CHECK(e["residual"].get<double>() < 1e-11);
  }
  std::ifstream in(csv);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "re,im,multiplicity,residual");
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 20);
}

TEST_CASE("the region flag overrides the file region") {
  const auto r = run_cli("spectrum " + problem_one().string() +
                         " --region=-1,1,-7,7");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["eigenvalues"].size() == 4);
}

TEST_CASE("equiv distinguishes the two condition sets") {
  const auto r =
      run_cli("equiv " + problem_one().string() + " " + problem_two().string());
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["equivalent"] == false);
  CHECK(j["pluecker_a"].size() == 6);
  CHECK(j["pluecker_b"].size() == 6);
}

TEST_CASE("recover reports the non-unique family for vanishing drift") {
  const auto spec = run_cli("spectrum " + problem_one().string());
  REQUIRE(spec.exit_code == 0);
  const json sj = json::parse(spec.out);
  json rec;
  rec["pencil"] = {{"b", {0, 0}}, {"c", {-1, 0}}};
  rec["eigenvalues"] = sj["eigenvalues"];
  const fs::path rp = work_dir() / "rec.json";
  write_file(rp, rec.dump());
  const auto r = run_cli("recover " + rp.string());
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["status"] == "NonUnique");
  CHECK(j["nullspace_dim"] == 3);
  CHECK(!j.contains("ray"));
}

TEST_CASE("reconstructed conditions reproduce the spectrum") {
  const fs::path gp = work_dir() / "gen.json";
  write_file(gp, R"({
    "pencil": {"b": [1, 0], "c": [-1, 0]},
    "bc": [[[1,0],[2,0],[0,0],[1,0]], [[0,0],[1,0],[1,0],[-1,0]]]
  })");
  const auto spec = run_cli("spectrum " + gp.string());
  REQUIRE(spec.exit_code == 0);
  const json sj = json::parse(spec.out);
  REQUIRE(sj["eigenvalues"].size() >= 8);

  json rec;
  rec["pencil"] = {{"b", {1, 0}}, {"c", {-1, 0}}};
  rec["eigenvalues"] = sj["eigenvalues"];
  const fs::path rp = work_dir() / "gen_rec.json";
  write_file(rp, rec.dump());
  const auto rout = run_cli("recover " + rp.string());
  REQUIRE(rout.exit_code == 0);
  const json rj = json::parse(rout.out);
  REQUIRE(rj["status"] == "Unique");
  REQUIRE(rj.contains("reconstructed"));

  json back;
  back["pencil"] = {{"b", {1, 0}}, {"c", {-1, 0}}};
  back["bc"] = rj["reconstructed"];
  const fs::path bp = work_dir() / "gen_back.json";
  write_file(bp, back.dump());
  const auto spec2 = run_cli("spectrum " + bp.string());
  REQUIRE(spec2.exit_code == 0);
  const json s2 = json::parse(spec2.out);
  REQUIRE(s2["eigenvalues"].size() == sj["eigenvalues"].size());

  // entries may reorder when tiny real parts shuffle the lexicographic
  // sort, so pair each root with its nearest partner
  for (const json& a : sj["eigenvalues"]) {
    double best = 1e300;
    for (const json& b : s2["eigenvalues"]) {
      const double gap = std::abs(a["re"].get<double>() - b["re"].get<double>()) +
                         std::abs(a["im"].get<double>() - b["im"].get<double>());
      best = std::min(best, gap);
    }
    CHECK(best < 1e-9);
  }
}

TEST_CASE("verify summarizes deterministic trials") {
  const auto r = run_cli("verify --trials 4 --seed 42");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["num_trials"] == 4);
  CHECK(j["seed"] == 42);
  CHECK(j["failures"] == 0);
  CHECK(j["passes"].get<int>() + j["inconclusives"].get<int>() == 4);
  CHECK(j["trials"].size() == 4);
  CHECK(j["trials"][1].contains("witness"));
}

TEST_CASE("examples emits one report per id and variant") {
  const auto r = run_cli("examples --id 2");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j["reports"].size() == 2);
  CHECK(j["reports"][0]["variant"] == "printed");
  CHECK(j["reports"][1]["variant"] == "corrected");
  for (const json& rep : j["reports"]) {
    CHECK(rep["id"] == 2);
    CHECK(rep["claim_holds"] == true);
    CHECK(rep["bc_equivalent"] == false);
    CHECK(rep["checks"].size() >= 3);
    CHECK(rep["spectra"].size() == 2);
  }
}

TEST_CASE("unknown keys are rejected") {
  const fs::path p = work_dir() / "bad.json";
  write_file(p, R"({"pencil": {"b": [0,0], "c": [-1,0], "x": 1},
                    "bc": [[[1,0],[0,0],[2,0],[0,0]],
                           [[0,0],[1,0],[0,0],[0,0]]]})");
  const auto r = run_cli("minors " + p.string());
  CHECK(r.exit_code == 1);
  const json e = json::parse(r.err);
  CHECK(e["code"] == "SchemaError");
}

TEST_CASE("invalid input data exits 1 with the library error code") {
  const fs::path p = work_dir() / "badpencil.json";
  write_file(p, R"({"pencil": {"b": [0,0], "c": [0,0]},
                    "bc": [[[1,0],[0,0],[2,0],[0,0]],
                           [[0,0],[1,0],[0,0],[0,0]]]})");
  const auto r = run_cli("minors " + p.string());
  CHECK(r.exit_code == 1);
  const json e = json::parse(r.err);
  CHECK(e["code"] == "InvalidPencil");
}

TEST_CASE("usage problems exit 3") {
  CHECK(run_cli("nosuch").exit_code == 3);
  CHECK(run_cli("spectrum " + problem_one().string() + " --region 1,2")
            .exit_code == 3);
  CHECK(run_cli("delta " + problem_one().string() + " --lambda oops,0")
            .exit_code == 3);
}

TEST_CASE("identical invocations emit identical bytes") {
  const auto a = run_cli("examples --id 1");
  const auto b = run_cli("examples --id 1");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}

}  // TEST_SUITE
