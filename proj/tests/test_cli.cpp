#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "planchgrow/asymptotics.hpp"
#include "planchgrow/kernel.hpp"
#include "planchgrow/repmeasures.hpp"

using namespace pg;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string &args, const std::string &env = "") {
  const std::string cmd = env + " " + PLANCHGROW_CLI_PATH + " " + args + " 2>/dev/null";
  Run r;
  FILE *p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path &p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string &text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

fs::path scratch() {
  const fs::path d = fs::temp_directory_path() / "planchgrow_cli_test";
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("simulate at gamma 0 leaves the leftmost state") {
  const fs::path d = scratch();
  const Run r = run("simulate --levels 5 --gamma 0 --seed 1 -o " + (d / "left").string());
  REQUIRE(r.code == 0);
  CHECK(r.out.find("events 0") != std::string::npos);
  const auto rows = csv_rows(slurp(d / "left.state.csv"));
  REQUIRE(rows.size() == 10);  // header plus r_1 + ... + r_5 = 9 particles
  for (std::size_t j = 1; j < rows.size(); ++j) {
    const int level = std::stoi(rows[j][0]), index = std::stoi(rows[j][1]);
    CHECK(std::stoi(rows[j][3]) == r_of(level) - index);
  }
  CHECK(slurp(d / "left.events.jsonl") == "#planchgrow v1 seed=1 levels=5 gamma=0 mode=symplectic\n");
}

TEST_CASE("identical seeds give byte-identical files") {
  const fs::path d = scratch();
  for (const char *tag : {"a", "b"})
    REQUIRE(run("simulate --levels 4 --gamma 3 --seed 77 -o " + (d / tag).string()).code == 0);
  const std::string ea = slurp(d / "a.events.jsonl"), eb = slurp(d / "b.events.jsonl");
  CHECK(ea.size() > 200);
  CHECK(ea == eb);
  CHECK(slurp(d / "a.state.csv") == slurp(d / "b.state.csv"));
  REQUIRE(run("simulate --levels 4 --gamma 3 --seed 78 -o " + (d / "c").string()).code == 0);
  CHECK(slurp(d / "c.events.jsonl") != ea);

  // every event line is a JSON object with the five fields
  std::stringstream ss(ea);
  std::string line;
  std::getline(ss, line);
  CHECK(line.rfind("#planchgrow v1 seed=77", 0) == 0);
  int events = 0;
  while (std::getline(ss, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.contains("time"));
    CHECK(std::abs(j["new"].get<int>() - j["old"].get<int>()) == 1);
    ++events;
  }
  CHECK(events > 0);
}

TEST_CASE("seed from the environment, flags over config over defaults") {
  const fs::path d = scratch();
  Run r = run("phase --nu-points 0 --eta-points 0", "PLANCHGROW_SEED=31");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("#planchgrow v1 seed=31 ", 0) == 0);
  r = run("phase --nu-points 0 --eta-points 0 --seed 32", "PLANCHGROW_SEED=31");
  CHECK(r.out.rfind("#planchgrow v1 seed=32 ", 0) == 0);
  r = run("phase --nu-points 0 --eta-points 0");
  CHECK(r.out.rfind("#planchgrow v1 seed=12345 ", 0) == 0);

  std::ofstream(d / "run.cfg") << "# sample\nseed=5\ntau=2\nnu-points=0\neta-points=0\n";
  r = run("--config " + (d / "run.cfg").string() + " phase");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("#planchgrow v1 seed=5 tau=2\n", 0) == 0);
  r = run("--config " + (d / "run.cfg").string() + " phase --tau 3 --seed 6");
  CHECK(r.out.rfind("#planchgrow v1 seed=6 tau=3\n", 0) == 0);
}

TEST_CASE("phase raster") {
  const Run empty = run("phase --seed 1 --nu-points 0 --eta-points 0");
  REQUIRE(empty.code == 0);
  CHECK(empty.out == "#planchgrow v1 seed=1 tau=1\ntau,nu,eta,label,re_z0,im_z0,density\n");

  const Run r = run("phase --nu-points 30 --eta-points 20 --threads 2");
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 1 + 30 * 20);
  int seen[3] = {0, 0, 0};
  for (std::size_t j = 1; j < rows.size(); ++j) {
    const PhasePoint p{std::stod(rows[j][0]), std::stod(rows[j][1]), std::stod(rows[j][2])};
    const Region reg = classify_phase(p).region;
    CHECK(rows[j][3] == region_name(reg));
    ++seen[static_cast<int>(reg)];
  }
  CHECK(seen[0] > 0);
  CHECK(seen[1] > 0);
  CHECK(seen[2] > 0);
  CHECK(run("phase --nu-points 30 --eta-points 20 --threads 1").out == r.out);

  const Run b = run("phase --boundaries --eta-points 5");
  REQUIRE(b.code == 0);
  CHECK(csv_rows(b.out).size() == 6);
}

TEST_CASE("kernel table and determinant queries") {
  const Run r = run("kernel --gamma 1 --smax 8 --nmax 3 --seed 2");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("#planchgrow v1 seed=2 gamma=1", 0) == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 1 + 27 * 27);
  // diagonal entries against the exhaustive enumeration
  const BruteForce bf(3, SpecFunction::pure(1.0), 14);
  double worst = 0;
  int diag = 0;
  for (std::size_t j = 1; j < rows.size(); ++j) {
    if (rows[j][0] != rows[j][2] || rows[j][1] != rows[j][3]) continue;
    const Site s{std::stoi(rows[j][0]), std::stoi(rows[j][1])};
    worst = std::max(worst, std::abs(std::stod(rows[j][4]) - bf.correlation({s})));
    ++diag;
  }
  CHECK(diag == 27);
  CHECK(worst < 1e-7);

  const Run q = run("kernel --gamma 1 --sites 0:1,1:2,0:3");
  REQUIRE(q.code == 0);
  const auto qr = csv_rows(q.out);
  REQUIRE(qr.size() == 2);
  CHECK(std::stod(qr[1][qr[1].size() - 2]) == doctest::Approx(bf.correlation({{0, 1}, {1, 2}, {0, 3}})).epsilon(1e-7));
}

TEST_CASE("simulated occupations against brute force") {
  const fs::path d = scratch();
  const Run r = run("simulate --levels 3 --gamma 1 --trials 100000 --smax 4 --seed 3 -o " + (d / "occ").string());
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(slurp(d / "occ.occupation.csv"));
  REQUIRE(rows.size() == 1 + 15);
  const BruteForce bf(3, SpecFunction::pure(1.0), 14);
  int outside = 0;
  for (std::size_t j = 1; j < rows.size(); ++j) {
    const Site s{std::stoi(rows[j][1]), std::stoi(rows[j][0])};
    const double mean = std::stod(rows[j][2]), se = std::stod(rows[j][3]);
    outside += std::abs(mean - bf.correlation({s})) > 3 * std::max(se, 1e-4);
  }
  CHECK(outside <= 1);
}

TEST_CASE("brute command reproduces the golden table") {
  const Run r = run("brute --levels 4 --gamma 1 --cap 12 --smax 10 --seed 0");
  REQUIRE(r.code == 0);
  CHECK(r.out == slurp(fs::path(PLANCHGROW_GOLDEN_DIR) / "brute_n4_g1_M12.csv"));
}

TEST_CASE("verify writes a JSON report") {
  const Run r = run("verify orthopoly");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["suite"] == "orthopoly");
  CHECK(j["pass"] == true);
  REQUIRE(j["criteria"].size() == 1);
  for (const auto &c : j["criteria"][0]["checks"]) {
    CHECK(c.contains("value"));
    CHECK(c.contains("tolerance"));
    CHECK(c["pass"] == true);
  }
}

TEST_CASE("exit codes") {
  const fs::path d = scratch();
  CHECK(run("verify nonsense").code == 1);
  CHECK(run("kernel --sites 0:x").code == 1);
  CHECK(run("kernel --sites 1:0").code == 1);
  CHECK(run("simulate --mode sideways -o " + (d / "m").string()).code == 1);
  CHECK(run("simulate --levels 0 -o " + (d / "m").string()).code == 1);
  CHECK(run("simulate --levels 2 -o /nonexistent/dir/x").code == 1);
  CHECK(run("phase --tau -1").code == 1);
  CHECK(run("--levels").code == 1);
  CHECK(run("").code == 1);
  CHECK(run("--help").code == 0);
  // a contour rule far too coarse for gamma = 5 leaves an imaginary residue
  CHECK(run("kernel --method contour --contour-nodes 8 --order 4 --gamma 5 --imag-tol 1e-300").code == 2);
}
