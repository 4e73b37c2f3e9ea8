#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <sstream>

#include "planchgrow/growth.hpp"

using namespace pg;

namespace {

PatternState make(std::vector<std::vector<int>> y) {
  PatternState s;
  s.y = std::move(y);
  return s;
}

}  // namespace

TEST_CASE("leftmost state and coordinates") {
  const PatternState s = PatternState::leftmost(5);
  CHECK(s.y == std::vector<std::vector<int>>{{0}, {1}, {2, 0}, {3, 1}, {4, 2, 0}});
  CHECK(s.valid());
  const PointConfig c = to_tilde(s);
  for (int n = 1; n <= 5; ++n)
    for (int k = 1; k <= r_of(n); ++k) CHECK(c[n - 1][k - 1] == r_of(n) - k);
  for (const auto &p : to_partitions(s))
    for (int x : p.parts) CHECK(x == 0);
}

TEST_CASE("coordinate round trips") {
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    PatternState s;
    simulate_final(6, 0.5 + (seed % 7) * 0.5, seed % 2 ? WallMode::Symplectic : WallMode::Orthogonal, seed, s);
    REQUIRE(s.valid());
    CHECK(to_y(to_tilde(s)) == s);
    CHECK(from_partitions(to_partitions(s)) == s);
  }
  CHECK_THROWS(to_y(PointConfig{{1}, {0}}));  // y^1_1 = y^2_1 = 1
  CHECK_THROWS(parse_mode("both"));
}

TEST_CASE("level-1 right jump from the leftmost state pushes the top row") {
  PatternState s = PatternState::leftmost(5);
  CHECK(step_event(s, 1, 1, +1, WallMode::Symplectic));
  CHECK(s.y == std::vector<std::vector<int>>{{1}, {2}, {3, 0}, {4, 1}, {5, 2, 0}});
  // in x~ every first particle moved one unit, the rest stayed
  const PointConfig c = to_tilde(s), c0 = to_tilde(PatternState::leftmost(5));
  for (int n = 1; n <= 5; ++n)
    for (int k = 1; k <= r_of(n); ++k) CHECK(c[n - 1][k - 1] == c0[n - 1][k - 1] + (k == 1 ? 1 : 0));
}

TEST_CASE("wall suppression and reflection") {
  PatternState s = make({{0}});
  CHECK_FALSE(step_event(s, 1, 1, -1, WallMode::Symplectic));
  CHECK(s.y[0][0] == 0);
  CHECK(step_event(s, 1, 1, -1, WallMode::Orthogonal));
  CHECK(s.y[0][0] == 1);

  // reflection blocked from above is suppressed
  PatternState t = make({{2}, {3}, {4, 0}});
  // y^3_2 = 0 may only live in [0, y^2_1) = [0, 3)
  CHECK(step_event(t, 3, 2, -1, WallMode::Orthogonal));
  CHECK(t.y[2][1] == 1);
  PatternState u = make({{0}, {1}, {2, 0}});
  CHECK_FALSE(step_event(u, 3, 2, -1, WallMode::Orthogonal));  // target 1 is not below y^2_1 = 1
}

TEST_CASE("pushing") {
  PatternState s = make({{1}, {2}});
  CHECK(step_event(s, 1, 1, +1, WallMode::Symplectic));
  CHECK(s.y == std::vector<std::vector<int>>{{2}, {3}});

  // left push goes to particle i+1 on the next level
  PatternState l = make({{3}, {4}, {5, 2}});
  CHECK_FALSE(step_event(l, 2, 1, -1, WallMode::Symplectic));
  CHECK(l.y == std::vector<std::vector<int>>{{3}, {4}, {5, 2}});  // blocked by y^1_1 = 3
  PatternState l2 = make({{1}, {3}, {4, 2}});
  CHECK(step_event(l2, 2, 1, -1, WallMode::Symplectic));
  CHECK(l2.y == std::vector<std::vector<int>>{{1}, {2}, {4, 1}});

  // a blocked jump changes nothing
  PatternState b = make({{1}, {2}});
  CHECK_FALSE(step_event(b, 2, 1, -1, WallMode::Symplectic));
  CHECK(b.y[1][0] == 2);
}

TEST_CASE("wall particle cannot move when pinned from above") {
  PatternState u = make({{0}, {1}, {2, 0}});
  const PatternState before = u;
  CHECK_FALSE(step_event(u, 3, 2, +1, WallMode::Symplectic));
  CHECK_FALSE(step_event(u, 3, 2, -1, WallMode::Orthogonal));
  CHECK(u == before);
}

TEST_CASE("event and Skorokhod constructions agree pathwise") {
  int compared = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const int n = 1 + seed % 5;
    const double g = 0.5 + (seed % 6) * 0.5;
    for (WallMode m : {WallMode::Symplectic, WallMode::Orthogonal}) {
      const Trajectory a = simulate_event(n, g, m, seed);
      const Trajectory b = simulate_skorokhod(n, g, m, seed);
      REQUIRE(a.states.size() == b.states.size());
      for (std::size_t j = 0; j < a.states.size(); ++j) {
        REQUIRE(a.states[j].valid());
        REQUIRE(a.states[j] == b.states[j]);
      }
      ++compared;
    }
  }
  CHECK(compared == 2000);
}

TEST_CASE("gamma = 0 and event counts") {
  CHECK(simulate_event(4, 0.0, WallMode::Symplectic, 1).final_state() == PatternState::leftmost(4));
  CHECK(simulate_skorokhod(4, 0.0, WallMode::Symplectic, 1).final_state() == PatternState::leftmost(4));
  CHECK_THROWS(simulate_event(2, -1.0, WallMode::Symplectic, 1));
  // 6 particles at total rate 6, horizon 2
  double total = 0;
  const int runs = 4000;
  for (int s = 0; s < runs; ++s) {
    PatternState st;
    total += simulate_final(4, 2.0, WallMode::Symplectic, s, st);
  }
  const double mean = total / runs;
  CHECK(std::abs(mean - 12.0) < 4 * std::sqrt(12.0 / runs));
}

TEST_CASE("single level: suppressed versus reflected walk") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto ev = materialize(1, 5.0, seed);
    int sym = 0, orth = 0;
    for (const auto &e : ev) {
      sym = std::max(0, sym + e.dir);
      orth = orth + e.dir < 0 ? 1 : orth + e.dir;
    }
    CHECK(simulate_event(1, 5.0, WallMode::Symplectic, seed).final_state().y[0][0] == sym);
    CHECK(simulate_event(1, 5.0, WallMode::Orthogonal, seed).final_state().y[0][0] == orth);
  }
}

TEST_CASE("modes coincide until the first wall event") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Trajectory a = simulate_event(4, 3.0, WallMode::Symplectic, seed);
    const Trajectory b = simulate_event(4, 3.0, WallMode::Orthogonal, seed);
    for (std::size_t j = 0; j < a.events.size(); ++j) {
      const Event &e = a.events[j];
      const bool wall = e.level % 2 == 1 && e.index == r_of(e.level) && e.dir == -1 &&
                        a.states[j].y[e.level - 1][e.index - 1] == 0;
      if (wall) break;
      REQUIRE(a.states[j + 1] == b.states[j + 1]);
    }
  }
}

TEST_CASE("Monte Carlo correlations against brute force") {
  const SpecFunction w = SpecFunction::pure(1.0);
  const BruteForce bf(3, w, 14);
  const std::vector<std::vector<Site>> q = {{{0, 1}}, {{2, 1}}, {{1, 3}}, {{0, 1}, {1, 2}}, {{1, 2}, {0, 3}}};
  const auto est = mc_correlation(3, 1.0, WallMode::Symplectic, q, 40000, 11, 2);
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double exact = bf.correlation(q[i]);
    INFO("query " << i << " mc " << est[i].value << " exact " << exact);
    CHECK(std::abs(est[i].value - exact) <= 4 * est[i].se + 1e-12);
  }
  const auto zero = mc_correlation(2, 0.0, WallMode::Symplectic, {{{0, 1}}}, 10, 1);
  CHECK(zero[0].value == 1.0);
  // thread count does not change the estimate
  const auto one = mc_correlation(3, 1.0, WallMode::Symplectic, q, 2000, 5, 1);
  const auto three = mc_correlation(3, 1.0, WallMode::Symplectic, q, 2000, 5, 3);
  for (std::size_t i = 0; i < q.size(); ++i) CHECK(one[i].hits == three[i].hits);
}

TEST_CASE("level marginal is the Plancherel measure (chi-square)") {
  for (auto [n, g] : {std::pair{2, 1.0}, std::pair{4, 2.0}}) {
    const std::int64_t trials = 100000;
    const auto hist = mc_level_histogram(n, n, g, WallMode::Symplectic, trials, 2024 + n, 2);
    const PlancherelTable table(n, SpecFunction::pure(g), 80);
    double chi2 = 0, rest_obs = trials, rest_exp = trials;
    int bins = 0;
    // enumerate partitions with parts <= 25
    std::vector<int> p(r_of(n), 0);
    std::function<void(int, int)> rec = [&](int i, int maxpart) {
      if (i == r_of(n)) {
        const double e = trials * table.mass(Partition(n, p));
        if (e < 5) return;
        auto it = hist.find(p);
        const double o = it == hist.end() ? 0.0 : static_cast<double>(it->second);
        chi2 += (o - e) * (o - e) / e;
        rest_obs -= o;
        rest_exp -= e;
        ++bins;
        return;
      }
      for (int x = 0; x <= maxpart; ++x) {
        p[i] = x;
        rec(i + 1, x);
      }
    };
    rec(0, 25);
    if (rest_exp > 1e-9) {
      chi2 += (rest_obs - rest_exp) * (rest_obs - rest_exp) / rest_exp;
      ++bins;
    }
    const double pval = 1 - boost::math::cdf(boost::math::chi_squared(bins - 1), chi2);
    INFO("n=" << n << " chi2=" << chi2 << " bins=" << bins << " p=" << pval);
    CHECK(pval > 0.01);
  }
}

TEST_CASE("dumps") {
  std::ostringstream os;
  dump_events_jsonl(os, 3, 1.0, WallMode::Orthogonal, 9);
  const std::string out = os.str();
  CHECK(out.rfind("#planchgrow v1 seed=9", 0) == 0);
  CHECK(out.find("\"old\"") != std::string::npos);
  std::ostringstream cs;
  dump_state_csv(cs, PatternState::leftmost(3), 4);
  CHECK(cs.str().find("level,index,y,x_tilde\n1,1,0,0\n2,1,1,0\n3,1,2,1\n3,2,0,0\n") != std::string::npos);
}
