#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "planchgrow/growth.hpp"
#include "planchgrow/kernel.hpp"

using namespace pg;

namespace {

double gauge(int n, int m) { return (r_of(n) - r_of(m)) % 2 ? -1.0 : 1.0; }

}  // namespace

TEST_CASE("Taylor helpers") {
  // J_{2,1/2}(x) = 4x^2 - 1 = 3 + 8y + 4y^2
  CHECK(cheb_taylor_at_one(2, ChebKind::Second, 4) == std::vector<double>{3, 8, 4, 0});
  // J_{2,-1/2}(x) = 4x^2 - 2x - 1 = 1 + 6y + 4y^2
  CHECK(cheb_taylor_at_one(2, ChebKind::Third, 3) == std::vector<double>{1, 6, 4});
  SpecFunction w{{0.3}, {0.4}, 0.7};
  const auto e = w.taylor_at_one(12), inv = inverse_taylor_at_one(w, 12);
  for (int k = 0; k < 12; ++k) {
    double c = 0;
    for (int j = 0; j <= k; ++j) c += e[j] * inv[k - j];
    CHECK(c == doctest::Approx(k == 0 ? 1.0 : 0.0).epsilon(1e-13).scale(1.0));
  }
}

TEST_CASE("single term alone is orthonormality on the diagonal level") {
  for (int n : {3, 4}) {
    const QuadratureRule &rule = gauss_jacobi(kind_of_level(n));
    for (int s = 0; s <= 12; ++s)
      for (int t = 0; t <= 12; ++t) {
        double acc = 0;
        for (int j = 0; j < rule.order(); ++j)
          acc += rule.weights[j] * eval_cheb(s, rule.kind, rule.nodes[j]) * eval_cheb(t, rule.kind, rule.nodes[j]);
        CHECK(std::abs(acc - (s == t)) < 1e-12);
      }
  }
}

TEST_CASE("gamma = 0 reproduces the leftmost configuration") {
  const Kernel K(SpecFunction::pure(0.0));
  for (int n = 1; n <= 6; ++n)
    for (int s = 0; s <= 20; ++s) {
      CHECK(std::abs(K({s, n}, {s, n}) - (s < r_of(n) ? 1.0 : 0.0)) < 1e-8);
      CHECK(std::abs(K.complementary({s, n}, {s, n}) - (s >= r_of(n) ? 1.0 : 0.0)) < 1e-8);
    }
}

TEST_CASE("contour, residue and series forms") {
  const Kernel K(SpecFunction::pure(1.0));
  double worst_res = 0, worst_series = 0;
  for (int n = 1; n <= 4; ++n)
    for (int m = 1; m <= 4; ++m)
      for (int s = 0; s <= 6; ++s)
        for (int t = 0; t <= 6; ++t) {
          const Site a{s, n}, b{t, m};
          const double c = K.eval(a, b, KernelMethod::Contour);
          worst_res = std::max(worst_res, std::abs(c - K.eval(a, b, KernelMethod::Residue)));
          // entrywise the two forms differ exactly by (-1)^{r_n - r_m}
          worst_series = std::max(worst_series, std::abs(c - gauge(n, m) * K.series(a, b)));
        }
  CHECK(worst_res < 1e-10);
  CHECK(worst_series < 1e-9);
  CHECK(K.max_imag() < 1e-10);
}

TEST_CASE("determinants agree between integral and series forms") {
  const Kernel K(SpecFunction::pure(1.5));
  const std::vector<std::vector<Site>> sets = {
      {{0, 1}}, {{1, 2}, {0, 3}}, {{2, 4}, {0, 2}, {1, 3}}, {{0, 1}, {1, 2}, {3, 4}}};
  for (const auto &set : sets) {
    const double a = correlation_det(K, KernelChoice::Kernel, set).value;
    const double b = correlation_det(K, KernelChoice::Series, set).value;
    CHECK(std::abs(a - b) < 1e-9);
  }
}

TEST_CASE("agreement with the finite Eynard-Mehta kernel and brute force") {
  for (const SpecFunction &w : {SpecFunction::pure(1.0), SpecFunction{{0.3}, {0.4}, 0.5}}) {
    const Kernel K(w);
    const EMKernel em(3, w, 36);
    for (int n = 1; n <= 3; ++n)
      for (int m = 1; m <= 3; ++m)
        for (int s = 0; s <= 8; ++s)
          for (int t = 0; t <= 8; ++t) {
            const Site a{s, n}, b{t, m};
            CHECK(std::abs(K(a, b) - gauge(n, m) * em(a, b)) < 1e-8);
          }
  }
  const SpecFunction w = SpecFunction::pure(1.0);
  const Kernel K(w);
  const BruteForce bf(4, w, 12);
  const std::vector<Site> six = {{0, 1}, {1, 2}, {0, 3}, {2, 3}, {1, 4}, {3, 4}};
  for (std::size_t i = 0; i < six.size(); ++i) {
    CHECK(std::abs(correlation_det(K, KernelChoice::Kernel, {six[i]}).value - bf.correlation({six[i]})) < 1e-4);
    for (std::size_t j = i + 1; j < six.size(); ++j) {
      const std::vector<Site> pair = {six[i], six[j]};
      CHECK(std::abs(correlation_det(K, KernelChoice::Kernel, pair).value - bf.correlation(pair)) < 1e-4);
    }
  }
}

TEST_CASE("contour independence and quadrature convergence") {
  const SpecFunction w = SpecFunction::pure(1.0);
  const Kernel base(w);
  KernelOptions o1, o2, o3;
  o1.contour = Contour::ellipse(1.3, 0.5);
  o2.contour = Contour::ellipse(2.0, 1.0, 1024);
  o3.order = 400;
  o3.contour.nodes = 1024;
  const Kernel k1(w, o1), k2(w, o2), k3(w, o3);
  for (int n = 1; n <= 4; ++n)
    for (int m = 1; m <= 4; ++m)
      for (int s = 0; s <= 5; ++s)
        for (int t = 0; t <= 5; ++t) {
          const Site a{s, n}, b{t, m};
          const double v = base.eval(a, b, KernelMethod::Contour);
          CHECK(std::abs(v - k1.eval(a, b, KernelMethod::Contour)) < 1e-9);
          CHECK(std::abs(v - k2.eval(a, b, KernelMethod::Contour)) < 1e-9);
          CHECK(std::abs(v - k3.eval(a, b, KernelMethod::Contour)) < 1e-8);
        }
}

TEST_CASE("saddle circle matches residues at larger gamma") {
  for (double g : {8.0, 30.0}) {
    const int n = static_cast<int>(g / 2) + 1;
    KernelOptions o;
    o.contour = Contour::circle(r_of(n) / g, 4096);
    const Kernel C(SpecFunction::pure(g), o), R(SpecFunction::pure(g));
    for (int dn = -2; dn <= 2; ++dn)
      for (int s = 0; s <= 4; ++s)
        for (int t = 0; t <= 4; ++t) {
          const Site a{s, n}, b{t, n + dn};
          CHECK(std::abs(C.eval(a, b, KernelMethod::Contour) - R.eval(a, b, KernelMethod::Residue)) < 1e-9);
        }
  }
}

TEST_CASE("particle-count sum rule") {
  for (double g : {0.5, 2.0}) {
    const Kernel K(SpecFunction::pure(g));
    for (int n = 1; n <= 6; ++n) {
      const int S = r_of(n) + static_cast<int>(8 * g) + 50;
      double sum = 0;
      for (int s = 0; s <= S; ++s) sum += K({s, n}, {s, n});
      CHECK(std::abs(sum - r_of(n)) < 1e-6);
    }
  }
}

TEST_CASE("biorthogonality of Psi and Phi") {
  const Kernel K(SpecFunction::pure(1.0));
  for (int n : {4, 5}) {
    const int r = r_of(n);
    for (int k = 1; k <= r; ++k)
      for (int l = 1; l <= r; ++l) {
        double acc = 0;
        // Psi reaches its round-off floor near s = 15 while Phi grows like s^{2j}
        for (int s = 0; s <= 20; ++s) acc += K.psi(n, r - k, s) * K.phi_fn(n, r - l, s);
        CHECK(std::abs(acc - (k == l ? 1.0 : 0.0)) < 1e-8);
      }
  }
}

TEST_CASE("one-level transfer reproduces phi_n") {
  KernelOptions o;
  o.contour = Contour::ellipse(1.2, 0.4, 1024);
  const Kernel K(SpecFunction::pure(1.0), o);
  double worst = 0;
  for (int n : {1, 2, 3, 4})
    for (int s = 0; s <= 30; ++s)
      for (int t = 0; t <= 30; ++t) worst = std::max(worst, std::abs(K.phi_interlevel(n, n + 1, s, t) - phi_level(n, s, t)));
  CHECK(worst < 1e-7);
}

TEST_CASE("complementary kernel") {
  const Kernel K(SpecFunction::pure(1.0));
  for (int n = 1; n <= 4; ++n)
    for (int s = 0; s <= 8; ++s) CHECK(K({s, n}, {s, n}) + K.complementary({s, n}, {s, n}) == doctest::Approx(1.0));
  // P(site empty) against the simulator
  const std::vector<Site> sites = {{0, 1}, {1, 2}, {0, 3}, {2, 4}};
  std::vector<std::vector<Site>> q;
  for (const auto &s : sites) q.push_back({s});
  const auto est = mc_correlation(4, 1.0, WallMode::Symplectic, q, 40000, 99, 2);
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const double empty = 1 - est[i].value;
    const double pred = correlation_det(K, KernelChoice::Complementary, {sites[i]}).value;
    CHECK(std::abs(empty - pred) <= 4 * est[i].se);
  }
  // pair of holes: determinant of the complementary kernel against brute force
  const BruteForce bf(3, SpecFunction::pure(1.0), 16);
  double both = 0;
  bf.for_each([&](const std::vector<std::vector<int>> &x, double p) {
    const bool a = std::find(x[0].begin(), x[0].end(), 1) == x[0].end();
    const bool b = std::find(x[2].begin(), x[2].end(), 0) == x[2].end();
    if (a && b) both += p;
  });
  CHECK(std::abs(correlation_det(K, KernelChoice::Complementary, {{1, 1}, {0, 3}}).value - both) < 1e-6);
}

TEST_CASE("correlation_det and errors") {
  const Kernel K(SpecFunction::pure(1.0));
  CHECK(correlation_det(K, KernelChoice::Kernel, {}).value == 1.0);
  CHECK(correlation_det(K, KernelChoice::Kernel, {{0, 1}}).in_range);
  CHECK_THROWS(correlation_det(K, KernelChoice::Kernel, std::vector<Site>(13, Site{0, 1})));
  KernelOptions bad;
  bad.contour = Contour::ellipse(1.01, 0.5);
  CHECK_THROWS_AS(Kernel(SpecFunction::pure(1.0), bad), std::invalid_argument);
  // beta = 0.9 puts a zero of E at x = -1.02, inside the default ellipse
  CHECK_THROWS_AS(Kernel(SpecFunction{{}, {0.9}, 0.0}), std::invalid_argument);
  KernelOptions tight{KernelMethod::Auto, Contour::ellipse(1.01, 0.2)};
  tight.min_distance = 0.005;
  CHECK_NOTHROW(Kernel(SpecFunction{{}, {0.9}, 0.0}, tight));
  CHECK_THROWS(K.eval({-1, 1}, {0, 1}));
}

TEST_CASE("kernel CSV") {
  const Kernel K(SpecFunction::pure(1.0));
  std::ostringstream os;
  write_kernel_csv(os, K, KernelChoice::Kernel, {{0, 1}, {1, 2}}, 5);
  const std::string out = os.str();
  CHECK(out.rfind("#planchgrow v1 seed=5", 0) == 0);
  CHECK(out.find("s,n,t,m,value\n0,1,0,1,") != std::string::npos);
  CHECK(std::count(out.begin(), out.end(), '\n') == 6);
}
