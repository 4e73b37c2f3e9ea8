#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "planchgrow/orthopoly.hpp"
#include "planchgrow/specfunction.hpp"

using namespace pg;

TEST_CASE("low degree values") {
  CHECK(eval_cheb(1, ChebKind::Second, 0.25) == doctest::Approx(0.5));
  CHECK(eval_cheb(1, ChebKind::Third, 0.25) == doctest::Approx(-0.5));
  for (int k = 0; k < 60; ++k) CHECK(eval_cheb(k, ChebKind::Third, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  for (double x : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
    CHECK(eval_cheb(0, ChebKind::Second, x) == 1.0);
    CHECK(eval_cheb(0, ChebKind::Third, x) == 1.0);
  }
  CHECK(eval_cheb(4, ChebKind::Second, 1.0) == doctest::Approx(5.0));
  CHECK(eval_cheb(4, ChebKind::Second, -1.0) == doctest::Approx(5.0));
  CHECK(eval_cheb(3, ChebKind::Third, -1.0) == doctest::Approx(-7.0));
}

// independent oracle: plain power-basis recurrence in long double
static long double rec_ld(int k, ChebKind kind, long double x) {
  long double a = 1, b = kind == ChebKind::Second ? 2 * x : 2 * x - 1;
  if (k == 0) return a;
  for (int j = 1; j < k; ++j) {
    long double c = 2 * x * b - a;
    a = b;
    b = c;
  }
  return b;
}

TEST_CASE("trig form agrees with recurrence") {
  double worst = 0;
  for (ChebKind kind : {ChebKind::Second, ChebKind::Third})
    for (int k = 0; k <= 200; ++k)
      for (int g = 0; g <= 400; ++g) {
        const double x = -1.0 + 2.0 * g / 400;
        worst = std::max(worst, static_cast<double>(std::abs(eval_cheb(k, kind, x) - rec_ld(k, kind, x))));
      }
  CHECK(worst < 1e-10);
}

TEST_CASE("three term recurrence residual") {
  double worst = 0;
  for (ChebKind kind : {ChebKind::Second, ChebKind::Third})
    for (int k = 1; k <= 100; ++k)
      for (int g = 0; g <= 200; ++g) {
        const double x = -1.0 + 2.0 * g / 200;
        const double r = x * eval_cheb(k, kind, x) - 0.5 * (eval_cheb(k + 1, kind, x) + eval_cheb(k - 1, kind, x));
        worst = std::max(worst, std::abs(r));
      }
  CHECK(worst < 1e-12);
}

TEST_CASE("complex evaluation matches the unit circle identity") {
  for (double th : {0.3, 1.1, 2.5}) {
    const std::complex<double> z = std::polar(1.3, th);
    const auto x = 0.5 * (z + 1.0 / z);
    for (int k = 0; k < 12; ++k) {
      const auto J2 = (std::pow(z, k + 1) - std::pow(z, -(k + 1))) / (z - 1.0 / z);
      const auto J3 = (std::pow(z, k + 0.5) + std::pow(z, -(k + 0.5))) / (std::sqrt(z) + 1.0 / std::sqrt(z));
      CHECK(std::abs(eval_cheb(k, ChebKind::Second, x) - J2) < 1e-10);
      CHECK(std::abs(eval_cheb(k, ChebKind::Third, x) - J3) < 1e-10);
    }
  }
}

TEST_CASE("quadrature: orthonormality and exactness") {
  for (ChebKind kind : {ChebKind::Second, ChebKind::Third}) {
    const auto &rule = gauss_jacobi(kind, 60);
    double sw = 0;
    for (double w : rule.weights) sw += w;
    CHECK(std::abs(sw - 1.0) < 1e-12);
    double worst = 0;
    for (int k = 0; k <= 50; ++k)
      for (int l = 0; l <= 50; ++l) {
        const double ip = inner_product([&](double x) { return eval_cheb(k, kind, x); },
                                        [&](double x) { return eval_cheb(l, kind, x); }, kind, rule);
        worst = std::max(worst, std::abs(ip - (k == l ? 1.0 : 0.0)));
      }
    CHECK(worst < 1e-12);
  }
  // monomials up to degree 2*order-1 against semicircle moments
  const auto &r = gauss_jacobi(ChebKind::Second, 8);
  for (int d = 0; d <= 15; ++d) {
    double q = 0;
    for (int i = 0; i < r.order(); ++i) q += r.weights[i] * std::pow(r.nodes[i], d);
    double exact = 0;
    if (d % 2 == 0) {
      const int m = d / 2;
      double cat = 1;
      for (int i = 0; i < m; ++i) cat = cat * 2 * (2 * i + 1) / (i + 2);
      exact = cat / std::pow(2.0, d);
    }
    CHECK(std::abs(q - exact) < 1e-12);
  }
}

TEST_CASE("inner product special values") {
  const auto &r3 = gauss_jacobi(ChebKind::Third, 80);
  for (int s = 0; s < 30; ++s)
    CHECK(inner_product([&](double x) { return eval_cheb(s, ChebKind::Second, x); }, [](double) { return 1.0; },
                        ChebKind::Third, r3) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(inner_product([](double) { return 1.0; }, [](double) { return 1.0; }, ChebKind::Third, r3) ==
        doctest::Approx(1.0));
  CHECK_THROWS(inner_product([](double) { return 1.0; }, [](double) { return 1.0; }, ChebKind::Second, r3));
}

TEST_CASE("summation identities, tail identities, composition rule") {
  const double x = 0.0;
  CHECK(eval_cheb(0, ChebKind::Third, x) + eval_cheb(1, ChebKind::Third, x) ==
        doctest::Approx(eval_cheb(1, ChebKind::Second, x)));
  const auto small = verify_identities(3, 101);
  CHECK(small.sum_third_to_second < 1e-12);
  CHECK(small.sum_second_to_third < 1e-12);
  const auto rep = verify_identities(30, 101, 1.0);
  CHECK(rep.tail_third < 1e-10);
  CHECK(rep.tail_second < 1e-10);
  CHECK(rep.composition < 1e-9);
}

TEST_CASE("remainder ratio") {
  const SpecFunction om = SpecFunction::pure(1.7);
  for (double x : {-0.9, 0.0, 0.5, 0.99}) {
    const double y = x - 1;
    const double direct = (std::exp(1.7 * y) - 1 - 1.7 * y) / (y * y);
    CHECK(om.remainder_ratio(2, x) == doctest::Approx(direct).epsilon(1e-10));
  }
  SpecFunction mixed{{0.3}, {0.4}, 0.5};
  for (double x : {-0.9, 0.2, 0.8}) {
    const auto c = mixed.taylor_at_one(3);
    const double y = x - 1;
    const double direct = (mixed.E(x) - c[0] - c[1] * y - c[2] * y * y) / (y * y * y);
    CHECK(mixed.remainder_ratio(3, x) == doctest::Approx(direct).epsilon(1e-8));
  }
}
