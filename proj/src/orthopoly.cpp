#include "planchgrow/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "planchgrow/specfunction.hpp"

namespace pg {

namespace {

constexpr double kPi = std::numbers::pi;

// x >= 0 uses theta = acos(x); x < 0 uses phi = acos(-x), theta = pi - phi,
// which keeps both endpoints accurate.
double cheb_trig(int k, ChebKind kind, double x) {
  if (kind == ChebKind::Second) {
    if (x >= 0) {
      const double th = std::acos(std::min(x, 1.0));
      if (th < 1e-300) return k + 1.0;
      return std::sin((k + 1) * th) / std::sin(th);
    }
    const double ph = std::acos(std::min(-x, 1.0));
    const double sg = (k % 2 == 0) ? 1.0 : -1.0;
    if (ph < 1e-300) return sg * (k + 1.0);
    return sg * std::sin((k + 1) * ph) / std::sin(ph);
  }
  if (x >= 0) {
    const double th = std::acos(std::min(x, 1.0));
    return std::cos((k + 0.5) * th) / std::cos(0.5 * th);
  }
  const double ph = std::acos(std::min(-x, 1.0));
  const double sg = (k % 2 == 0) ? 1.0 : -1.0;
  if (ph < 1e-300) return sg * (2.0 * k + 1.0);
  return sg * std::sin((k + 0.5) * ph) / std::sin(0.5 * ph);
}

template <class T>
T cheb_rec(int k, ChebKind kind, T x) {
  T p0 = T(1);
  if (k == 0) return p0;
  T p1 = kind == ChebKind::Second ? T(2) * x : T(2) * x - T(1);
  for (int j = 1; j < k; ++j) {
    T p2 = T(2) * x * p1 - p0;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

template <class T>
void cheb_rec_all(int kmax, ChebKind kind, T x, T *out) {
  out[0] = T(1);
  if (kmax == 0) return;
  out[1] = kind == ChebKind::Second ? T(2) * x : T(2) * x - T(1);
  for (int j = 1; j < kmax; ++j) out[j + 1] = T(2) * x * out[j] - out[j - 1];
}

}  // namespace

double eval_cheb(int k, ChebKind kind, double x) {
  if (k < 0) throw std::invalid_argument("eval_cheb: negative degree");
  if (std::abs(x) <= 1.0) return cheb_trig(k, kind, x);
  return cheb_rec(k, kind, x);
}

std::complex<double> eval_cheb(int k, ChebKind kind, std::complex<double> z) {
  if (k < 0) throw std::invalid_argument("eval_cheb: negative degree");
  return cheb_rec(k, kind, z);
}

void eval_cheb_all(int kmax, ChebKind kind, double x, double *out) { cheb_rec_all(kmax, kind, x, out); }

void eval_cheb_all(int kmax, ChebKind kind, std::complex<double> z, std::complex<double> *out) {
  cheb_rec_all(kmax, kind, z, out);
}

// Nodes are the zeros of J_order in closed form; weights are Christoffel numbers
// 1 / sum_{k<order} J_k(x_j)^2 of the orthonormal family.
QuadratureRule make_gauss_jacobi(ChebKind kind, int order) {
  if (order < 1) throw std::invalid_argument("gauss_jacobi: order must be positive");
  QuadratureRule rule;
  rule.kind = kind;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  std::vector<double> buf(order + 1);
  for (int j = 1; j <= order; ++j) {
    double x;
    if (kind == ChebKind::Second)
      x = std::cos(j * kPi / (order + 1));
    else
      x = std::cos((2.0 * j - 1.0) * kPi / (2.0 * order + 1.0));
    double s = 0;
    for (int k = 0; k < order; ++k) {
      const double v = cheb_trig(k, kind, x);
      s += v * v;
    }
    rule.nodes[order - j] = x;
    rule.weights[order - j] = 1.0 / s;
  }
  return rule;
}

const QuadratureRule &gauss_jacobi(ChebKind kind, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(kind == ChebKind::Second ? 1 : 0, order);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<QuadratureRule>(make_gauss_jacobi(kind, order))).first;
  return *it->second;
}

double inner_product(const RealFn &f, const RealFn &g, ChebKind kind, const QuadratureRule &rule) {
  if (rule.kind != kind) throw std::invalid_argument("inner_product: rule kind mismatch");
  double acc = 0;
  for (int q = 0; q < rule.order(); ++q) acc += rule.weights[q] * f(rule.nodes[q]) * g(rule.nodes[q]);
  return acc;
}

double IdentityReport::max() const {
  return std::max({sum_third_to_second, sum_second_to_third, tail_third, tail_second, composition});
}

namespace {

// <J_k, f>_kind for k = 0..kmax on one rule
std::vector<double> coefficients(const RealFn &f, ChebKind kind, int kmax, const QuadratureRule &rule) {
  std::vector<double> c(kmax + 1, 0.0), J(kmax + 1);
  for (int q = 0; q < rule.order(); ++q) {
    eval_cheb_all(kmax, kind, rule.nodes[q], J.data());
    const double fw = rule.weights[q] * f(rule.nodes[q]);
    for (int k = 0; k <= kmax; ++k) c[k] += fw * J[k];
  }
  return c;
}

}  // namespace

IdentityReport verify_identities(int s, int grid_points, double gamma) {
  IdentityReport rep;
  std::vector<double> J3(s + 2), J2(s + 2);
  for (int g = 1; g <= grid_points; ++g) {
    const double x = -1.0 + 2.0 * g / (grid_points + 1);
    eval_cheb_all(s + 1, ChebKind::Third, x, J3.data());
    eval_cheb_all(s + 1, ChebKind::Second, x, J2.data());
    double acc3 = 0, acc2 = 0;
    for (int sp = 0; sp <= s; ++sp) {
      acc3 += J3[sp];
      rep.sum_third_to_second = std::max(rep.sum_third_to_second, std::abs(acc3 - J2[sp]));
      if (sp >= 1) {
        acc2 += 2.0 * J2[sp - 1];
        const double rhs = (J3[sp] - 1.0) / (x - 1.0);
        rep.sum_second_to_third =
            std::max(rep.sum_second_to_third, std::abs(acc2 - rhs) / std::max(1.0, std::abs(rhs)));
      }
    }
  }

  // tail identities with an entire test function
  const int order = 200;
  const auto &r3 = gauss_jacobi(ChebKind::Third, order);
  const auto &r2 = gauss_jacobi(ChebKind::Second, order);
  const RealFn T = [](double x) { return std::exp(x) * std::cos(2.0 * x); };
  const double T1 = T(1.0);
  const int kmax = 120;  // coefficients of T decay like 3^k/k!
  const auto c3 = coefficients(T, ChebKind::Third, kmax, r3);
  const auto c2 = coefficients(T, ChebKind::Second, kmax, r2);
  for (int sp = 0; sp <= s; ++sp) {
    double tail3 = 0, tail2 = 0;
    for (int r = sp + 1; r <= kmax; ++r) tail3 += c3[r];
    for (int r = sp; r <= kmax; ++r) tail2 += c2[r];
    const RealFn Js2 = [sp](double x) { return eval_cheb(sp, ChebKind::Second, x); };
    const RealFn Js3 = [sp](double x) { return eval_cheb(sp, ChebKind::Third, x); };
    const double rhs3 = inner_product(Js2, [&](double x) { return T1 - T(x); }, ChebKind::Third, r3);
    const double rhs2 = inner_product(Js3, T, ChebKind::Third, r3);
    rep.tail_third = std::max(rep.tail_third, std::abs(tail3 - rhs3));
    rep.tail_second = std::max(rep.tail_second, std::abs(tail2 - rhs2));
  }

  // composition rule, E = e^{gamma(x-1)}
  const SpecFunction om = SpecFunction::pure(gamma);
  const int tmax = std::max(s + 80, 120);
  for (int n = 2; n <= 4; ++n) {
    const ChebKind kn = kind_of_level(n), km = kind_of_level(n - 1);
    const auto &rn = gauss_jacobi(kn, order);
    const auto &rm = gauss_jacobi(km, order);
    for (int l = 0; l <= 2; ++l) {
      const int pn = r_of(n) - l, pm = r_of(n - 1) - l;
      const auto psin = coefficients([&](double x) { return om.psi_integrand(pn, x); }, kn, tmax, rn);
      const auto psim = coefficients([&](double x) { return om.psi_integrand(pm, x); }, km, s, rm);
      for (int sp = 0; sp <= s; ++sp) {
        double acc = 0;
        for (int t = 0; t <= tmax; ++t) acc += phi_level(n - 1, sp, t) * psin[t];
        rep.composition = std::max(rep.composition, std::abs(acc - psim[sp]));
      }
    }
  }
  return rep;
}

}  // namespace pg
