#include "planchgrow/specfunction.hpp"

#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>
#include <cmath>
#include <stdexcept>

namespace pg {

namespace {
double bcoef(double b) { return b - 0.5 * b * b; }
double acoef(double a) { return a + 0.5 * a * a; }
}  // namespace

void SpecFunction::validate() const {
  if (!(gamma >= 0) || !std::isfinite(gamma)) throw std::invalid_argument("SpecFunction: gamma must be >= 0");
  for (double a : alphas)
    if (!(a >= 0)) throw std::invalid_argument("SpecFunction: alphas must be >= 0");
  for (double b : betas)
    if (!(b >= 0) || b > 1) throw std::invalid_argument("SpecFunction: betas must lie in [0,1]");
}

double SpecFunction::E(double x) const {
  const double y = x - 1.0;
  double v = std::exp(gamma * y);
  for (double b : betas) v *= 1.0 + bcoef(b) * y;
  for (double a : alphas) v /= 1.0 - acoef(a) * y;
  return v;
}

std::complex<double> SpecFunction::E(std::complex<double> x) const {
  const std::complex<double> y = x - 1.0;
  std::complex<double> v = std::exp(gamma * y);
  for (double b : betas) v *= 1.0 + bcoef(b) * y;
  for (double a : alphas) v /= 1.0 - acoef(a) * y;
  return v;
}

std::complex<double> SpecFunction::log_E(std::complex<double> x) const {
  const std::complex<double> y = x - 1.0;
  std::complex<double> v = gamma * y;
  for (double b : betas) v += std::log(1.0 + bcoef(b) * y);
  for (double a : alphas) v -= std::log(1.0 - acoef(a) * y);
  return v;
}

std::vector<double> SpecFunction::taylor_at_one(int count) const {
  std::vector<double> c(count, 0.0);
  if (count == 0) return c;
  c[0] = 1.0;
  for (int j = 1; j < count; ++j) c[j] = c[j - 1] * gamma / j;
  for (double b : betas) {
    const double bb = bcoef(b);
    for (int j = count - 1; j >= 1; --j) c[j] += bb * c[j - 1];
  }
  for (double a : alphas) {
    const double aa = acoef(a);
    // multiply by 1/(1 - aa y): c_j <- c_j + aa * c_{j-1} (running)
    for (int j = 1; j < count; ++j) c[j] += aa * c[j - 1];
  }
  return c;
}

double SpecFunction::remainder_ratio(int m, double x) const {
  if (m <= 0) throw std::invalid_argument("remainder_ratio: m must be positive");
  const double y = x - 1.0;
  if (pure_gamma()) {
    if (gamma == 0.0) return 0.0;
    const double lead = std::pow(gamma, m) / boost::math::factorial<double>(static_cast<unsigned>(m));
    return lead * boost::math::hypergeometric_1F1(1.0, m + 1.0, gamma * y);
  }
  if (std::abs(y) < 0.5) {
    const int count = m + 400;
    const auto c = taylor_at_one(count);
    double acc = 0, yp = 1;
    for (int j = m; j < count; ++j) {
      const double term = c[j] * yp;
      acc += term;
      if (j > m + 10 && std::abs(term) < 1e-18 * std::abs(acc)) break;
      yp *= y;
    }
    return acc;
  }
  const auto c = taylor_at_one(m);
  double poly = 0, yp = 1;
  for (int j = 0; j < m; ++j) {
    poly += c[j] * yp;
    yp *= y;
  }
  return (E(x) - poly) / yp;
}

double SpecFunction::psi_integrand(int p, double x) const {
  if (p >= 0) return std::pow(x - 1.0, p) * E(x);
  return remainder_ratio(-p, x);
}

std::vector<double> SpecFunction::zeros() const {
  std::vector<double> z;
  for (double b : betas)
    if (bcoef(b) > 0) z.push_back(1.0 - 1.0 / bcoef(b));
  return z;
}

std::vector<double> SpecFunction::poles() const {
  std::vector<double> z;
  for (double a : alphas)
    if (acoef(a) > 0) z.push_back(1.0 + 1.0 / acoef(a));
  return z;
}

}  // namespace pg
