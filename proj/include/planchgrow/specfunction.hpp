#pragma once

#include <complex>
#include <vector>

namespace pg {

// omega = (alpha, beta, gamma). With x = (z+1/z)/2,
// E(x) = e^{gamma(x-1)} prod(1 + (b_i - b_i^2/2)(x-1)) / prod(1 - (a_i + a_i^2/2)(x-1)).
struct SpecFunction {
  std::vector<double> alphas;
  std::vector<double> betas;
  double gamma = 0.0;

  static SpecFunction pure(double g) { return SpecFunction{{}, {}, g}; }
  bool pure_gamma() const { return alphas.empty() && betas.empty(); }
  void validate() const;  // throws std::invalid_argument

  double E(double x) const;
  std::complex<double> E(std::complex<double> x) const;
  std::complex<double> log_E(std::complex<double> x) const;

  // Taylor coefficients of E about x=1: c_0..c_{count-1}
  std::vector<double> taylor_at_one(int count) const;

  // (x-1)^{-m} R_m(x) for m >= 1, R_m the m-th Taylor remainder about 1
  double remainder_ratio(int m, double x) const;

  // (x-1)^p E(x) for p >= 0, remainder_ratio(-p, x) for p < 0
  double psi_integrand(int p, double x) const;

  // zeros of E in the x-plane (real, < -1 when beta < 1)
  std::vector<double> zeros() const;
  // poles of E in the x-plane (real, > 1)
  std::vector<double> poles() const;
};

}  // namespace pg
