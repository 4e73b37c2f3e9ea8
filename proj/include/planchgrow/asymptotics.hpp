#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "planchgrow/repmeasures.hpp"

namespace pg {

using cplx = std::complex<double>;

// hydrodynamic coordinates: gamma ~ N tau, s ~ N nu, r_n ~ N eta
struct PhasePoint {
  double tau = 1, nu = 1, eta = 1;
  void validate() const;  // throws std::invalid_argument unless all > 0
};

enum class Region { Frozen, Liquid, Empty };
const char *region_name(Region r);

struct PhaseFault : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// principal branches; throws std::domain_error at z = 0 or z = 1
cplx action_S(const PhasePoint &p, cplx z);
cplx action_S_prime(const PhasePoint &p, cplx z);

// 2 z^2 (z-1) S'(z), highest power first
std::array<double, 4> sprime_poly(const PhasePoint &p);
std::vector<cplx> sprime_roots(const PhasePoint &p);
// discriminant of sprime_poly scaled by the fourth power of its largest coefficient
double sprime_discriminant(const PhasePoint &p);

// closed-form phase curves in the ratio tau/eta; q_minus is 0 for ratio >= 1/2
double q_plus(double ratio);
double q_minus(double ratio);
double q_minus_radicand(double ratio);

struct CriticalPointResult {
  Region region = Region::Liquid;  // root-based
  Region closed_form = Region::Liquid;
  cplx z0;
  std::vector<cplx> roots;
  bool near_boundary = false;  // within the band of a q curve; labels may differ there
};

// throws PhaseFault if the two labels differ off the band
CriticalPointResult classify_phase(const PhasePoint &p, double band = 1e-8);

struct BetaValue {
  double value = 0;
  bool degenerate = false;  // zeta real
  double imag = 0;
};

// (1/2 pi i) int_{conj zeta}^{zeta} (1-z)^k z^{-(l+1)} dz along the arc |z| = |zeta|,
// crossing the positive axis for k >= 0 and the negative axis for k < 0
BetaValue incomplete_beta(int k, int l, cplx zeta);
// exact value for k >= 0 by expanding (1-z)^k
double incomplete_beta_exact(int k, int l, cplx zeta);

// arg(z0)/pi; throws std::invalid_argument outside the liquid region
double bulk_density(const PhasePoint &p);

// det[B(n_i-n_j; (s_i-s_j)+(n_i-n_j)-(r_{n_i}-r_{n_j}) | z0)] for sites near the macroscopic point
double bulk_correlation(const PhasePoint &p, const std::vector<Site> &sites);

// (2^{a_n+1/2}/pi) int [1(n>=m) - 1_{[-1,eps]}(x)] J_s J_t (1-x)^{r_n-r_m+a_n} (1+x)^{1/2} dx
double jacobi_kernel(const Site &a, const Site &b, double eps);
// correlation of the wall-edge limit at eps = 1 - eta/tau; identically 1 once eps <= -1
double jacobi_correlation(const std::vector<Site> &sites, double tau, double eta);

struct PearceyOptions {
  double truncation = 12;
  double max_truncation = 96;
  double tol = 1e-6;
};

struct PearceyValue {
  double value = 0;
  double indicator_term = 0;
  double integral_term = 0;
  double truncation = 0;     // X where the doubling test passed
  double doubling_diff = 0;  // |K(X) - K(X/2)|
};

// throws std::runtime_error if doubling never settles below tol
PearceyValue pearcey_kernel(double nu1, double eta1, double nu2, double eta2, const PearceyOptions &opts = {});
// the double integral alone at a fixed truncation
double pearcey_integral(double nu1, double eta1, double nu2, double eta2, double X);

// max over the x' grid of |N^{-1/4}(-1)^s J_{s,a}(N^{-1/2}x'-1) - sin(nu'sqrt(2x'))/(2^a sqrt(x'))|,
// s = round(N^{1/4} nu), nu' = s N^{-1/4}
double scaling_asymptotic_check(double N, ChebKind kind, double nu, const std::vector<double> &xprime);

struct RasterSpec {
  double tau = 1;
  double nu_min = 0.01, nu_max = 4;
  double eta_min = 0.01, eta_max = 4;
  int nu_points = 200, eta_points = 200;
};

// tau,nu,eta,label,re_z0,im_z0,density; empty grids give the header only
void write_phase_raster(std::ostream &os, const RasterSpec &spec, int threads = 1, std::uint64_t seed = 0);
// tau,eta,nu_lower,nu_upper along nu = eta q_-(tau/eta), nu = eta q_+(tau/eta)
void write_phase_boundaries(std::ostream &os, double tau, double eta_min, double eta_max, int points,
                            std::uint64_t seed = 0);

}  // namespace pg
