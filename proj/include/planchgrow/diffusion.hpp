#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <random>
#include <vector>

namespace pg {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SampledPath {
  std::vector<double> t;
  std::vector<double> v;
  std::size_t size() const { return v.size(); }
};

// Online extended Skorokhod map on a grid. Xi_k = max(A_k, M_k) with
// A_k = min(A_{k-1}, b_k), A_0 = min(a_0^+, b_0), M_k = min(max(M_{k-1}, a_k), b_k),
// a = psi - r, b = psi - l. Output phi = psi - Xi.
class EspOnline {
 public:
  double start(double psi, double lower, double upper);
  double step(double psi, double lower, double upper);
  // b_min <= psi - lower and a_max >= psi - upper over the step (e.g. Brownian bridge extremes)
  double step(double psi, double lower, double upper, double b_min, double a_max);
  double xi() const { return xi_; }
  double phi() const { return phi_; }

 private:
  double A_ = 0, M_ = 0, xi_ = 0, phi_ = 0;
};

// Xi_{l,r}(psi) on a common grid; throws std::invalid_argument if lower > upper somewhere
std::vector<double> skorokhod_xi(const std::vector<double> &lower, const std::vector<double> &upper,
                                 const std::vector<double> &psi);
std::vector<double> esp_map(const std::vector<double> &lower, const std::vector<double> &upper,
                            const std::vector<double> &psi);
SampledPath esp_map(const SampledPath &lower, const SampledPath &upper, const SampledPath &psi);

// grid 0 = t_0 < ... ; uniform step dt up to T
std::vector<double> uniform_grid(double T, double dt);
// geometric refinement toward 0: t_min, then ratio steps up to T (plus t=0 in front)
std::vector<double> geometric_grid(double T, double t_min, int points_per_decade);

// W[k-1][i-1] sampled on the grid
struct ReflectedSystem {
  std::vector<double> t;
  std::vector<std::vector<std::vector<double>>> W;
  std::uint64_t seed = 0;
  int levels() const { return static_cast<int>(W.size()); }
  double at(int k, int i, std::size_t j) const;  // with overflow 0 and underflow +inf
};

ReflectedSystem build_interlaced(int levels, const std::vector<double> &grid, std::uint64_t seed);
// final state only, uniform grid; avoids storing paths
std::vector<std::vector<double>> interlaced_final(int levels, double T, double dt, std::mt19937_64 &rng);

bool interlacing_holds(const ReflectedSystem &sys, double tol = 1e-12);
// time,level,index,value
void write_paths_csv(std::ostream &os, const ReflectedSystem &sys, std::size_t stride = 1);

// Gaussian kernels with variance t
double heat(double t, double x);
double heat_cdf(double t, double x);
double heat_dx(double t, double x);

// killed density of the level-k Type C/D Brownian system
double p_killed(int k, double t, const std::vector<double> &u, const std::vector<double> &up);

// two-level density q^k_t((v,u),(v',u')); v at level k+1, u at level k.
// printed_constant = true drops the -(-1)^k shift in the upper right block; the default keeps it,
// which gives the right t -> 0 limit.
double two_level_density(int k, double t, const std::vector<double> &v, const std::vector<double> &u,
                         const std::vector<double> &vp, const std::vector<double> &up, bool printed_constant = false);

bool in_chamber(int k, const std::vector<double> &u, bool closed = false);
bool interlaced_pair(const std::vector<double> &v, const std::vector<double> &u);  // u < v

double hk_eval(int k, const std::vector<double> &u);
double entrance_normalizer(int k);  // C_k at t = 1
double entrance_law_density(int k, double t, const std::vector<double> &u);
std::vector<double> sample_entrance(int k, double t, std::mt19937_64 &rng);

struct DysonOptions {
  double dt = 1e-4;
  double t0 = 0;  // 0 -> 10*dt
  int max_halvings = 12;
};
// final positions at T, decreasing order
std::vector<double> dyson_euler(int k, double T, const DysonOptions &opt, std::mt19937_64 &rng);

// Eigenvalue paths of an antisymmetric matrix Brownian motion (entries N(0,t)).
// Level k is the positive spectrum of the top-left (k+1)x(k+1) corner: each level alone is the
// level-k Dyson process exactly at the grid times, but levels are not jointly the interlaced system.
ReflectedSystem matrix_dyson_path(int levels, const std::vector<double> &grid, std::uint64_t seed);

// per-window infima of (W^{k}_{i-1} - W^{k}_i)/t^c over [h^w, h^{w-1}], w = 1..windows (scaled by T)
std::vector<double> gap_statistic(const ReflectedSystem &sys, int k, int i, double c, double h, int windows,
                                  double T = 1.0);
// least-squares slope of log(infima) against window index
double trend_slope(const std::vector<double> &infima);

struct KsResult {
  double D = 0;
  double p = 0;
};
double kolmogorov_q(double lambda);  // P(K > lambda)
KsResult ks_one_sample(std::vector<double> x, const std::function<double(double)> &cdf);
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);
double wasserstein1(std::vector<double> a, std::vector<double> b);

}  // namespace pg
