#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace pg {

// alpha = +1/2 (second kind) or -1/2 (third kind)
enum class ChebKind { Second, Third };

inline double alpha_of(ChebKind k) { return k == ChebKind::Second ? 0.5 : -0.5; }
inline ChebKind kind_of_level(int n) { return n % 2 == 0 ? ChebKind::Second : ChebKind::Third; }
inline int r_of(int n) { return (n + 1) / 2; }
inline double alpha_level(int n) { return n % 2 == 0 ? 0.5 : -0.5; }

// phi_n(s,t): 2*1(s<t) for even n, 1(s<=t) for odd n
inline double phi_level(int n, long s, long t) {
  if (n % 2 == 0) return s < t ? 2.0 : 0.0;
  return s <= t ? 1.0 : 0.0;
}

double eval_cheb(int k, ChebKind kind, double x);
std::complex<double> eval_cheb(int k, ChebKind kind, std::complex<double> z);

// J_0..J_kmax at x by the recurrence; out must hold kmax+1 values
void eval_cheb_all(int kmax, ChebKind kind, double x, double *out);
void eval_cheb_all(int kmax, ChebKind kind, std::complex<double> z, std::complex<double> *out);

// Gauss rule for the normalized weight (2^{a+1/2}/pi)(1-x)^a(1+x)^{1/2}; weights sum to 1.
struct QuadratureRule {
  ChebKind kind = ChebKind::Second;
  std::vector<double> nodes;
  std::vector<double> weights;
  int order() const { return static_cast<int>(nodes.size()); }
};

QuadratureRule make_gauss_jacobi(ChebKind kind, int order);
// cached, immutable after first construction
const QuadratureRule &gauss_jacobi(ChebKind kind, int order = 200);

using RealFn = std::function<double(double)>;

double inner_product(const RealFn &f, const RealFn &g, ChebKind kind, const QuadratureRule &rule);

struct IdentityReport {
  double sum_third_to_second = 0;  // sum_{r<=s} J_{r,-1/2} - J_{s,1/2}
  double sum_second_to_third = 0;  // sum_{r<s} 2J_{r,1/2} - (J_{s,-1/2}-1)/(x-1)
  double tail_third = 0;           // sum_{r>s} <J_{r,-1/2},T> - <J_{s,1/2},T(1)-T>
  double tail_second = 0;          // sum_{r>=s} <J_{r,1/2},T> - <J_{s,-1/2},T>
  double composition = 0;          // phi_{n-1} * Psi^n = Psi^{n-1}
  double max() const;
};

// Checks the summation identities for all 1 <= s' <= s on a grid of grid_points in (-1,1),
// the tail identities with T(x) = exp(x)cos(2x), and the composition rule for E = e^{gamma(x-1)},
// levels n = 2..4, l in {0,1,2}, s' <= s.
IdentityReport verify_identities(int s, int grid_points = 101, double gamma = 1.0);

}  // namespace pg
