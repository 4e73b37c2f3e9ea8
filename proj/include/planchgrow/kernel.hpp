#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <memory>
#include <ostream>
#include <tuple>
#include <vector>

#include "planchgrow/orthopoly.hpp"
#include "planchgrow/repmeasures.hpp"
#include "planchgrow/specfunction.hpp"

namespace pg {

// Closed loop for the u integral, traversed counterclockwise.
struct Contour {
  enum class Shape { Ellipse, Circle };
  Shape shape = Shape::Ellipse;
  double a = 1.5, b = 0.75;  // ellipse semi-axes, centred at 0
  double radius = 0.5;       // circle centred at u = 1; x nodes outside get the u = x residue
  int nodes = 512;

  static Contour ellipse(double a = 1.5, double b = 0.75, int nodes = 512) {
    return {Shape::Ellipse, a, b, 0.5, nodes};
  }
  static Contour circle(double radius, int nodes = 2048) { return {Shape::Circle, 1.5, 0.75, radius, nodes}; }
};

enum class KernelMethod {
  Auto,     // contour for small parameters, residues otherwise
  Contour,  // Gauss-Jacobi in x, trapezoid on the contour in u
  Residue   // u integral evaluated exactly by residues at u = 1 and u = x
};

struct KernelOptions {
  KernelMethod method = KernelMethod::Auto;
  Contour contour = Contour::ellipse();
  int order = 200;           // Gauss-Jacobi nodes (raised automatically for large gamma in residue mode)
  double min_distance = 0.05;
  double imag_tol = 1e-10;   // relative bound on the discarded imaginary part
};

enum class KernelChoice { Kernel, Complementary, Series };

class Kernel {
 public:
  explicit Kernel(SpecFunction omega, KernelOptions opts = {});

  double operator()(const Site &a, const Site &b) const { return eval(a, b); }
  double eval(const Site &a, const Site &b) const;
  double eval(const Site &a, const Site &b, KernelMethod method) const;
  double complementary(const Site &a, const Site &b) const;
  // -phi^{[n,m)} 1(n<m) + sum_k Psi^n_{r_n-k}(s) Phi^m_{r_m-k}(t)
  double series(const Site &a, const Site &b) const;

  // <J_s, (x-1)^p E> for p >= 0, <J_s, R_{-p}/(x-1)^{-p}> for p < 0
  double psi(int n, int p, int s) const;
  // (1/2 pi i) \oint J_t(w) / (E(w)(w-1)^{j+1}) dw
  double phi_fn(int m, int j, int t) const;
  // -(1/2 pi i) \oint <J_s, J_t(u)(u-1)^{r_n-r_m}/(x-u)> du, n < m
  double phi_interlevel(int n, int m, int s, int t) const;

  double value(KernelChoice c, const Site &a, const Site &b) const;
  Eigen::MatrixXd matrix(KernelChoice c, const std::vector<Site> &sites) const;

  const SpecFunction &omega() const { return omega_; }
  const KernelOptions &options() const { return opts_; }
  double max_imag() const { return max_imag_; }

 private:
  struct Nodes {
    std::vector<std::complex<double>> u, w;  // (1/2 pi i) \oint f du ~ sum f(u_k) w_k
  };

  KernelMethod pick(const Site &a, const Site &b) const;
  double eval_contour(const Site &a, const Site &b) const;
  double eval_residue(const Site &a, const Site &b) const;
  const QuadratureRule &rule_for(int n, int degree) const;
  const Eigen::MatrixXd &jtable(const QuadratureRule &rule, int smax) const;
  Nodes make_nodes(const QuadratureRule &rule, int r_m) const;
  const std::vector<double> &h_coeffs(int m, int t, int count) const;

  SpecFunction omega_;
  KernelOptions opts_;
  mutable std::map<std::pair<const QuadratureRule *, int>, Eigen::MatrixXd> jcache_;
  mutable std::map<std::tuple<const QuadratureRule *, int, int>, Eigen::VectorXd> icache_;
  mutable std::map<std::pair<int, int>, std::vector<double>> hcache_;
  mutable double max_imag_ = 0;
};

// Taylor coefficients about x = 1 of J_{t,alpha}(x)
std::vector<double> cheb_taylor_at_one(int t, ChebKind kind, int count);
// Taylor coefficients about x = 1 of 1/E
std::vector<double> inverse_taylor_at_one(const SpecFunction &omega, int count);

double kernel_eval(const SpecFunction &omega, const Site &a, const Site &b, const KernelOptions &opts = {});
double kernel_eval_series(const SpecFunction &omega, const Site &a, const Site &b, const KernelOptions &opts = {});
double complementary_kernel(const SpecFunction &omega, const Site &a, const Site &b, const KernelOptions &opts = {});

struct Correlation {
  double value = 1.0;
  bool in_range = true;  // value within [-eps, 1+eps]
};
Correlation correlation_det(const Kernel &k, KernelChoice c, const std::vector<Site> &sites, double eps = 1e-8);

// CSV s,n,t,m,value over all ordered pairs
void write_kernel_csv(std::ostream &os, const Kernel &k, KernelChoice c, const std::vector<Site> &sites,
                      std::uint64_t seed = 0);

}  // namespace pg
