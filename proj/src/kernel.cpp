#include "planchgrow/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pg {

namespace {

using cd = std::complex<double>;

double ipow(double x, int p) {
  double r = 1;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

cd ipow(cd x, int p) {
  cd r = 1;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

}  // namespace

std::vector<double> cheb_taylor_at_one(int t, ChebKind kind, int count) {
  // J_{k+1} = 2(1+y) J_k - J_{k-1} in y = x - 1
  std::vector<double> prev(count, 0.0), cur(count, 0.0);
  if (count == 0) return cur;
  prev[0] = 1.0;
  if (t == 0) return prev;
  cur[0] = kind == ChebKind::Second ? 2.0 : 1.0;
  if (count > 1) cur[1] = 2.0;
  for (int k = 1; k < t; ++k) {
    std::vector<double> next(count);
    for (int j = 0; j < count; ++j) next[j] = 2 * cur[j] + (j > 0 ? 2 * cur[j - 1] : 0.0) - prev[j];
    prev.swap(cur);
    cur.swap(next);
  }
  return cur;
}

std::vector<double> inverse_taylor_at_one(const SpecFunction &omega, int count) {
  std::vector<double> c(count, 0.0);
  if (count == 0) return c;
  c[0] = 1.0;
  for (int j = 1; j < count; ++j) c[j] = c[j - 1] * (-omega.gamma) / j;
  for (double a : omega.alphas) {
    const double aa = a + a * a / 2;
    for (int j = count - 1; j >= 1; --j) c[j] -= aa * c[j - 1];
  }
  for (double b : omega.betas) {
    const double bb = b - b * b / 2;
    for (int j = 1; j < count; ++j) c[j] -= bb * c[j - 1];
  }
  return c;
}

Kernel::Kernel(SpecFunction omega, KernelOptions opts) : omega_(std::move(omega)), opts_(opts) {
  omega_.validate();
  const Contour &c = opts_.contour;
  if (c.nodes < 8) throw std::invalid_argument("kernel: contour needs at least 8 nodes");
  if (c.shape == Contour::Shape::Ellipse) {
    if (c.b < opts_.min_distance || c.a - 1 < opts_.min_distance)
      throw std::invalid_argument("kernel: contour too close to [-1,1]");
    for (double z : omega_.zeros())
      if ((z / c.a) * (z / c.a) < 1) throw std::invalid_argument("kernel: contour encircles a zero of E");
  } else {
    if (!(c.radius > 0)) throw std::invalid_argument("kernel: circle radius must be positive");
    for (double z : omega_.zeros())
      if (std::abs(z - 1) < c.radius) throw std::invalid_argument("kernel: contour encircles a zero of E");
  }
}

KernelMethod Kernel::pick(const Site &a, const Site &b) const {
  if (opts_.method != KernelMethod::Auto) return opts_.method;
  const bool small = omega_.gamma <= 6 && std::max(a.s, b.s) <= 24 && std::max(r_of(a.level), r_of(b.level)) <= 6;
  return small ? KernelMethod::Contour : KernelMethod::Residue;
}

double Kernel::eval(const Site &a, const Site &b) const { return eval(a, b, pick(a, b)); }

double Kernel::eval(const Site &a, const Site &b, KernelMethod method) const {
  if (a.s < 0 || b.s < 0 || a.level < 1 || b.level < 1) throw std::invalid_argument("kernel: site out of range");
  if (method == KernelMethod::Auto) method = pick(a, b);
  return method == KernelMethod::Contour ? eval_contour(a, b) : eval_residue(a, b);
}

const QuadratureRule &Kernel::rule_for(int n, int degree) const {
  int order = std::max(opts_.order, degree / 2 + 40);
  order = (order + 49) / 50 * 50;
  return gauss_jacobi(kind_of_level(n), order);
}

const Eigen::MatrixXd &Kernel::jtable(const QuadratureRule &rule, int smax) const {
  auto key = std::make_pair(&rule, 0);
  auto it = jcache_.find(key);
  if (it != jcache_.end() && it->second.cols() > smax) return it->second;
  const int cols = std::max(smax + 1, 2 * (it == jcache_.end() ? 0 : static_cast<int>(it->second.cols())));
  Eigen::MatrixXd J(rule.order(), cols);
  std::vector<double> buf(cols);
  for (int j = 0; j < rule.order(); ++j) {
    eval_cheb_all(cols - 1, rule.kind, rule.nodes[j], buf.data());
    for (int s = 0; s < cols; ++s) J(j, s) = buf[s];
  }
  return jcache_[key] = std::move(J);
}

Kernel::Nodes Kernel::make_nodes(const QuadratureRule &rule, int r_m) const {
  const Contour &c = opts_.contour;
  Nodes nd;
  const int M = c.nodes;
  if (c.shape == Contour::Shape::Ellipse) {
    for (int k = 0; k < M; ++k) {
      const double th = 2 * M_PI * (k + 0.5) / M;
      nd.u.emplace_back(c.a * std::cos(th), c.b * std::sin(th));
      nd.w.push_back(cd(-c.a * std::sin(th), c.b * std::cos(th)) / cd(0, M));
    }
    return nd;
  }
  // snap the crossing point 1 - radius midway between neighbouring x nodes
  double rho = c.radius;
  if (rho < 2) {
    const double target = 1 - rho;
    const auto &x = rule.nodes;  // increasing
    auto it = std::lower_bound(x.begin(), x.end(), target);
    if (it != x.begin() && it != x.end()) rho = 1 - 0.5 * (*it + *(it - 1));
  }
  (void)r_m;
  for (int k = 0; k < M; ++k) {
    const double th = 2 * M_PI * (k + 0.5) / M;
    const cd e(std::cos(th), std::sin(th));
    nd.u.push_back(1.0 + rho * e);
    nd.w.push_back(rho * e / static_cast<double>(M));
  }
  return nd;
}

double Kernel::eval_contour(const Site &a, const Site &b) const {
  const int n = a.level, m = b.level, s = a.s, t = b.s;
  const int rn = r_of(n), rm = r_of(m);
  const QuadratureRule &rule = rule_for(n, 0);
  const ChebKind km = kind_of_level(m);
  const auto &J = jtable(rule, s);
  const int X = rule.order();

  auto key = std::make_tuple(&rule, m, t);
  auto it = icache_.find(key);
  if (it == icache_.end()) {
    const Nodes nd = make_nodes(rule, rm);
    const int M = static_cast<int>(nd.u.size());
    std::vector<cd> g(M);
    for (int k = 0; k < M; ++k) g[k] = eval_cheb(t, km, nd.u[k]) / (omega_.E(nd.u[k]) * ipow(1.0 - nd.u[k], rm)) * nd.w[k];
    Eigen::VectorXd I(X);
    double imag = 0, scale = 0;
    const bool circle = opts_.contour.shape == Contour::Shape::Circle;
    const double rho = circle ? std::abs(nd.u[0] - 1.0) : 0.0;
    for (int j = 0; j < X; ++j) {
      const double x = rule.nodes[j];
      cd acc = 0;
      for (int k = 0; k < M; ++k) {
        const cd term = g[k] / (x - nd.u[k]);
        acc += term;
        scale = std::max(scale, std::abs(term));
      }
      // x outside the circle: add the residue at u = x
      if (circle && std::abs(1 - x) > rho) acc -= eval_cheb(t, km, x) / (omega_.E(x) * ipow(1 - x, rm));
      I(j) = acc.real();
      imag = std::max(imag, std::abs(acc.imag()) / (1 + std::abs(acc)));
    }
    max_imag_ = std::max(max_imag_, imag);
    if (imag > opts_.imag_tol * std::max(1.0, scale))
      throw std::runtime_error("kernel: contour integral has a non-negligible imaginary part");
    it = icache_.emplace(key, std::move(I)).first;
  }
  const Eigen::VectorXd &I = it->second;
  double dbl = 0, single = 0;
  for (int j = 0; j < X; ++j) {
    const double x = rule.nodes[j];
    const double js = J(j, s);
    dbl += rule.weights[j] * js * ipow(1 - x, rn) * omega_.E(x) * I(j);
    if (n >= m) single += rule.weights[j] * js * eval_cheb(t, km, x) * ipow(1 - x, rn - rm);
  }
  return dbl + single;
}

const std::vector<double> &Kernel::h_coeffs(int m, int t, int count) const {
  auto key = std::make_pair(m, t);
  auto it = hcache_.find(key);
  if (it != hcache_.end() && static_cast<int>(it->second.size()) >= count) return it->second;
  const auto jt = cheb_taylor_at_one(t, kind_of_level(m), count);
  const auto inv = inverse_taylor_at_one(omega_, count);
  std::vector<double> c(count, 0.0);
  for (int k = 0; k < count; ++k)
    for (int j = 0; j <= std::min(k, t); ++j) c[k] += jt[j] * inv[k - j];
  return hcache_[key] = std::move(c);
}

double Kernel::eval_residue(const Site &a, const Site &b) const {
  const int n = a.level, m = b.level, s = a.s, t = b.s;
  const int rn = r_of(n), rm = r_of(m), q = rm - rn;
  const double g = omega_.gamma;
  const int degree = s + t + rn + rm + static_cast<int>(std::ceil(g + 10 * std::sqrt(g))) + 40;
  const QuadratureRule &rule = rule_for(n, degree);
  const auto &J = jtable(rule, s);
  const ChebKind km = kind_of_level(m);
  const int extra = n < m ? 400 : 0;
  const auto &c = h_coeffs(m, t, rm + extra);
  const double ythr = std::min(0.05, 4.0 / ((t + 1.0) * (t + 1.0)));

  double acc = 0;
  for (int j = 0; j < rule.order(); ++j) {
    const double x = rule.nodes[j], y = x - 1;
    const double E = omega_.E(x);
    double P = 0;
    for (int k = rm - 1; k >= 0; --k) P = P * y + c[k];
    double F;
    if (n >= m) {
      F = ipow(-y, rn - rm) * E * P;
    } else if (q == 0 || std::abs(y) >= ythr) {
      F = -(eval_cheb(t, km, x) - E * P) / ipow(-y, q);
    } else {
      // remainder of J_t/E past order r_m, divided by (x-1)^q
      double sum = 0, yp = 1;
      for (int k = rm; k < static_cast<int>(c.size()); ++k) {
        const double term = c[k] * yp;
        sum += term;
        if (k > rm + 10 && std::abs(term) < 1e-18 * std::abs(sum)) break;
        yp *= y;
      }
      for (int k = 0; k < rm - q; ++k) sum *= y;
      F = -(q % 2 ? -1.0 : 1.0) * E * sum;
    }
    acc += rule.weights[j] * J(j, s) * F;
  }
  return acc;
}

double Kernel::complementary(const Site &a, const Site &b) const {
  const double sign = (r_of(a.level) - r_of(b.level)) % 2 ? -1.0 : 1.0;
  return (a == b ? 1.0 : 0.0) - sign * eval(a, b);
}

double Kernel::psi(int n, int p, int s) const {
  const QuadratureRule &rule = rule_for(n, s + std::abs(p) + static_cast<int>(omega_.gamma) + 40);
  const auto &J = jtable(rule, s);
  double acc = 0;
  for (int j = 0; j < rule.order(); ++j) acc += rule.weights[j] * J(j, s) * omega_.psi_integrand(p, rule.nodes[j]);
  return acc;
}

double Kernel::phi_fn(int m, int j, int t) const {
  if (j < 0) return 0.0;  // integrand is analytic inside the contour
  // the only singularity inside any admissible loop is w = 1, so a circle about 1
  // (clear of the zeros of E) gives the same value with far less growth of J_t
  double rho = 0.5;
  for (double z : omega_.zeros()) rho = std::min(rho, 0.5 * std::abs(z - 1));
  const int M = opts_.contour.nodes;
  cd acc = 0;
  for (int k = 0; k < M; ++k) {
    const cd e = std::polar(1.0, 2 * M_PI * (k + 0.5) / M);
    const cd w = 1.0 + rho * e;
    acc += eval_cheb(t, kind_of_level(m), w) / (omega_.E(w) * ipow(rho * e, j + 1)) * (rho * e / static_cast<double>(M));
  }
  return acc.real();
}

double Kernel::phi_interlevel(int n, int m, int s, int t) const {
  if (n >= m) throw std::invalid_argument("phi_interlevel: need n < m");
  const QuadratureRule &rule = rule_for(n, 0);
  const auto &J = jtable(rule, s);
  const Nodes nd = make_nodes(rule, r_of(m));
  const int d = r_of(n) - r_of(m);
  const ChebKind km = kind_of_level(m);
  std::vector<cd> g(nd.u.size());
  for (std::size_t k = 0; k < nd.u.size(); ++k) g[k] = eval_cheb(t, km, nd.u[k]) * std::pow(nd.u[k] - 1.0, d) * nd.w[k];
  const bool circle = opts_.contour.shape == Contour::Shape::Circle;
  const double rho = circle ? std::abs(nd.u[0] - 1.0) : 0.0;
  double acc = 0;
  for (int j = 0; j < rule.order(); ++j) {
    const double x = rule.nodes[j];
    cd inner = 0;
    for (std::size_t k = 0; k < g.size(); ++k) inner += g[k] / (x - nd.u[k]);
    if (circle && std::abs(1 - x) > rho) inner -= eval_cheb(t, km, x) * std::pow(x - 1, d);
    acc += rule.weights[j] * J(j, s) * inner.real();
  }
  return -acc;
}

double Kernel::series(const Site &a, const Site &b) const {
  const int n = a.level, m = b.level;
  double acc = n < m ? -phi_interlevel(n, m, a.s, b.s) : 0.0;
  for (int k = 1; k <= r_of(m); ++k) acc += psi(n, r_of(n) - k, a.s) * phi_fn(m, r_of(m) - k, b.s);
  return acc;
}

double Kernel::value(KernelChoice c, const Site &a, const Site &b) const {
  switch (c) {
    case KernelChoice::Kernel: return eval(a, b);
    case KernelChoice::Complementary: return complementary(a, b);
    case KernelChoice::Series: return series(a, b);
  }
  return 0;
}

Eigen::MatrixXd Kernel::matrix(KernelChoice c, const std::vector<Site> &sites) const {
  const int k = static_cast<int>(sites.size());
  Eigen::MatrixXd K(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      K(i, j) = value(c, sites[i], sites[j]);
      if (!std::isfinite(K(i, j))) throw std::runtime_error("kernel: non-finite entry");
    }
  return K;
}

double kernel_eval(const SpecFunction &omega, const Site &a, const Site &b, const KernelOptions &opts) {
  return Kernel(omega, opts).eval(a, b);
}

double kernel_eval_series(const SpecFunction &omega, const Site &a, const Site &b, const KernelOptions &opts) {
  return Kernel(omega, opts).series(a, b);
}

double complementary_kernel(const SpecFunction &omega, const Site &a, const Site &b, const KernelOptions &opts) {
  return Kernel(omega, opts).complementary(a, b);
}

Correlation correlation_det(const Kernel &k, KernelChoice c, const std::vector<Site> &sites, double eps) {
  if (sites.size() > 12) throw std::invalid_argument("correlation_det: at most 12 sites");
  Correlation out;
  if (sites.empty()) return out;
  out.value = k.matrix(c, sites).determinant();
  out.in_range = out.value >= -eps && out.value <= 1 + eps;
  return out;
}

void write_kernel_csv(std::ostream &os, const Kernel &k, KernelChoice c, const std::vector<Site> &sites,
                      std::uint64_t seed) {
  os << "#planchgrow v1 seed=" << seed << " gamma=" << k.omega().gamma << "\n";
  os << "s,n,t,m,value\n";
  os.precision(17);
  for (const auto &a : sites)
    for (const auto &b : sites) os << a.s << "," << a.level << "," << b.s << "," << b.level << "," << k.value(c, a, b) << "\n";
}

}  // namespace pg
