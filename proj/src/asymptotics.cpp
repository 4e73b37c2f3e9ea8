#include "planchgrow/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <string>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/binomial.hpp>

#include "planchgrow/orthopoly.hpp"
#include "planchgrow/parallel.hpp"

namespace pg {

namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
cplx gl_complex(F f, double a, double b, int panels) {
  using GL = boost::math::quadrature::gauss<double, 20>;
  cplx acc = 0;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h, hi = lo + h;
    acc += cplx(GL::integrate([&](double x) { return f(x).real(); }, lo, hi),
                GL::integrate([&](double x) { return f(x).imag(); }, lo, hi));
  }
  return acc;
}

template <class F>
double gk(F f, double a, double b, double tol = 1e-13) {
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, tol);
}

template <class F>
cplx gk_complex(F f, double a, double b, double tol) {
  return cplx(gk([&](double x) { return f(x).real(); }, a, b, tol),
              gk([&](double x) { return f(x).imag(); }, a, b, tol));
}

}  // namespace

void PhasePoint::validate() const {
  if (!(tau > 0) || !(nu > 0) || !(eta > 0)) throw std::invalid_argument("phase point needs tau, nu, eta > 0");
}

const char *region_name(Region r) {
  switch (r) {
    case Region::Frozen: return "frozen";
    case Region::Liquid: return "liquid";
    case Region::Empty: return "empty";
  }
  return "?";
}

cplx action_S(const PhasePoint &p, cplx z) {
  if (z == 0.0 || z == 1.0) throw std::domain_error("action_S: branch point");
  const cplx w = (z + 1.0 / z) / 2.0;
  return p.tau * w - p.nu * std::log(z) + p.eta * std::log(w - 1.0);
}

cplx action_S_prime(const PhasePoint &p, cplx z) {
  if (z == 0.0 || z == 1.0) throw std::domain_error("action_S_prime: branch point");
  return p.tau * (1.0 - 1.0 / (z * z)) / 2.0 - p.nu / z + p.eta * (2.0 / (z - 1.0) - 1.0 / z);
}

std::array<double, 4> sprime_poly(const PhasePoint &p) {
  // tau (z-1)^2 (z+1) - 2 nu z (z-1) + 2 eta z (z+1)
  return {p.tau, 2 * p.eta - p.tau - 2 * p.nu, 2 * p.eta - p.tau + 2 * p.nu, p.tau};
}

std::vector<cplx> sprime_roots(const PhasePoint &p) {
  const auto c = sprime_poly(p);
  Eigen::Matrix3d comp = Eigen::Matrix3d::Zero();
  comp(0, 0) = -c[1] / c[0];
  comp(0, 1) = -c[2] / c[0];
  comp(0, 2) = -c[3] / c[0];
  comp(1, 0) = 1;
  comp(2, 1) = 1;
  Eigen::EigenSolver<Eigen::Matrix3d> es(comp, false);
  std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + 3);
  // one Newton polish each on the cubic
  for (auto &z : roots) {
    const cplx f = ((c[0] * z + c[1]) * z + c[2]) * z + c[3];
    const cplx df = (3.0 * c[0] * z + 2.0 * c[1]) * z + c[2];
    if (std::abs(df) > 1e-8 * (1 + std::abs(z))) z -= f / df;
  }
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
  return roots;
}

double sprime_discriminant(const PhasePoint &p) {
  const auto c = sprime_poly(p);
  const double a = c[0], b = c[1], cc = c[2], d = c[3];
  const double disc = 18 * a * b * cc * d - 4 * b * b * b * d + b * b * cc * cc - 4 * a * cc * cc * cc - 27 * a * a * d * d;
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(cc), std::abs(d)});
  return disc / std::pow(scale, 4);
}

double q_minus_radicand(double r) {
  return -r * r / 2 + 5 * r + 1 - r * r / 2 * std::pow(1 + 4 / r, 1.5);
}

double q_plus(double r) {
  if (!(r > 0)) throw std::invalid_argument("q_plus: ratio must be positive");
  return std::sqrt(-r * r / 2 + 5 * r + 1 + r * r / 2 * std::pow(1 + 4 / r, 1.5));
}

double q_minus(double r) {
  if (!(r > 0)) throw std::invalid_argument("q_minus: ratio must be positive");
  if (r >= 0.5) return 0.0;
  return std::sqrt(std::max(0.0, q_minus_radicand(r)));
}

CriticalPointResult classify_phase(const PhasePoint &p, double band) {
  p.validate();
  CriticalPointResult res;
  const double ratio = p.tau / p.eta;
  const double lo = p.eta * q_minus(ratio), hi = p.eta * q_plus(ratio);
  if (p.nu >= hi) res.closed_form = Region::Frozen;
  else if (p.nu <= lo) res.closed_form = Region::Empty;
  else res.closed_form = Region::Liquid;
  const double tol_nu = band * (1 + p.nu);
  res.near_boundary = std::abs(p.nu - hi) <= tol_nu || (lo > 0 && std::abs(p.nu - lo) <= tol_nu);

  res.roots = sprime_roots(p);
  const cplx *upper = nullptr;
  for (const auto &z : res.roots)
    if (z.imag() > 1e-7 * (1 + std::abs(z)) && (!upper || z.imag() > upper->imag())) upper = &z;
  if (upper) {
    res.region = Region::Liquid;
    res.z0 = *upper;
  } else {
    // one real root always lies in (-1,0); the other two sit together beyond +1 or -1
    const double zmax = res.roots.back().real(), zmin = res.roots.front().real();
    if (zmax > 1) {
      res.region = Region::Frozen;
      res.z0 = zmax;
    } else {
      res.region = Region::Empty;
      res.z0 = zmin;
    }
  }
  if (res.region != res.closed_form && !res.near_boundary) {
    std::ostringstream msg;
    msg << std::setprecision(17) << "classify_phase: roots say " << region_name(res.region) << ", q curves say "
        << region_name(res.closed_form) << " at (" << p.tau << ", " << p.nu << ", " << p.eta << ")";
    throw PhaseFault(msg.str());
  }
  return res;
}

BetaValue incomplete_beta(int k, int l, cplx zeta) {
  BetaValue out;
  if (zeta.imag() == 0.0) {
    out.degenerate = true;
    return out;
  }
  if (zeta.imag() < 0) throw std::invalid_argument("incomplete_beta: needs Im zeta >= 0");
  const double rho = std::abs(zeta), theta = std::arg(zeta);
  const double a = -theta, b = k >= 0 ? theta : -(2 * kPi - theta);
  auto f = [&](double phi) {
    const cplx z = std::polar(rho, phi);
    return std::pow(1.0 - z, k) * std::pow(z, -l);  // dz/(i) = z dphi
  };
  const int panels = 8 + 2 * (std::abs(k) + std::abs(l));
  const cplx v = gl_complex(f, a, b, panels) / (2 * kPi);
  out.value = v.real();
  out.imag = v.imag();
  if (std::abs(out.imag) > 1e-10 * std::max(1.0, std::abs(out.value)))
    throw std::runtime_error("incomplete_beta: imaginary residue " + std::to_string(out.imag));
  return out;
}

double incomplete_beta_exact(int k, int l, cplx zeta) {
  if (k < 0) throw std::invalid_argument("incomplete_beta_exact: k >= 0 only");
  if (zeta.imag() == 0.0) return 0.0;
  const double theta = std::arg(zeta);
  double acc = 0;
  for (int j = 0; j <= k; ++j) {
    const double c = boost::math::binomial_coefficient<double>(k, j) * (j % 2 ? -1.0 : 1.0);
    const int e = l - j;  // integrand z^{-e-1}
    acc += c * (e == 0 ? theta / kPi : -std::pow(zeta, -e).imag() / (kPi * e));
  }
  return acc;
}

double bulk_density(const PhasePoint &p) {
  const auto cp = classify_phase(p);
  if (cp.region != Region::Liquid) throw std::invalid_argument("bulk_density: point is not liquid");
  return std::arg(cp.z0) / kPi;
}

double bulk_correlation(const PhasePoint &p, const std::vector<Site> &sites) {
  const auto cp = classify_phase(p);
  if (cp.region != Region::Liquid) throw std::invalid_argument("bulk_correlation: point is not liquid");
  const int k = static_cast<int>(sites.size());
  Eigen::MatrixXd M(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const int dn = sites[i].level - sites[j].level;
      const int ds = sites[i].s - sites[j].s;
      const int dr = r_of(sites[i].level) - r_of(sites[j].level);
      M(i, j) = incomplete_beta(dn, ds + dn - dr, cp.z0).value;
    }
  return k == 0 ? 1.0 : M.determinant();
}

double jacobi_kernel(const Site &a, const Site &b, double eps) {
  const int n = a.level, m = b.level, s = a.s, t = b.s;
  const int p = r_of(n) - r_of(m);
  if (eps >= 1 && n < m) throw std::invalid_argument("jacobi_kernel: eps >= 1 with n < m");
  const ChebKind kn = kind_of_level(n), km = kind_of_level(m);
  const double an = alpha_of(kn);
  double full = 0;
  if (n >= m) {
    const auto &rule = gauss_jacobi(kn, std::max(40, (s + t + p) / 2 + 20));
    for (int i = 0; i < rule.order(); ++i) {
      const double x = rule.nodes[i];
      full += rule.weights[i] * eval_cheb(s, kn, x) * eval_cheb(t, km, x) * std::pow(1 - x, p);
    }
  }
  if (eps <= -1) return full;
  if (eps >= 1) return 0.0;  // n >= m: the two pieces cancel
  // x + 1 = (1 + eps) w^2
  const double c = 1 + eps, norm = std::pow(2.0, an + 0.5) / kPi;
  auto f = [&](double w) {
    const double x = -1 + c * w * w;
    return eval_cheb(s, kn, x) * eval_cheb(t, km, x) * std::pow(1 - x, p + an) * std::sqrt(c) * w * 2 * c * w;
  };
  const double piece = norm * gk(f, 0.0, 1.0);
  return full - piece;
}

double jacobi_correlation(const std::vector<Site> &sites, double tau, double eta) {
  if (!(tau > 0) || !(eta > 0)) throw std::invalid_argument("jacobi_correlation: tau, eta > 0");
  const double eps = 1 - eta / tau;
  if (eps <= -1) return 1.0;
  const int k = static_cast<int>(sites.size());
  Eigen::MatrixXd M(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) M(i, j) = jacobi_kernel(sites[i], sites[j], eps);
  return k == 0 ? 1.0 : M.determinant();
}

namespace {

// sin(nu sqrt(2u))/sqrt(u), entire in u
cplx sinc_root(double nu, cplx u) {
  const cplx r = std::sqrt(u);
  if (std::abs(r) < 1e-8) return nu * std::sqrt(2.0) * (1.0 - nu * nu * u / 3.0);
  return std::sin(nu * std::sqrt(2.0) * r) / r;
}

}  // namespace

double pearcey_integral(double nu1, double eta1, double nu2, double eta2, double X) {
  if (nu1 == 0 || nu2 == 0) return 0.0;
  const double sx = std::sqrt(X);
  // inner: int_0^X e^{-x^2/8 - eta1 x/2} sin(nu1 sqrt(2x)) / (u - x) dx with x = w^2
  auto inner = [&](cplx u) {
    auto g = [&](double w) {
      const double x = w * w;
      return 2 * w * std::exp(-x * x / 8 - eta1 * x / 2) * std::sin(nu1 * std::sqrt(2.0) * w) / (u - x);
    };
    return gk_complex(g, 0.0, sx, 1e-12);
  };
  // outer: u = iy, y = v^2; the y < 0 half is the conjugate
  auto outer = [&](double v) {
    const double y = v * v;
    const cplx u(0, y);
    const cplx val = std::exp(cplx(-y * y / 8, eta2 * y / 2)) * sinc_root(nu2, u) * inner(u);
    return 2 * v * val.real();
  };
  const double I = 2 * gk(outer, 0.0, sx, 1e-11);
  return std::sqrt(2.0) / kPi * I / (2 * kPi);
}

PearceyValue pearcey_kernel(double nu1, double eta1, double nu2, double eta2, const PearceyOptions &opts) {
  if (nu1 < 0 || nu2 < 0 || !(eta1 > 0) || !(eta2 > 0)) throw std::invalid_argument("pearcey_kernel: needs nu >= 0, eta > 0");
  PearceyValue out;
  if (eta1 > eta2) {
    const double d = eta1 - eta2;
    out.indicator_term = (std::exp(-(nu1 + nu2) * (nu1 + nu2) / d) - std::exp(-(nu1 - nu2) * (nu1 - nu2) / d)) / std::sqrt(kPi * d);
  }
  double X = opts.truncation;
  double prev = pearcey_integral(nu1, eta1, nu2, eta2, X);
  for (X *= 2; X <= opts.max_truncation; X *= 2) {
    const double cur = pearcey_integral(nu1, eta1, nu2, eta2, X);
    out.doubling_diff = std::abs(cur - prev);
    if (out.doubling_diff < opts.tol) {
      out.integral_term = cur;
      out.truncation = X;
      out.value = out.indicator_term + out.integral_term;
      return out;
    }
    prev = cur;
  }
  throw std::runtime_error("pearcey_kernel: no convergence up to the maximal truncation");
}

double scaling_asymptotic_check(double N, ChebKind kind, double nu, const std::vector<double> &xprime) {
  const double q = std::pow(N, 0.25);
  const long s = std::lround(q * nu);
  const double nu_eff = s / q, a = alpha_of(kind);
  double worst = 0;
  for (double xp : xprime) {
    if (!(xp > 0)) throw std::invalid_argument("scaling_asymptotic_check: x' must be positive");
    const double x = xp / std::sqrt(N) - 1;
    const double lhs = (s % 2 ? -1.0 : 1.0) * eval_cheb(static_cast<int>(s), kind, x) / q;
    const double rhs = std::sin(nu_eff * std::sqrt(2 * xp)) / (std::pow(2.0, a) * std::sqrt(xp));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

void write_phase_raster(std::ostream &os, const RasterSpec &spec, int threads, std::uint64_t seed) {
  os << "#planchgrow v1 seed=" << seed << " tau=" << spec.tau << "\n";
  os << "tau,nu,eta,label,re_z0,im_z0,density\n";
  const int nn = std::max(0, spec.nu_points), ne = std::max(0, spec.eta_points);
  if (nn == 0 || ne == 0) return;
  std::vector<std::string> rows(static_cast<std::size_t>(nn) * ne);
  auto coord = [](double lo, double hi, int count, int i) { return count == 1 ? lo : lo + (hi - lo) * i / (count - 1); };
  parallel_for(static_cast<std::int64_t>(rows.size()), threads, [&](std::int64_t idx, int) {
    const int ie = static_cast<int>(idx / nn), in = static_cast<int>(idx % nn);
    const PhasePoint p{spec.tau, coord(spec.nu_min, spec.nu_max, nn, in), coord(spec.eta_min, spec.eta_max, ne, ie)};
    const auto cp = classify_phase(p);
    const double density = cp.region == Region::Liquid ? std::arg(cp.z0) / kPi : (cp.region == Region::Frozen ? 0.0 : 1.0);
    std::ostringstream line;
    line << std::setprecision(10) << p.tau << "," << p.nu << "," << p.eta << "," << region_name(cp.region) << ","
         << cp.z0.real() << "," << cp.z0.imag() << "," << density << "\n";
    rows[idx] = line.str();
  });
  for (const auto &r : rows) os << r;
}

void write_phase_boundaries(std::ostream &os, double tau, double eta_min, double eta_max, int points,
                            std::uint64_t seed) {
  os << "#planchgrow v1 seed=" << seed << " tau=" << tau << "\n";
  os << "tau,eta,nu_lower,nu_upper\n";
  os << std::setprecision(12);
  for (int i = 0; i < points; ++i) {
    const double eta = points == 1 ? eta_min : eta_min + (eta_max - eta_min) * i / (points - 1);
    os << tau << "," << eta << "," << eta * q_minus(tau / eta) << "," << eta * q_plus(tau / eta) << "\n";
  }
}

}  // namespace pg
