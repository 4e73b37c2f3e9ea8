#include "planchgrow/diffusion.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "planchgrow/orthopoly.hpp"

namespace pg {

namespace {

// bounds computed from other reflected paths can cross by rounding
void settle(double &lower, double &upper) {
  if (lower <= upper) return;
  if (lower - upper > 1e-12 * (1 + std::abs(upper))) throw std::invalid_argument("esp: lower > upper");
  lower = upper;
}

}  // namespace

double EspOnline::start(double psi, double lower, double upper) {
  settle(lower, upper);
  const double a = psi - upper, b = psi - lower;
  A_ = std::min(std::max(a, 0.0), b);
  M_ = std::min(a, b);
  xi_ = std::max(A_, M_);
  phi_ = std::clamp(psi - xi_, lower, upper);
  return phi_;
}

double EspOnline::step(double psi, double lower, double upper) {
  return step(psi, lower, upper, psi - lower, psi - upper);
}

double EspOnline::step(double psi, double lower, double upper, double b_min, double a_max) {
  settle(lower, upper);
  const double a = psi - upper, b = psi - lower;
  A_ = std::min(A_, std::min(b_min, b));
  M_ = std::min(std::max(M_, std::max(a_max, a)), std::min(b_min, b));
  xi_ = std::max(A_, M_);
  phi_ = std::clamp(psi - xi_, lower, upper);
  return phi_;
}

std::vector<double> skorokhod_xi(const std::vector<double> &lower, const std::vector<double> &upper,
                                 const std::vector<double> &psi) {
  if (lower.size() != psi.size() || upper.size() != psi.size())
    throw std::invalid_argument("skorokhod_xi: paths on different grids");
  std::vector<double> xi(psi.size());
  EspOnline esp;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    if (j == 0)
      esp.start(psi[0], lower[0], upper[0]);
    else
      esp.step(psi[j], lower[j], upper[j]);
    xi[j] = esp.xi();
  }
  return xi;
}

std::vector<double> esp_map(const std::vector<double> &lower, const std::vector<double> &upper,
                            const std::vector<double> &psi) {
  std::vector<double> out = skorokhod_xi(lower, upper, psi);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = psi[j] - out[j];
  return out;
}

SampledPath esp_map(const SampledPath &lower, const SampledPath &upper, const SampledPath &psi) {
  if (lower.t != psi.t || upper.t != psi.t) throw std::invalid_argument("esp_map: paths on different grids");
  return {psi.t, esp_map(lower.v, upper.v, psi.v)};
}

std::vector<double> uniform_grid(double T, double dt) {
  if (!(dt > 0) || !(T > 0)) throw std::invalid_argument("uniform_grid: need T, dt > 0");
  const auto K = static_cast<std::size_t>(std::ceil(T / dt - 1e-9));
  std::vector<double> t(K + 1);
  for (std::size_t j = 0; j <= K; ++j) t[j] = std::min(T, j * dt);
  return t;
}

std::vector<double> geometric_grid(double T, double t_min, int points_per_decade) {
  if (!(t_min > 0) || !(T > t_min) || points_per_decade < 1) throw std::invalid_argument("geometric_grid: bad arguments");
  const double ratio = std::pow(10.0, 1.0 / points_per_decade);
  std::vector<double> t{0.0};
  for (double s = t_min; s < T * (1 - 1e-12); s *= ratio) t.push_back(s);
  t.push_back(T);
  return t;
}

double ReflectedSystem::at(int k, int i, std::size_t j) const {
  if (i < 1) return kInf;
  if (i > r_of(k)) return 0.0;
  return W[k - 1][i - 1][j];
}

namespace {

// bounds of W^k_i from level k-1; level 1 lives on [0, inf)
template <class Get>
std::pair<double, double> bounds(int k, int i, Get prev) {
  if (k == 1) return {0.0, kInf};
  const double lo = i > r_of(k - 1) ? 0.0 : prev(i);
  const double hi = i == 1 ? kInf : prev(i - 1);
  return {lo, hi};
}

// extremes of a Brownian bridge from x0 to x1 with variance v over the step
double bridge_min(double x0, double x1, double v, std::mt19937_64 &rng) {
  const double u = std::generate_canonical<double, 53>(rng);
  return 0.5 * (x0 + x1 - std::sqrt((x1 - x0) * (x1 - x0) - 2 * v * std::log1p(-u)));
}

// one grid step of particle (k,i): psi moves from psi0 to psi1 while its bounds move from
// (lo0,hi0) to (lo1,hi1); excursions between grid points are caught through bridge extremes
double reflected_step(EspOnline &esp, int k, int i, double psi0, double psi1, std::pair<double, double> old_b,
                      std::pair<double, double> new_b, double h, std::mt19937_64 &rng) {
  const bool wall_below = k == 1 || i > r_of(k - 1);
  double b_min = psi1 - new_b.first, a_max = psi1 - new_b.second;
  const double vb = wall_below ? h : 2 * h;
  b_min = bridge_min(psi0 - old_b.first, b_min, vb, rng);
  if (std::isfinite(new_b.second)) a_max = -bridge_min(old_b.second - psi0, new_b.second - psi1, 2 * h, rng);
  return esp.step(psi1, new_b.first, new_b.second, b_min, a_max);
}

}  // namespace

ReflectedSystem build_interlaced(int levels, const std::vector<double> &grid, std::uint64_t seed) {
  if (levels < 1) throw std::invalid_argument("build_interlaced: levels >= 1");
  if (grid.size() < 2 || grid[0] != 0.0) throw std::invalid_argument("build_interlaced: grid must start at 0");
  for (std::size_t j = 1; j < grid.size(); ++j)
    if (!(grid[j] > grid[j - 1])) throw std::invalid_argument("build_interlaced: grid not increasing");
  ReflectedSystem sys;
  sys.t = grid;
  sys.seed = seed;
  sys.W.resize(levels);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const std::size_t K = grid.size();
  for (int k = 1; k <= levels; ++k) {
    sys.W[k - 1].assign(r_of(k), std::vector<double>(K));
    for (int i = 1; i <= r_of(k); ++i) {
      auto &out = sys.W[k - 1][i - 1];
      EspOnline esp;
      double psi = 0.0;
      auto bounds_at = [&](std::size_t j) { return bounds(k, i, [&](int q) { return sys.W[k - 2][q - 1][j]; }); };
      for (std::size_t j = 0; j < K; ++j) {
        if (j == 0) {
          auto [lo, hi] = bounds_at(0);
          out[0] = esp.start(psi, lo, hi);
          continue;
        }
        const double h = grid[j] - grid[j - 1], psi0 = psi;
        psi += std::sqrt(h) * normal(rng);
        out[j] = reflected_step(esp, k, i, psi0, psi, bounds_at(j - 1), bounds_at(j), h, rng);
      }
    }
  }
  return sys;
}

std::vector<std::vector<double>> interlaced_final(int levels, double T, double dt, std::mt19937_64 &rng) {
  if (!(dt > 0) || !(T > 0)) throw std::invalid_argument("interlaced_final: need T, dt > 0");
  std::vector<std::vector<double>> w(levels), psi(levels);
  std::vector<std::vector<EspOnline>> esp(levels);
  for (int k = 1; k <= levels; ++k) {
    w[k - 1].assign(r_of(k), 0.0);
    psi[k - 1].assign(r_of(k), 0.0);
    esp[k - 1].resize(r_of(k));
    for (int i = 1; i <= r_of(k); ++i) {
      const auto [lo, hi] = bounds(k, i, [](int) { return 0.0; });
      esp[k - 1][i - 1].start(0.0, lo, hi);
    }
  }
  std::normal_distribution<double> normal;
  std::vector<std::vector<double>> prev;
  const auto steps = static_cast<std::int64_t>(std::ceil(T / dt - 1e-9));
  double t = 0;
  for (std::int64_t s = 0; s < steps; ++s) {
    const double h = std::min(dt, T - t);
    t += h;
    const double sd = std::sqrt(h);
    prev = w;
    for (int k = 1; k <= levels; ++k)
      for (int i = 1; i <= r_of(k); ++i) {
        const double psi0 = psi[k - 1][i - 1];
        psi[k - 1][i - 1] += sd * normal(rng);
        const auto old_b = bounds(k, i, [&](int q) { return prev[k - 2][q - 1]; });
        const auto new_b = bounds(k, i, [&](int q) { return w[k - 2][q - 1]; });
        w[k - 1][i - 1] = reflected_step(esp[k - 1][i - 1], k, i, psi0, psi[k - 1][i - 1], old_b, new_b, h, rng);
      }
  }
  return w;
}

bool interlacing_holds(const ReflectedSystem &sys, double tol) {
  for (std::size_t j = 0; j < sys.t.size(); ++j)
    for (int k = 1; k <= sys.levels(); ++k)
      for (int i = 1; i <= r_of(k); ++i) {
        auto [lo, hi] = bounds(k, i, [&](int q) { return sys.at(k - 1, q, j); });
        const double x = sys.at(k, i, j);
        if (x < lo - tol || x > hi + tol) return false;
      }
  return true;
}

void write_paths_csv(std::ostream &os, const ReflectedSystem &sys, std::size_t stride) {
  stride = std::max<std::size_t>(stride, 1);
  os << "#planchgrow v1 seed=" << sys.seed << "\n";
  os << "time,level,index,value\n";
  for (std::size_t j = 0; j < sys.t.size(); j += stride)
    for (int k = 1; k <= sys.levels(); ++k)
      for (int i = 1; i <= r_of(k); ++i) os << sys.t[j] << "," << k << "," << i << "," << sys.at(k, i, j) << "\n";
}

double heat(double t, double x) { return std::exp(-x * x / (2 * t)) / std::sqrt(2 * M_PI * t); }
double heat_cdf(double t, double x) { return 0.5 * std::erfc(-x / std::sqrt(2 * t)); }
double heat_dx(double t, double x) { return -x / t * heat(t, x); }

double p_killed(int k, double t, const std::vector<double> &u, const std::vector<double> &up) {
  const int r = r_of(k);
  if (static_cast<int>(u.size()) != r || static_cast<int>(up.size()) != r)
    throw std::invalid_argument("p_killed: wrong dimension");
  const double sg = k % 2 == 1 ? 1.0 : -1.0;  // (-1)^{k-1}
  Eigen::MatrixXd m(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) m(i, j) = heat(t, up[j] - u[i]) + sg * heat(t, up[j] + u[i]);
  return m.determinant();
}

bool in_chamber(int k, const std::vector<double> &u, bool closed) {
  if (static_cast<int>(u.size()) != r_of(k)) return false;
  for (std::size_t i = 0; i + 1 < u.size(); ++i)
    if (closed ? u[i] < u[i + 1] : u[i] <= u[i + 1]) return false;
  if (u.empty()) return true;
  const double last = u.back();
  if (closed || k % 2 == 1) return last >= 0;
  return last > 0;
}

bool interlaced_pair(const std::vector<double> &v, const std::vector<double> &u) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i >= v.size() || v[i] < u[i]) return false;
    if (i + 1 < v.size() && u[i] < v[i + 1]) return false;
  }
  return true;
}

double two_level_density(int k, double t, const std::vector<double> &v, const std::vector<double> &u,
                         const std::vector<double> &vp, const std::vector<double> &up, bool printed_constant) {
  if (k < 1 || !(t > 0)) throw std::invalid_argument("two_level_density: need k >= 1, t > 0");
  if (!in_chamber(k + 1, v, true) || !in_chamber(k, u, true) || !interlaced_pair(v, u) || !in_chamber(k + 1, vp, true) ||
      !in_chamber(k, up, true) || !interlaced_pair(vp, up))
    throw std::invalid_argument("two_level_density: arguments outside the interlaced chamber");
  const int R = r_of(k + 1), r = r_of(k);
  const double s = k % 2 == 0 ? 1.0 : -1.0;  // (-1)^k
  const double shift = printed_constant ? 0.0 : s;
  Eigen::MatrixXd m(R + r, R + r);
  for (int i = 0; i < R; ++i) {
    for (int j = 0; j < R; ++j) m(i, j) = heat(t, vp[j] - v[i]) + s * heat(t, vp[j] + v[i]);
    for (int j = 0; j < r; ++j)
      m(i, R + j) = heat_cdf(t, up[j] - v[i]) + s * heat_cdf(t, up[j] + v[i]) - shift - (j + 1 <= i ? 1.0 : 0.0);
  }
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < R; ++j) m(R + i, j) = heat_dx(t, vp[j] - u[i]) - s * heat_dx(t, vp[j] + u[i]);
    for (int j = 0; j < r; ++j) m(R + i, R + j) = heat(t, up[j] - u[i]) - s * heat(t, up[j] + u[i]);
  }
  return m.determinant();
}

double hk_eval(int k, const std::vector<double> &u) {
  const int r = r_of(k);
  if (static_cast<int>(u.size()) != r) throw std::invalid_argument("hk_eval: wrong dimension");
  double h = 1.0;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) h *= u[i] * u[i] - u[j] * u[j];
  if (k % 2 == 0)
    for (double x : u) h *= x;
  return h;
}

namespace {

// Gauss-Hermite for the weight exp(-x^2)
std::pair<std::vector<double>, std::vector<double>> gauss_hermite(int m) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
  for (int i = 1; i < m; ++i) J(i, i - 1) = J(i - 1, i) = std::sqrt(i / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  std::vector<double> x(m), w(m);
  for (int i = 0; i < m; ++i) {
    x[i] = es.eigenvalues()(i);
    w[i] = std::sqrt(M_PI) * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
  }
  return {x, w};
}

}  // namespace

double entrance_normalizer(int k) {
  static std::mutex mu;
  static std::map<int, double> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(k); it != cache.end()) return it->second;
  const int r = r_of(k);
  if (r > 4) throw std::invalid_argument("entrance_normalizer: r_k <= 4 only");
  // h_k^2 exp(-|u|^2/2) is invariant under permutations and sign changes, so the
  // chamber integral is the full-space integral over r! 2^r
  const int m = 2 * r + 2;
  auto [x, w] = gauss_hermite(m);
  std::vector<int> idx(r, 0);
  std::vector<double> u(r);
  double total = 0;
  while (true) {
    double wt = 1.0;
    for (int i = 0; i < r; ++i) {
      u[i] = std::sqrt(2.0) * x[idx[i]];
      wt *= w[idx[i]];
    }
    const double h = hk_eval(k, u);
    total += wt * h * h;
    int p = 0;
    while (p < r && ++idx[p] == m) idx[p++] = 0;
    if (p == r) break;
  }
  double fact = 1;
  for (int i = 2; i <= r; ++i) fact *= i;
  const double C = total * std::pow(2.0, 0.5 * r) / (fact * std::pow(2.0, r));
  cache[k] = C;
  return C;
}

double entrance_law_density(int k, double t, const std::vector<double> &u) {
  if (!(t > 0)) throw std::invalid_argument("entrance_law_density: t > 0");
  if (!in_chamber(k, u, true)) return 0.0;
  const int r = r_of(k);
  const double alpha = k % 2 == 0 ? 0.5 : -0.5;
  double sq = 0;
  for (double x : u) sq += x * x;
  const double h = hk_eval(k, u);
  return std::pow(t, -r * (r + alpha)) * std::exp(-sq / (2 * t)) * h * h / entrance_normalizer(k);
}

// positive eigenvalues of i*A, A real antisymmetric with N(0,t) entries above the diagonal,
// of size 2r (k odd) or 2r+1 (k even)
std::vector<double> sample_entrance(int k, double t, std::mt19937_64 &rng) {
  const int r = r_of(k);
  const int N = k % 2 == 0 ? 2 * r + 1 : 2 * r;
  std::normal_distribution<double> normal(0.0, std::sqrt(t));
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      const double a = normal(rng);
      H(i, j) = std::complex<double>(0, a);
      H(j, i) = std::complex<double>(0, -a);
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + N);
  std::sort(ev.rbegin(), ev.rend());
  ev.resize(r);
  for (double &x : ev) x = std::max(x, 0.0);
  return ev;
}

namespace {

bool dyson_ok(int k, const std::vector<double> &x) {
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    if (!(x[i] > x[i + 1])) return false;
  return k % 2 == 1 || x.back() > 0;
}

void dyson_drift(int k, const std::vector<double> &x, std::vector<double> &d) {
  const int r = static_cast<int>(x.size());
  for (int i = 0; i < r; ++i) {
    double s = k % 2 == 0 ? 1.0 / x[i] : 0.0;
    for (int j = 0; j < r; ++j)
      if (j != i) s += 1.0 / (x[i] - x[j]) + 1.0 / (x[i] + x[j]);
    d[i] = s;
  }
}

void dyson_advance(int k, std::vector<double> &x, double h, int halvings_left, std::mt19937_64 &rng) {
  std::normal_distribution<double> normal;
  const int r = static_cast<int>(x.size());
  std::vector<double> d(r), y(r);
  dyson_drift(k, x, d);
  const double sd = std::sqrt(h);
  for (int i = 0; i < r; ++i) y[i] = x[i] + d[i] * h + sd * normal(rng);
  if (k % 2 == 1) y[r - 1] = std::abs(y[r - 1]);
  if (dyson_ok(k, y)) {
    x = y;
    return;
  }
  if (halvings_left == 0) throw std::runtime_error("dyson_euler: collision persists after step halving");
  dyson_advance(k, x, h / 2, halvings_left - 1, rng);
  dyson_advance(k, x, h / 2, halvings_left - 1, rng);
}

}  // namespace

std::vector<double> dyson_euler(int k, double T, const DysonOptions &opt, std::mt19937_64 &rng) {
  if (!(opt.dt > 0)) throw std::invalid_argument("dyson_euler: dt > 0");
  const double t0 = opt.t0 > 0 ? opt.t0 : 10 * opt.dt;
  if (!(T >= t0)) throw std::invalid_argument("dyson_euler: T must exceed the entrance time");
  std::vector<double> x = sample_entrance(k, t0, rng);
  // ties have probability zero but eigen solvers can return them for tiny t0
  if (!dyson_ok(k, x)) x = sample_entrance(k, t0, rng);
  double t = t0;
  while (t < T - 1e-15) {
    const double h = std::min(opt.dt, T - t);
    dyson_advance(k, x, h, opt.max_halvings, rng);
    t += h;
  }
  return x;
}

ReflectedSystem matrix_dyson_path(int levels, const std::vector<double> &grid, std::uint64_t seed) {
  if (levels < 1) throw std::invalid_argument("matrix_dyson_path: levels >= 1");
  if (grid.empty() || grid.front() != 0.0) throw std::invalid_argument("matrix_dyson_path: grid must start at 0");
  const int N = levels + 1;
  ReflectedSystem sys;
  sys.t = grid;
  sys.seed = seed;
  sys.W.resize(levels);
  for (int k = 1; k <= levels; ++k) sys.W[k - 1].assign(r_of(k), std::vector<double>(grid.size(), 0.0));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
  for (std::size_t j = 1; j < grid.size(); ++j) {
    const double sd = std::sqrt(grid[j] - grid[j - 1]);
    for (int a = 0; a < N; ++a)
      for (int b = a + 1; b < N; ++b) {
        A(a, b) += sd * normal(rng);
        A(b, a) = -A(a, b);
      }
    for (int k = 1; k <= levels; ++k) {
      const int n = k + 1;
      const Eigen::MatrixXcd H = std::complex<double>(0, 1) * A.topLeftCorner(n, n).cast<std::complex<double>>();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
      const auto &ev = es.eigenvalues();
      for (int i = 1; i <= r_of(k); ++i) sys.W[k - 1][i - 1][j] = std::max(ev(n - i), 0.0);
    }
  }
  return sys;
}

std::vector<double> gap_statistic(const ReflectedSystem &sys, int k, int i, double c, double h, int windows, double T) {
  if (k < 1 || k > sys.levels() || i < 2 || i > r_of(k) + 1) throw std::invalid_argument("gap_statistic: bad level/index");
  if (!(h > 0 && h < 1) || windows < 1) throw std::invalid_argument("gap_statistic: need 0 < h < 1, windows >= 1");
  std::vector<double> inf(windows, kInf);
  std::vector<int> hits(windows, 0);
  for (std::size_t j = 1; j < sys.t.size(); ++j) {
    const double t = sys.t[j];
    for (int w = 1; w <= windows; ++w) {
      const double lo = T * std::pow(h, w), hi = T * std::pow(h, w - 1);
      if (t >= lo && t <= hi) {
        const double g = (sys.at(k, i - 1, j) - sys.at(k, i, j)) / std::pow(t, c);
        inf[w - 1] = std::min(inf[w - 1], g);
        ++hits[w - 1];
      }
    }
  }
  for (int w = 0; w < windows; ++w)
    if (hits[w] == 0) throw std::invalid_argument("gap_statistic: grid does not resolve every window");
  return inf;
}

double trend_slope(const std::vector<double> &infima) {
  const std::size_t n = infima.size();
  if (n < 2) throw std::invalid_argument("trend_slope: need >= 2 windows");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t w = 0; w < n; ++w) {
    const double x = w + 1.0, y = std::log(std::max(infima[w], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double kolmogorov_q(double lambda) {
  if (lambda <= 0) return 1.0;
  if (lambda < 1.18) {
    double s = 0;
    for (int j = 1; j <= 20; ++j) s += std::exp(-(2 * j - 1) * (2 * j - 1) * M_PI * M_PI / (8 * lambda * lambda));
    return std::clamp(1.0 - std::sqrt(2 * M_PI) / lambda * s, 0.0, 1.0);
  }
  double s = 0;
  for (int j = 1; j <= 100; ++j) s += (j % 2 ? 2.0 : -2.0) * std::exp(-2.0 * j * j * lambda * lambda);
  return std::clamp(s, 0.0, 1.0);
}

KsResult ks_one_sample(std::vector<double> x, const std::function<double(double)> &cdf) {
  if (x.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double D = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double F = cdf(x[i]);
    D = std::max({D, (i + 1) / n - F, F - i / n});
  }
  const double sn = std::sqrt(n);
  return {D, kolmogorov_q((sn + 0.12 + 0.11 / sn) * D)};
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double D = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    D = std::max(D, std::abs(i / na - j / nb));
  }
  const double ne = std::sqrt(na * nb / (na + nb));
  return {D, kolmogorov_q((ne + 0.12 + 0.11 / ne) * D)};
}

double wasserstein1(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("wasserstein1: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<double> pts(a);
  pts.insert(pts.end(), b.begin(), b.end());
  std::sort(pts.begin(), pts.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  double total = 0;
  std::size_t i = 0, j = 0;
  for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
    while (i < a.size() && a[i] <= pts[p]) ++i;
    while (j < b.size() && b[j] <= pts[p]) ++j;
    total += std::abs(i / na - j / nb) * (pts[p + 1] - pts[p]);
  }
  return total;
}

}  // namespace pg
