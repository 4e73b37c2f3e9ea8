#include "planchgrow/repmeasures.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <stdexcept>

namespace pg {

Partition::Partition(int n, std::vector<int> p) : level(n), parts(std::move(p)) {
  if (n < 1) throw std::invalid_argument("Partition: level must be >= 1");
  const int r = r_of(n);
  if (static_cast<int>(parts.size()) > r) {
    for (std::size_t i = r; i < parts.size(); ++i)
      if (parts[i] != 0) throw std::invalid_argument("Partition: length exceeds r_n");
    parts.resize(r);
  }
  parts.resize(r, 0);
  for (int i = 0; i < r; ++i) {
    if (parts[i] < 0) throw std::invalid_argument("Partition: negative part");
    if (i > 0 && parts[i] > parts[i - 1]) throw std::invalid_argument("Partition: parts must be weakly decreasing");
  }
}

Partition Partition::from_tilde(int n, const std::vector<int> &tilde) {
  const int r = r_of(n);
  if (static_cast<int>(tilde.size()) != r) throw std::invalid_argument("from_tilde: wrong length");
  std::vector<int> p(r);
  for (int i = 0; i < r; ++i) p[i] = tilde[i] - (r - 1 - i);
  return Partition(n, p);
}

std::vector<int> Partition::tilde() const {
  const int r = rank();
  std::vector<int> t(r);
  for (int i = 0; i < r; ++i) t[i] = parts[i] + r - 1 - i;
  return t;
}

std::ostream &operator<<(std::ostream &os, const Partition &p) {
  os << "(";
  for (int i = 0; i < p.rank(); ++i) os << (i ? "," : "") << p.parts[i];
  return os << ")@" << p.level;
}

bool interlaces(const Partition &lambda, const Partition &mu) {
  if (mu.level != lambda.level + 1) throw std::invalid_argument("interlaces: levels must be adjacent");
  const int r = lambda.rank();
  for (int i = 0; i < r; ++i) {
    if (lambda[i] > mu[i]) return false;
    const int next = i + 1 < mu.rank() ? mu[i + 1] : 0;
    if (lambda[i] < next) return false;
  }
  return true;
}

namespace {

// exact integer determinant (Bareiss)
BigInt bareiss(std::vector<std::vector<BigInt>> a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int sw = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[i][k] != 0) {
          sw = i;
          break;
        }
      if (sw < 0) return 0;
      std::swap(a[k], a[sw]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

void for_each_box(const std::vector<int> &lo, const std::vector<int> &hi,
                  const std::function<void(const std::vector<int> &)> &fn) {
  const int r = static_cast<int>(lo.size());
  for (int i = 0; i < r; ++i)
    if (lo[i] > hi[i]) return;
  std::vector<int> cur(lo);
  while (true) {
    fn(cur);
    int i = r - 1;
    while (i >= 0 && cur[i] == hi[i]) {
      cur[i] = lo[i];
      --i;
    }
    if (i < 0) return;
    ++cur[i];
  }
}

// partitions nu at level n-1 with nu < lambda
void for_each_predecessor(const Partition &lambda, const std::function<void(const Partition &)> &fn) {
  const int n = lambda.level;
  if (n < 2) return;
  const int r = r_of(n - 1);
  std::vector<int> lo(r), hi(r);
  for (int i = 0; i < r; ++i) {
    hi[i] = lambda[i];
    lo[i] = i + 1 < lambda.rank() ? lambda[i + 1] : 0;
  }
  for_each_box(lo, hi, [&](const std::vector<int> &v) { fn(Partition(n - 1, v)); });
}

void for_each_partition(int n, int cap, const std::function<void(const std::vector<int> &)> &fn) {
  const int r = r_of(n);
  std::vector<int> cur(r, 0);
  std::function<void(int, int)> rec = [&](int i, int bound) {
    if (i == r) {
      fn(cur);
      return;
    }
    for (int v = 0; v <= bound; ++v) {
      cur[i] = v;
      rec(i + 1, v);
    }
  };
  rec(0, cap);
}

}  // namespace

Rational det_form(const Partition &lambda, const Partition &mu) {
  if (mu.level != lambda.level + 1) throw std::invalid_argument("det_form: levels must be adjacent");
  const int n = lambda.level;
  const int R = mu.rank();
  std::vector<int> lt = lambda.tilde();
  if (n % 2 == 0) lt.push_back(-1);
  const std::vector<int> mt = mu.tilde();
  std::vector<std::vector<BigInt>> a(R, std::vector<BigInt>(R));
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < R; ++j) a[i][j] = static_cast<int>(phi_level(n, lt[i], mt[j]));
  Rational d = bareiss(a);
  if (n % 2 == 0) d /= Rational(BigInt(1) << R);
  return d;
}

BigInt dimension_exact(const Partition &lambda) {
  const int n = lambda.level, r = lambda.rank();
  std::vector<long long> l(r), m(r);
  for (int i = 0; i < r; ++i) {
    l[i] = lambda[i] + (r - 1 - i) + 1;
    m[i] = (r - 1 - i) + 1;
  }
  BigInt num = 1, den = 1;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      if (n % 2 == 0) {
        num *= BigInt(l[i] - l[j]) * BigInt(l[i] + l[j]);
        den *= BigInt(m[i] - m[j]) * BigInt(m[i] + m[j]);
      } else {
        num *= BigInt(l[i] - l[j]) * BigInt(l[i] + l[j] - 1);
        den *= BigInt(m[i] - m[j]) * BigInt(m[i] + m[j] - 1);
      }
    }
  if (n % 2 == 0)
    for (int i = 0; i < r; ++i) {
      num *= l[i];
      den *= m[i];
    }
  if (num % den != 0) throw std::logic_error("dimension: non-integral product");
  return num / den;
}

double dimension(const Partition &lambda) { return dimension_exact(lambda).convert_to<double>(); }

BigInt count_paths(const Partition &lambda) {
  std::map<std::vector<int>, BigInt> cur;
  cur[lambda.parts] = 1;
  for (int n = lambda.level; n > 1; --n) {
    std::map<std::vector<int>, BigInt> next;
    for (const auto &[p, c] : cur)
      for_each_predecessor(Partition(n, p), [&](const Partition &nu) { next[nu.parts] += c; });
    cur.swap(next);
  }
  BigInt total = 0;
  for (const auto &kv : cur) total += kv.second;
  return total;
}

PlancherelTable::PlancherelTable(int n, const SpecFunction &omega, int kmax, int order) : n_(n) {
  const int r = r_of(n);
  const ChebKind kind = kind_of_level(n);
  const auto &rule = gauss_jacobi(kind, order);
  g_ = Eigen::MatrixXd::Zero(r, kmax + 1);
  std::vector<double> J(kmax + 1);
  for (int q = 0; q < rule.order(); ++q) {
    const double x = rule.nodes[q];
    eval_cheb_all(kmax, kind, x, J.data());
    double base = rule.weights[q] * omega.E(x);
    for (int i = 0; i < r; ++i) {
      for (int k = 0; k <= kmax; ++k) g_(i, k) += base * J[k];
      base *= (x - 1.0);
    }
  }
}

double PlancherelTable::mass(const Partition &lambda) const {
  if (lambda.level != n_) throw std::invalid_argument("PlancherelTable: level mismatch");
  const int r = lambda.rank();
  const auto t = lambda.tilde();
  if (t[0] > kmax()) throw std::out_of_range("PlancherelTable: partition exceeds table");
  Eigen::MatrixXd a(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) a(i, j) = g_(r - 1 - i, t[j]);
  const double pref = std::ldexp(1.0, r * (r - 1) / 2);
  return pref * a.determinant() * dimension(lambda);
}

double plancherel_mass(int n, const SpecFunction &omega, const Partition &lambda, const QuadratureRule &rule) {
  if (rule.kind != kind_of_level(n)) throw std::invalid_argument("plancherel_mass: quadrature rule mismatch");
  if (lambda.level != n) throw std::invalid_argument("plancherel_mass: level mismatch");
  const int r = lambda.rank();
  const auto t = lambda.tilde();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(r, r);
  for (int q = 0; q < rule.order(); ++q) {
    const double x = rule.nodes[q];
    const double e = rule.weights[q] * omega.E(x);
    for (int j = 0; j < r; ++j) {
      const double Jv = eval_cheb(t[j], rule.kind, x);
      double pw = 1.0;
      for (int i = r - 1; i >= 0; --i) {
        a(i, j) += e * Jv * pw;
        pw *= (x - 1.0);
      }
    }
  }
  return std::ldexp(1.0, r * (r - 1) / 2) * a.determinant() * dimension(lambda);
}

int LevelSpace::find(const Partition &p) const {
  auto it = index.find(p.parts);
  return it == index.end() ? -1 : it->second;
}

LevelSpace make_level_space(int n, int cap) {
  LevelSpace sp;
  sp.level = n;
  sp.cap = cap;
  for_each_partition(n, cap, [&](const std::vector<int> &v) { sp.members.emplace_back(n, v); });
  std::sort(sp.members.begin(), sp.members.end());
  for (int i = 0; i < sp.size(); ++i) sp.index[sp.members[i].parts] = i;
  return sp;
}

TransitionSymbol TransitionSymbol::constant(double c) { return affine(c, 0.0); }

TransitionSymbol TransitionSymbol::affine(double p0, double p1) {
  TransitionSymbol t;
  t.f = [p0, p1](double x) { return p0 + p1 * x; };
  t.at_one = p0 + p1;
  t.band = p1 == 0.0 ? 0 : 1;
  t.linear = true;
  t.p0 = p0;
  t.p1 = p1;
  return t;
}

TransitionSymbol TransitionSymbol::shifted_polynomial(std::vector<double> c) {
  TransitionSymbol t;
  t.at_one = c.empty() ? 0.0 : c[0];
  t.band = static_cast<int>(c.size()) - 1;
  t.f = [c](double x) {
    double acc = 0;
    for (int j = static_cast<int>(c.size()) - 1; j >= 0; --j) acc = acc * (x - 1.0) + c[j];
    return acc;
  };
  return t;
}

TransitionSymbol TransitionSymbol::exp_gamma(double gamma) {
  TransitionSymbol t;
  t.f = [gamma](double x) { return std::exp(gamma * (x - 1.0)); };
  t.at_one = 1.0;
  t.band = -1;
  return t;
}

TransitionSymbol TransitionSymbol::exp_gamma_series(double gamma, int degree) {
  std::vector<double> c(degree + 1);
  c[0] = 1.0;
  for (int j = 1; j <= degree; ++j) c[j] = c[j - 1] * gamma / j;
  return shifted_polynomial(c);
}

TransitionSymbol TransitionSymbol::product(const TransitionSymbol &a, const TransitionSymbol &b) {
  TransitionSymbol t;
  auto fa = a.f, fb = b.f;
  t.f = [fa, fb](double x) { return fa(x) * fb(x); };
  t.at_one = a.at_one * b.at_one;
  t.band = (a.band < 0 || b.band < 0) ? -1 : a.band + b.band;
  return t;
}

Eigen::MatrixXd symbol_matrix(const TransitionSymbol &psi, ChebKind kind, int kmax, int order) {
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(kmax + 1, kmax + 1);
  if (psi.linear) {
    const double a = alpha_of(kind);
    for (int b = 0; b <= kmax; ++b) {
      S(b, b) += psi.p0;
      if (b + 1 <= kmax) S(b + 1, b) += psi.p1 / 2;
      if (b >= 1) S(b - 1, b) += psi.p1 / 2;
    }
    S(0, 0) += psi.p1 / 2 * (1.0 - 2.0 * a) / 2.0;
    return S;
  }
  const auto &rule = gauss_jacobi(kind, order);
  std::vector<double> J(kmax + 1);
  for (int q = 0; q < rule.order(); ++q) {
    eval_cheb_all(kmax, kind, rule.nodes[q], J.data());
    const double w = rule.weights[q] * psi.f(rule.nodes[q]);
    for (int a = 0; a <= kmax; ++a) {
      const double wa = w * J[a];
      for (int b = 0; b <= kmax; ++b) S(a, b) += wa * J[b];
    }
  }
  return S;
}

Eigen::MatrixXd transition_op(int n, const TransitionSymbol &psi, const LevelSpace &space) {
  if (psi.at_one == 0.0) throw std::invalid_argument("transition_op: psi(1) must be nonzero");
  if (space.level != n) throw std::invalid_argument("transition_op: level mismatch");
  const int r = r_of(n);
  const int kmax = space.cap + r - 1;
  const Eigen::MatrixXd S = symbol_matrix(psi, kind_of_level(n), kmax);
  const int N = space.size();
  std::vector<std::vector<int>> tl(N);
  std::vector<double> dims(N);
  for (int i = 0; i < N; ++i) {
    tl[i] = space.members[i].tilde();
    dims[i] = dimension(space.members[i]);
  }
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(N, N);
  Eigen::MatrixXd a(r, r);
  for (int mu = 0; mu < N; ++mu)
    for (int la = 0; la < N; ++la) {
      if (psi.band >= 0) {
        bool reach = true;
        for (int i = 0; i < r; ++i)
          if (std::abs(tl[mu][i] - tl[la][i]) > psi.band * r) reach = false;
        if (!reach) continue;
      }
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) a(i, j) = S(tl[mu][i], tl[la][j]);
      T(mu, la) = a.determinant() * dims[la] / dims[mu];
    }
  return T;
}

std::vector<std::vector<Rational>> cotransition_exact(const LevelSpace &upper, const LevelSpace &lower) {
  if (upper.level != lower.level + 1) throw std::invalid_argument("cotransition: levels must be adjacent");
  std::vector<BigInt> dl(lower.size());
  for (int j = 0; j < lower.size(); ++j) dl[j] = dimension_exact(lower.members[j]);
  std::vector<std::vector<Rational>> T(upper.size(), std::vector<Rational>(lower.size(), Rational(0)));
  for (int i = 0; i < upper.size(); ++i) {
    const BigInt du = dimension_exact(upper.members[i]);
    for (int j = 0; j < lower.size(); ++j)
      if (interlaces(lower.members[j], upper.members[i])) T[i][j] = Rational(dl[j], du);
  }
  return T;
}

Eigen::MatrixXd cotransition_op(const LevelSpace &upper, const LevelSpace &lower) {
  const auto ex = cotransition_exact(upper, lower);
  Eigen::MatrixXd T(upper.size(), lower.size());
  for (int i = 0; i < upper.size(); ++i)
    for (int j = 0; j < lower.size(); ++j) T(i, j) = ex[i][j].convert_to<double>();
  return T;
}

std::vector<int> safe_rows(const LevelSpace &space, int reach) {
  std::vector<int> rows;
  for (int i = 0; i < space.size(); ++i)
    if (space.members[i][0] + reach <= space.cap) rows.push_back(i);
  return rows;
}

IntertwiningReport check_intertwining(int n, const TransitionSymbol &psi, int cap) {
  const LevelSpace lo = make_level_space(n, cap), up = make_level_space(n + 1, cap);
  const Eigen::MatrixXd C = cotransition_op(up, lo);
  const Eigen::MatrixXd lhs = C * transition_op(n, psi, lo);
  const Eigen::MatrixXd rhs = transition_op(n + 1, psi, up) * C;
  const int reach = psi.band >= 0 ? psi.band : cap / 2;
  IntertwiningReport rep;
  for (int i : safe_rows(up, reach))
    for (int j = 0; j < lo.size(); ++j) {
      rep.residual = std::max(rep.residual, std::abs(lhs(i, j) - rhs(i, j)));
      ++rep.safe_entries;
    }
  return rep;
}

double check_semigroup(int n, const TransitionSymbol &a, const TransitionSymbol &b, int cap) {
  const LevelSpace sp = make_level_space(n, cap);
  const Eigen::MatrixXd lhs = transition_op(n, a, sp) * transition_op(n, b, sp);
  const Eigen::MatrixXd rhs = transition_op(n, TransitionSymbol::product(a, b), sp);
  const int reach = a.band >= 0 ? a.band : cap / 2;
  double res = 0;
  for (int i : safe_rows(sp, reach))
    for (int j = 0; j < sp.size(); ++j) res = std::max(res, std::abs(lhs(i, j) - rhs(i, j)));
  return res;
}

double check_consistency(int n, const SpecFunction &omega, int cap) {
  if (n < 2) throw std::invalid_argument("check_consistency: n >= 2");
  const PlancherelTable tn(n, omega, cap + r_of(n)), tm(n - 1, omega, cap + r_of(n));
  const LevelSpace up = make_level_space(n, cap), lo = make_level_space(n - 1, cap / 2);
  std::vector<double> lhs(lo.size(), 0.0);
  for (const auto &la : up.members) {
    const double w = tn.mass(la) / dimension(la);
    for_each_predecessor(la, [&](const Partition &mu) {
      const int j = lo.find(mu);
      if (j >= 0) lhs[j] += w;
    });
  }
  double res = 0;
  for (int j = 0; j < lo.size(); ++j)
    res = std::max(res, std::abs(lhs[j] - tm.mass(lo.members[j]) / dimension(lo.members[j])));
  return res;
}

double path_measure(const SpecFunction &, const GTPath &path, const PlancherelTable &table) {
  const int n = static_cast<int>(path.size());
  if (n == 0 || table.level() != n) throw std::invalid_argument("path_measure: level mismatch");
  for (int k = 0; k + 1 < n; ++k)
    if (!interlaces(path[k], path[k + 1])) return 0.0;
  double m = table.mass(path.back());
  for (int k = 0; k + 1 < n; ++k) m *= dimension(path[k]) / dimension(path[k + 1]);
  return m;
}

BruteForce::BruteForce(int n, const SpecFunction &omega, int cap) : n_(n), cap_(cap) {
  offset_.resize(n);
  for (int m = 1; m <= n; ++m) {
    offset_[m - 1] = width_;
    width_ += r_of(m);
  }
  const PlancherelTable table(n, omega, cap + r_of(n));
  double raw = 0;
  std::vector<int> row(width_);
  std::function<void(const Partition &, double)> rec = [&](const Partition &p, double w) {
    const auto t = p.tilde();
    std::copy(t.begin(), t.end(), row.begin() + offset_[p.level - 1]);
    if (p.level == 1) {
      data_.insert(data_.end(), row.begin(), row.end());
      mass_.push_back(w);
      return;
    }
    for_each_predecessor(p, [&](const Partition &q) { rec(q, w); });
  };
  for_each_partition(n, cap, [&](const std::vector<int> &v) {
    const Partition top(n, v);
    const double pm = table.mass(top);
    raw += pm;
    rec(top, pm / dimension(top));
  });
  leakage_ = 1.0 - raw;
  for (double &m : mass_) m /= raw;
}

double BruteForce::min_mass() const { return mass_.empty() ? 0.0 : *std::min_element(mass_.begin(), mass_.end()); }

double BruteForce::correlation(const std::vector<Site> &points) const {
  for (const auto &p : points)
    if (p.level < 1 || p.level > n_) throw std::invalid_argument("correlation: level out of range");
  double acc = 0;
  const std::size_t P = mass_.size();
  for (std::size_t k = 0; k < P; ++k) {
    const int *row = data_.data() + k * width_;
    bool all = true;
    for (const auto &p : points) {
      const int *b = row + offset_[p.level - 1];
      const int r = r_of(p.level);
      bool hit = false;
      for (int i = 0; i < r; ++i)
        if (b[i] == p.s) hit = true;
      if (!hit) {
        all = false;
        break;
      }
    }
    if (all) acc += mass_[k];
  }
  return acc;
}

std::map<std::vector<int>, double> BruteForce::level_law(int level) const {
  std::map<std::vector<int>, double> law;
  const int r = r_of(level);
  for (std::size_t k = 0; k < mass_.size(); ++k) {
    const int *b = data_.data() + k * width_ + offset_[level - 1];
    law[std::vector<int>(b, b + r)] += mass_[k];
  }
  return law;
}

void BruteForce::for_each(const std::function<void(const std::vector<std::vector<int>> &, double)> &fn) const {
  std::vector<std::vector<int>> cfg(n_);
  for (std::size_t k = 0; k < mass_.size(); ++k) {
    for (int m = 1; m <= n_; ++m) {
      const int *b = data_.data() + k * width_ + offset_[m - 1];
      cfg[m - 1].assign(b, b + r_of(m));
    }
    fn(cfg, mass_[k]);
  }
}

EMKernel::EMKernel(int n, const SpecFunction &omega, int N) : n_(n), N_(N) {
  const int P = N + 1, rn = r_of(n);
  std::vector<Eigen::MatrixXd> W(n + 1);
  for (int m = 1; m < n; ++m) {
    W[m].resize(P, P);
    for (int s = 0; s < P; ++s)
      for (int t = 0; t < P; ++t) W[m](s, t) = phi_level(m, s, t);
  }
  // Wp[i][j] = W_i ... W_{j-1}
  std::vector<std::vector<Eigen::MatrixXd>> Wp(n + 1, std::vector<Eigen::MatrixXd>(n + 1));
  for (int i = 1; i <= n; ++i) {
    Wp[i][i] = Eigen::MatrixXd::Identity(P, P);
    for (int j = i + 1; j <= n; ++j) Wp[i][j] = Wp[i][j - 1] * W[j - 1];
  }
  const PlancherelTable tab(n, omega, N);
  Eigen::MatrixXd Psi(P, rn);
  for (int s = 0; s < P; ++s)
    for (int j = 0; j < rn; ++j) Psi(s, j) = tab.moment(rn - 1 - j, s);
  // rows R_j = sum_{k<=j} E_{k-1} W_{[k,j)}
  std::vector<Eigen::MatrixXd> R(n + 1);
  for (int j = 1; j <= n; ++j) {
    R[j] = Eigen::MatrixXd::Zero(rn, P);
    for (int k = 1; k <= j; k += 2) {
      Eigen::MatrixXd Ek = Eigen::MatrixXd::Zero(rn, P);
      Ek.row(r_of(k) - 1).setConstant(phi_level(k - 1, -1, 0));
      R[j] += Ek * Wp[k][j];
    }
  }
  const Eigen::MatrixXd M = R[n] * Psi;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  if (!lu.isInvertible()) throw std::runtime_error("EMKernel: singular M_n");
  K_.resize(n * P, n * P);
  for (int i = 1; i <= n; ++i) {
    const Eigen::MatrixXd left = Wp[i][n] * Psi;
    for (int j = 1; j <= n; ++j) {
      Eigen::MatrixXd blk = left * lu.solve(R[j]);
      if (i < j) blk -= Wp[i][j];
      K_.block((i - 1) * P, (j - 1) * P, P, P) = blk;
    }
  }
}

double EMKernel::operator()(const Site &a, const Site &b) const {
  if (a.s < 0 || a.s > N_ || b.s < 0 || b.s > N_ || a.level < 1 || a.level > n_ || b.level < 1 || b.level > n_)
    throw std::out_of_range("EMKernel: site outside truncation");
  const int P = N_ + 1;
  return K_((a.level - 1) * P + a.s, (b.level - 1) * P + b.s);
}

Eigen::MatrixXd EMKernel::dinv_block(int i, int j) const {
  const int P = N_ + 1;
  if (i > j) return Eigen::MatrixXd::Zero(P, P);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(P, P);
  for (int m = i; m < j; ++m) {
    Eigen::MatrixXd W(P, P);
    for (int s = 0; s < P; ++s)
      for (int t = 0; t < P; ++t) W(s, t) = phi_level(m, s, t);
    acc = acc * W;
  }
  return acc;
}

void write_brute_golden(std::ostream &os, const BruteForce &bf, double gamma, const std::vector<Site> &pair_sites,
                        int smax, std::uint64_t seed) {
  os << "#planchgrow v1 seed=" << seed << "\n";
  os << "kind,level1,pos1,level2,pos2,value,cap,gamma\n";
  os << std::setprecision(17);
  for (int m = 1; m <= bf.levels(); ++m)
    for (int s = 0; s <= smax; ++s)
      os << "rho1," << m << "," << s << ",,," << bf.correlation({{s, m}}) << "," << bf.cap() << "," << gamma << "\n";
  for (std::size_t a = 0; a < pair_sites.size(); ++a)
    for (std::size_t b = a + 1; b < pair_sites.size(); ++b)
      os << "rho2," << pair_sites[a].level << "," << pair_sites[a].s << "," << pair_sites[b].level << ","
         << pair_sites[b].s << "," << bf.correlation({pair_sites[a], pair_sites[b]}) << "," << bf.cap() << ","
         << gamma << "\n";
}

}  // namespace pg
