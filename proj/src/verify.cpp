#include "planchgrow/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include "json.hpp"

#include "planchgrow/asymptotics.hpp"
#include "planchgrow/diffusion.hpp"
#include "planchgrow/growth.hpp"
#include "planchgrow/kernel.hpp"
#include "planchgrow/orthopoly.hpp"
#include "planchgrow/parallel.hpp"
#include "planchgrow/repmeasures.hpp"

namespace pg {

bool CriterionResult::pass() const {
  for (const auto &c : checks)
    if (!c.reported && !c.pass) return false;
  return !checks.empty();
}

namespace {

using boost::math::quadrature::gauss_kronrod;

CheckResult at_most(std::string name, double value, double tol) {
  return {std::move(name), value, tol, true, value <= tol, false};
}

CheckResult at_least(std::string name, double value, double tol) {
  return {std::move(name), value, tol, false, value >= tol, false};
}

CheckResult report(std::string name, double value) { return {std::move(name), value, 0, true, true, true}; }

std::string fmt(const char *pattern, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

void c1(CriterionResult &r, const VerifyOptions &) {
  double ortho = 0;
  for (ChebKind kind : {ChebKind::Second, ChebKind::Third}) {
    const auto &rule = gauss_jacobi(kind, 200);
    std::vector<double> J(51);
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(51, 51);
    for (int i = 0; i < rule.order(); ++i) {
      eval_cheb_all(50, kind, rule.nodes[i], J.data());
      for (int k = 0; k <= 50; ++k)
        for (int l = 0; l <= 50; ++l) G(k, l) += rule.weights[i] * J[k] * J[l];
    }
    ortho = std::max(ortho, (G - Eigen::MatrixXd::Identity(51, 51)).cwiseAbs().maxCoeff());
  }
  r.checks.push_back(at_most("orthonormality k,l<=50", ortho, 1e-9));
  const IdentityReport id = verify_identities(50);
  r.checks.push_back(at_most("summation identities s<=50", std::max({std::abs(id.sum_third_to_second), std::abs(id.sum_second_to_third),
                                                                     std::abs(id.tail_third), std::abs(id.tail_second)}),
                             1e-9));
  r.checks.push_back(at_most("composition rule", std::abs(id.composition), 1e-9));
}

void c2(CriterionResult &r, const VerifyOptions &) {
  double worst = 0;
  for (int n = 1; n <= 6; ++n) {
    const LevelSpace space = make_level_space(n, 30);
    for (double g : {0.5, 1.0, 2.0}) {
      const PlancherelTable tab(n, SpecFunction::pure(g), 30 + r_of(n));
      double total = 0;
      for (const auto &p : space.members) total += tab.mass(p);
      worst = std::max(worst, std::abs(total - 1.0));
    }
  }
  r.checks.push_back(at_most("|sum P - 1|, n<=6, gamma<=2, parts<=30", worst, 1e-6));
}

void c3(CriterionResult &r, const VerifyOptions &) {
  double worst = 0;
  for (int n = 1; n <= 4; ++n) {
    worst = std::max(worst, check_intertwining(n, TransitionSymbol::exp_gamma(0.5), 20).residual);
    worst = std::max(worst, check_intertwining(n, TransitionSymbol::affine(0.8, 0.2), 20).residual);
  }
  r.checks.push_back(at_most("intertwining residual on safe rows, n<=4", worst, 1e-7));
}

void c4(CriterionResult &r, const VerifyOptions &) {
  const SpecFunction w = SpecFunction::pure(1.0);
  const Kernel K(w);
  const BruteForce bf(4, w, 12);
  double singles = 0, pairs = 0;
  for (int n = 1; n <= 4; ++n)
    for (int s = 0; s <= 10; ++s) {
      const std::vector<Site> q{{s, n}};
      singles = std::max(singles, std::abs(correlation_det(K, KernelChoice::Kernel, q).value - bf.correlation(q)));
    }
  const std::vector<Site> six = {{0, 1}, {1, 2}, {0, 3}, {2, 3}, {1, 4}, {3, 4}};
  for (std::size_t i = 0; i < six.size(); ++i)
    for (std::size_t j = i + 1; j < six.size(); ++j) {
      const std::vector<Site> q{six[i], six[j]};
      pairs = std::max(pairs, std::abs(correlation_det(K, KernelChoice::Kernel, q).value - bf.correlation(q)));
    }
  r.checks.push_back(at_most("singles s<=10, n<=4", singles, 1e-4));
  r.checks.push_back(at_most("pairs from the six-site set", pairs, 1e-4));
  r.checks.push_back(report("brute-force leakage at cap 12", bf.leakage()));
}

void c5(CriterionResult &r, const VerifyOptions &) {
  const SpecFunction w = SpecFunction::pure(1.0);
  const Kernel K(w);
  double vs_brute = 0, vs_kernel = 0;
  for (int n = 1; n <= 3; ++n) {
    const int M = 10, N = M + r_of(n) - 1;
    const EMKernel em(n, w, N);
    const BruteForce bf(n, w, M);
    std::vector<Site> sites;
    for (int m = 1; m <= n; ++m)
      for (int s = 0; s <= 5; ++s) sites.push_back({s, m});
    auto em_det = [&](const std::vector<Site> &q) {
      Eigen::MatrixXd a(q.size(), q.size());
      for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) a(i, j) = em(q[i], q[j]);
      return a.determinant();
    };
    auto both = [&](const std::vector<Site> &q) {
      const double e = em_det(q);
      vs_brute = std::max(vs_brute, std::abs(e - bf.correlation(q)));
      vs_kernel = std::max(vs_kernel, std::abs(e - correlation_det(K, KernelChoice::Kernel, q).value));
    };
    for (std::size_t i = 0; i < sites.size(); ++i) {
      both({sites[i]});
      for (std::size_t j = i + 1; j < sites.size(); ++j) both({sites[i], sites[j]});
    }
  }
  r.checks.push_back(at_most("finite kernel vs brute force, n<=3, cap 10", vs_brute, 1e-8));
  r.checks.push_back(at_most("finite kernel vs analytic kernel", vs_kernel, 1e-5));
}

void c6(CriterionResult &r, const VerifyOptions &o) {
  int mismatches = 0;
  for (int seed = 0; seed < 1000; ++seed) {
    const int levels = 1 + seed % 5;
    const double gamma = 3.0 * ((seed % 6) + 1) / 6.0;
    const WallMode mode = seed % 2 ? WallMode::Orthogonal : WallMode::Symplectic;
    const auto a = simulate_event(levels, gamma, mode, derive_seed(o.seed, seed));
    const auto b = simulate_skorokhod(levels, gamma, mode, derive_seed(o.seed, seed));
    mismatches += a.states != b.states;
  }
  r.checks.push_back(at_most("event vs Skorokhod path mismatches (1000 seeds)", mismatches, 0));

  const std::int64_t trials = o.quick ? 20000 : 100000;
  const Kernel K(SpecFunction::pure(2.0));
  std::vector<std::vector<Site>> q;
  for (int n = 1; n <= 3; ++n)
    for (int s = 0; s <= 3; ++s) q.push_back({{s, n}});
  const auto est = mc_correlation(3, 2.0, WallMode::Symplectic, q, trials, o.seed, o.threads);
  double worst = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double exact = correlation_det(K, KernelChoice::Kernel, q[i]).value;
    worst = std::max(worst, std::abs(est[i].value - exact) / std::max(est[i].se, 1e-12));
  }
  r.checks.push_back(at_most("max |rho1_mc - det K| / SE at gamma=2", worst, 3.0));
}

void c7(CriterionResult &r, const VerifyOptions &) {
  const Kernel K(SpecFunction::pure(0.0));
  double worst = 0;
  for (int n = 1; n <= 6; ++n)
    for (int s = 0; s <= 20; ++s) worst = std::max(worst, std::abs(K({s, n}, {s, n}) - (s < r_of(n) ? 1.0 : 0.0)));
  r.checks.push_back(at_most("K^0 diagonal vs leftmost indicator", worst, 1e-8));
}

void c8(CriterionResult &r, const VerifyOptions &) {
  double worst = 0;
  for (double g : {0.5, 1.0, 2.0}) {
    const Kernel K(SpecFunction::pure(g));
    for (int n = 1; n <= 6; ++n) {
      const int S = r_of(n) + static_cast<int>(8 * g) + 50;
      double sum = 0;
      for (int s = 0; s <= S; ++s) sum += K({s, n}, {s, n});
      worst = std::max(worst, std::abs(sum - r_of(n)));
    }
  }
  r.checks.push_back(at_most("|sum_s K(s,s) - r_n|, n<=6, gamma<=2", worst, 1e-6));
}

void c9(CriterionResult &r, const VerifyOptions &o) {
  const double tau = 1, eta = 0.5;
  const double nu = eta * (q_minus(tau / eta) + q_plus(tau / eta)) / 2;
  const PhasePoint p{tau, nu, eta};
  const int N = 100, n = 2 * static_cast<int>(std::lround(N * eta)), s = static_cast<int>(std::lround(N * nu));
  const std::vector<std::vector<Site>> q{{{s, n}}, {{s, n}, {s + 1, n}}, {{s, n}, {s, n - 1}}};
  const std::int64_t trials = o.quick ? 500 : 2000;
  const auto est = mc_correlation(n, N * tau, WallMode::Symplectic, q, trials, o.seed, o.threads);
  r.checks.push_back(report("nu (mid liquid)", nu));
  r.checks.push_back(report("arg(z0)/pi", bulk_density(p)));
  r.checks.push_back(report("MC density", est[0].value));
  r.checks.push_back(at_most("|MC density - arg(z0)/pi|", std::abs(est[0].value - bulk_density(p)), 0.05));
  r.checks.push_back(at_most("|MC pair - det B|, same level", std::abs(est[1].value - bulk_correlation(p, q[1])), 0.07));
  r.checks.push_back(report("|MC pair - det B|, adjacent levels", std::abs(est[2].value - bulk_correlation(p, q[2]))));
}

void c10(CriterionResult &r, const VerifyOptions &) {
  int disagree = 0, compared = 0, faults = 0;
  for (int i = 0; i < 100; ++i)
    for (int j = 0; j < 100; ++j) {
      const double ratio = 0.02 + 3.0 * i / 99, nu = 0.01 + 6.0 * j / 99;
      if (std::abs(nu - q_plus(ratio)) < 1e-6 || std::abs(nu - q_minus(ratio)) < 1e-6) continue;
      ++compared;
      try {
        const auto cp = classify_phase({ratio, nu, 1.0}, 1e-6);
        disagree += cp.region != cp.closed_form;
      } catch (const PhaseFault &) {
        ++faults;
      }
    }
  r.checks.push_back(at_most("label disagreements off the band", disagree + faults, 0));
  r.checks.push_back(report("grid points compared", compared));
  r.checks.push_back(at_most("|q_-(1/2)|", std::abs(q_minus(0.5)), 0.0));
  r.checks.push_back(at_most("|q_- radicand at 1/2|", std::abs(q_minus_radicand(0.5)), 0.0));
}

void c11(CriterionResult &r, const VerifyOptions &) {
  const double tau = 1, eta = 0.5, eps = 1 - eta / tau;
  int nonmonotone = 0;
  double last = 0;
  std::vector<double> errs(3, 0.0);
  const int Ns[3] = {50, 100, 200};
  std::vector<Kernel> kernels;
  for (int N : Ns) kernels.emplace_back(SpecFunction::pure(N * tau));
  for (int dm : {0, 1})
    for (int s = 0; s <= 4; ++s)
      for (int t = 0; t <= 4; ++t) {
        double prev = 1e300;
        for (int k = 0; k < 3; ++k) {
          const int n = 2 * static_cast<int>(std::lround(Ns[k] * eta));
          const Site a{s, n}, b{t, n - dm};
          const double err = std::abs(kernels[k](a, b) - jacobi_kernel(a, b, eps));
          errs[k] = std::max(errs[k], err);
          nonmonotone += !(err < prev);
          prev = err;
        }
        last = std::max(last, prev);
      }
  r.checks.push_back(at_most("site pairs with non-decreasing error over N=50,100,200", nonmonotone, 0));
  for (int k = 0; k < 3; ++k) r.checks.push_back(report("max error at N=" + std::to_string(Ns[k]), errs[k]));
  double delta = 0;
  for (int n : {3, 4})
    for (int s = 0; s <= 4; ++s)
      for (int t = 0; t <= 4; ++t) delta = std::max(delta, std::abs(jacobi_kernel({s, n}, {t, n}, -1.0) - (s == t)));
  r.checks.push_back(at_most("|L(eps=-1) - delta|", delta, 1e-12));
}

void c12(CriterionResult &r, const VerifyOptions &) {
  double indicator = 0, at_zero = 0, doubling = 0;
  const double pts[][2] = {{0.3, 0.4}, {0.7, 0.8}, {1.1, 1.5}, {0.5, 2.0}};
  for (const auto &a : pts)
    for (const auto &b : pts) {
      const PearceyValue v = pearcey_kernel(a[0], a[1], b[0], b[1]);
      if (a[1] <= b[1]) indicator = std::max(indicator, std::abs(v.indicator_term));
      doubling = std::max(doubling, v.doubling_diff);
      at_zero = std::max(at_zero, std::abs(pearcey_kernel(0.0, a[1], b[0], b[1]).value));
    }
  r.checks.push_back(at_most("indicator term for eta1 <= eta2", indicator, 0.0));
  r.checks.push_back(at_most("|K| at nu1 = 0", at_zero, 0.0));
  r.checks.push_back(at_most("truncation doubling difference", doubling, 1e-6));
}

double entrance_cdf_k2(double x) {
  if (x <= 0) return 0.0;
  return gauss_kronrod<double, 31>::integrate([](double u) { return entrance_law_density(2, 1.0, {u}); }, 0.0, x, 10, 1e-12);
}

void c13(CriterionResult &r, const VerifyOptions &o) {
  const int samples = o.quick ? 2000 : 10000;
  const double dt = 1e-4;
  std::vector<double> l1(samples), l2(samples), l3a(samples), l3b(samples), d3a(samples), d3b(samples);
  parallel_for(samples, o.threads, [&](std::int64_t i, int) {
    std::mt19937_64 rng(derive_seed(o.seed, 2 * i));
    const auto w = interlaced_final(3, 1.0, dt, rng);
    l1[i] = w[0][0];
    l2[i] = w[1][0];
    l3a[i] = w[2][0];
    l3b[i] = w[2][1];
    std::mt19937_64 rng2(derive_seed(o.seed, 2 * i + 1));
    DysonOptions opt;
    opt.dt = dt;
    const auto d = dyson_euler(3, 1.0, opt, rng2);
    d3a[i] = d[0];
    d3b[i] = d[1];
  });
  r.checks.push_back(at_least("level 1 vs |N(0,1)| KS p", ks_one_sample(l1, [](double x) { return x <= 0 ? 0.0 : 2 * heat_cdf(1.0, x) - 1; }).p, 0.01));
  r.checks.push_back(at_least("level 2 vs entrance law KS p", ks_one_sample(l2, entrance_cdf_k2).p, 0.01));

  using boost::math::quadrature::gauss_kronrod;
  const double t = 0.7;
  double dual = 0;
  {
    const std::vector<double> v{1.1}, vp{0.9}, up{0.4};
    const double I = gauss_kronrod<double, 61>::integrate([&](double u) { return two_level_density(1, t, v, {u}, vp, up); }, 0.0, v[0], 8, 1e-14);
    dual = std::max(dual, std::abs(I - p_killed(2, t, v, vp)));
  }
  {
    const std::vector<double> v{1.6, 0.5}, vp{1.2, 0.3}, up{0.8};
    const double I = gauss_kronrod<double, 61>::integrate([&](double u) { return two_level_density(2, t, v, {u}, vp, up); }, v[1], v[0], 8, 1e-14);
    dual = std::max(dual, std::abs(I - p_killed(3, t, v, vp)));
  }
  {
    const std::vector<double> v{1.9, 0.8}, vp{1.5, 0.6}, up{1.0, 0.2};
    const double I = gauss_kronrod<double, 31>::integrate(
        [&](double u1) {
          return gauss_kronrod<double, 31>::integrate([&](double u2) { return two_level_density(3, t, v, {u1, u2}, vp, up); }, 0.0, v[1], 6, 1e-13);
        },
        v[1], v[0], 6, 1e-13);
    dual = std::max(dual, std::abs(I - p_killed(4, t, v, vp)));
  }
  r.checks.push_back(at_most("duality |int q du - p|, k<=3", dual, 1e-6));
  r.checks.push_back(at_least("Dyson vs interlaced level 3, particle 1, KS p", ks_two_sample(d3a, l3a).p, 0.01));
  r.checks.push_back(at_least("Dyson vs interlaced level 3, particle 2, KS p", ks_two_sample(d3b, l3b).p, 0.01));
}

// counts over runs: strictly increasing infima and positive least-squares trend (c = 0.6), falling trend (c = 0.4)
struct TrendCount {
  int strict6 = 0, up6 = 0, down4 = 0, runs = 0;
};

TrendCount gap_trend(int level, int i, double h, int runs, std::uint64_t seed, bool matrix, int threads) {
  const int windows = 6;
  const auto grid = geometric_grid(1.0, std::pow(h, windows) * 1e-2, 100);
  TrendCount out;
  out.runs = runs;
  std::vector<int> strict(runs), up(runs), down(runs);
  parallel_for(runs, threads, [&](std::int64_t r, int) {
    const std::uint64_t s = derive_seed(seed, r);
    const ReflectedSystem sys = matrix ? matrix_dyson_path(level + 1, grid, s) : build_interlaced(level + 1, grid, s);
    const std::vector<double> g6 = gap_statistic(sys, level, i, 0.6, h, windows);
    strict[r] = std::is_sorted(g6.begin(), g6.end(), std::less_equal<double>());
    up[r] = trend_slope(g6) > 0;
    down[r] = trend_slope(gap_statistic(sys, level, i, 0.4, h, windows)) < 0;
  });
  for (int k = 0; k < runs; ++k) {
    out.strict6 += strict[k];
    out.up6 += up[k];
    out.down4 += down[k];
  }
  return out;
}

void c14(CriterionResult &r, const VerifyOptions &o) {
  const int runs = 200;
  const TrendCount dy = gap_trend(2, 2, 0.5, runs, o.seed, false, o.threads);
  r.checks.push_back(at_least("c=0.6 infima increasing over 6 dyadic windows, level 2 i=2", double(dy.strict6) / runs, 0.95));
  r.checks.push_back(report("c=0.6 rising trend fraction, dyadic windows", double(dy.up6) / runs));
  r.checks.push_back(report("c=0.4 falling trend fraction, dyadic windows", double(dy.down4) / runs));
  for (int j : {4, 8}) {
    const TrendCount c = gap_trend(2, 2, std::pow(2.0, -j), runs, o.seed + j, false, o.threads);
    r.checks.push_back(report(fmt("c=0.6 increasing fraction, window ratio 2^-%.0f", j), double(c.strict6) / runs));
    r.checks.push_back(report(fmt("c=0.6 rising trend fraction, window ratio 2^-%.0f", j), double(c.up6) / runs));
    r.checks.push_back(report(fmt("c=0.4 falling trend fraction, window ratio 2^-%.0f", j), double(c.down4) / runs));
  }
  const TrendCount l3 = gap_trend(3, 2, std::pow(2.0, -8), runs, o.seed + 20, false, o.threads);
  r.checks.push_back(report("c=0.6 rising trend fraction, level 3 i=2, window ratio 2^-8", double(l3.up6) / runs));
  const TrendCount mat = gap_trend(2, 2, 0.5, runs, o.seed + 30, true, o.threads);
  r.checks.push_back(report("c=0.6 increasing fraction on matrix eigenvalue paths, dyadic windows", double(mat.strict6) / runs));
}

struct CriterionDef {
  const char *title;
  double limit;
  void (*fn)(CriterionResult &, const VerifyOptions &);
};

const CriterionDef kCriterionDefs[kCriteria] = {
    {"orthonormality and identities", 10, c1},
    {"Plancherel normalization", 60, c2},
    {"intertwining", 60, c3},
    {"kernel vs brute force", 600, c4},
    {"finite L-ensemble oracle", 300, c5},
    {"simulator consistency", 900, c6},
    {"gamma = 0 degeneracy", 0, c7},
    {"particle-count sum rule", 0, c8},
    {"bulk limit at N = 100", 1800, c9},
    {"phase curves", 0, c10},
    {"wall-edge limit", 0, c11},
    {"Pearcey properties", 300, c12},
    {"diffusion laws", 0, c13},
    {"gap path property", 0, c14},
};

}  // namespace

CriterionResult run_criterion(int id, const VerifyOptions &opts) {
  if (id < 1 || id > kCriteria) throw std::invalid_argument("run_criterion: id out of range");
  const CriterionDef &s = kCriterionDefs[id - 1];
  CriterionResult r;
  r.id = id;
  r.title = s.title;
  r.time_limit = s.limit;
  const auto t0 = std::chrono::steady_clock::now();
  s.fn(r, opts);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s.limit > 0) r.checks.push_back(at_most("runtime seconds", r.seconds, s.limit));
  return r;
}

std::vector<int> suite_criteria(const std::string &suite) {
  if (suite == "orthopoly") return {1};
  if (suite == "measures") return {2, 3, 5};
  if (suite == "kernel") return {4, 6, 7, 8};
  if (suite == "asymptotics") return {9, 10, 11, 12};
  if (suite == "diffusion") return {13, 14};
  if (suite == "all") {
    std::vector<int> v(kCriteria);
    for (int i = 0; i < kCriteria; ++i) v[i] = i + 1;
    return v;
  }
  throw std::invalid_argument("unknown suite: " + suite);
}

void write_report_json(std::ostream &os, const std::string &suite, const std::vector<CriterionResult> &results) {
  nlohmann::json j;
  j["suite"] = suite;
  bool all = true;
  for (const auto &r : results) {
    nlohmann::json c;
    c["id"] = r.id;
    c["title"] = r.title;
    c["seconds"] = r.seconds;
    c["pass"] = r.pass();
    all = all && r.pass();
    for (const auto &k : r.checks) {
      nlohmann::json e{{"check", k.check}, {"value", k.value}, {"pass", k.pass}};
      if (k.reported) e["reported"] = true;
      else e["tolerance"] = k.tolerance;
      c["checks"].push_back(e);
    }
    j["criteria"].push_back(c);
  }
  j["pass"] = all;
  os << j.dump(2) << "\n";
}

}  // namespace pg
