// planchgrow command line: simulate, verify, phase, kernel, brute
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "planchgrow/asymptotics.hpp"
#include "planchgrow/growth.hpp"
#include "planchgrow/kernel.hpp"
#include "planchgrow/parallel.hpp"
#include "planchgrow/repmeasures.hpp"
#include "planchgrow/verify.hpp"

using namespace pg;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kFault = 2 };

struct RunConfig {
  std::uint64_t seed = 12345;
  int threads = default_threads();
  std::string out;  // empty: stdout where a single stream is written

  // simulate / brute
  int levels = 3;
  double gamma = 1;
  std::string mode = "symplectic";
  std::int64_t trials = 1;
  int smax = 8;
  int cap = 12;

  // kernel
  int nmax = 3;
  std::string sites;
  std::string choice = "kernel";
  std::string method = "auto";
  int order = 200;
  std::string contour = "ellipse";
  double contour_a = 1.5, contour_b = 0.75, radius = 0.5;
  int contour_nodes = 512;
  double imag_tol = 1e-10;

  // phase
  RasterSpec raster;
  bool boundaries = false;

  // verify
  std::string suite;
  bool quick = false;
};

std::ofstream open_out(const std::string &path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write " + path);
  return f;
}

// runs fn on the --out file, or on stdout
template <class Fn>
void with_output(const std::string &path, Fn fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream f = open_out(path);
  fn(f);
  if (!f) throw std::invalid_argument("write failed: " + path);
}

std::vector<Site> parse_sites(const std::string &text) {
  std::vector<Site> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("site '" + item + "' is not s:n");
    std::size_t used_s = 0, used_n = 0;
    Site s;
    try {
      s.s = std::stoi(item.substr(0, colon), &used_s);
      s.level = std::stoi(item.substr(colon + 1), &used_n);
    } catch (const std::logic_error &) {
      throw std::invalid_argument("site '" + item + "' is not s:n");
    }
    if (used_s != colon || used_n != item.size() - colon - 1 || s.s < 0 || s.level < 1)
      throw std::invalid_argument("site '" + item + "' is not s:n with s >= 0, n >= 1");
    out.push_back(s);
  }
  if (out.empty()) throw std::invalid_argument("empty site list");
  return out;
}

int cmd_simulate(const RunConfig &c) {
  if (c.levels < 1) throw std::invalid_argument("levels must be >= 1");
  if (c.gamma < 0) throw std::invalid_argument("gamma must be >= 0");
  if (c.trials < 1) throw std::invalid_argument("trials must be >= 1");
  const WallMode mode = parse_mode(c.mode);
  const std::string prefix = c.out.empty() ? "planchgrow" : c.out;

  if (c.trials == 1) {
    {
      std::ofstream f = open_out(prefix + ".events.jsonl");
      dump_events_jsonl(f, c.levels, c.gamma, mode, c.seed);
    }
    PatternState s;
    const std::int64_t rings = simulate_final(c.levels, c.gamma, mode, c.seed, s);
    {
      std::ofstream f = open_out(prefix + ".state.csv");
      dump_state_csv(f, s, c.seed);
    }
    std::cout << "#planchgrow v1 seed=" << c.seed << "\n";
    std::cout << "events " << rings << "\n";
    const PointConfig x = to_tilde(s);
    for (int n = 1; n <= c.levels; ++n) {
      std::cout << "level " << n << ":";
      for (int v : x[n - 1]) std::cout << " " << v;
      std::cout << "\n";
    }
    return kOk;
  }

  // mean occupation per site, with the kernel diagonal next to it in the symplectic case
  std::vector<std::vector<Site>> queries;
  for (int n = 1; n <= c.levels; ++n)
    for (int s = 0; s <= c.smax; ++s) queries.push_back({{s, n}});
  const auto est = mc_correlation(c.levels, c.gamma, mode, queries, c.trials, c.seed, c.threads);
  const bool with_kernel = mode == WallMode::Symplectic;
  std::unique_ptr<Kernel> k;
  if (with_kernel) k = std::make_unique<Kernel>(SpecFunction::pure(c.gamma));
  with_output(prefix + ".occupation.csv", [&](std::ostream &os) {
    os << "#planchgrow v1 seed=" << c.seed << " levels=" << c.levels << " gamma=" << c.gamma
       << " mode=" << mode_name(mode) << " trials=" << c.trials << "\n";
    os << "level,s,mean,se" << (with_kernel ? ",kernel" : "") << "\n";
    os.precision(10);
    for (std::size_t q = 0; q < queries.size(); ++q) {
      const Site &st = queries[q][0];
      os << st.level << "," << st.s << "," << est[q].value << "," << est[q].se;
      if (with_kernel) os << "," << (*k)(st, st);
      os << "\n";
    }
  });
  std::cout << "#planchgrow v1 seed=" << c.seed << "\n";
  std::cout << "trials " << c.trials << ", occupation table " << prefix << ".occupation.csv\n";
  return kOk;
}

int cmd_verify(const RunConfig &c) {
  const std::vector<int> ids = suite_criteria(c.suite);
  VerifyOptions o;
  o.quick = c.quick;
  o.threads = c.threads;
  o.seed = c.seed;
  std::vector<CriterionResult> results;
  bool pass = true;
  for (int id : ids) {
    results.push_back(run_criterion(id, o));
    pass = pass && results.back().pass();
    std::cerr << "criterion " << id << (results.back().pass() ? " pass" : " FAIL") << "\n";
  }
  with_output(c.out, [&](std::ostream &os) { write_report_json(os, c.suite, results); });
  return pass ? kOk : kInvalid;
}

int cmd_phase(const RunConfig &c) {
  const RasterSpec &r = c.raster;
  if (!(r.tau > 0)) throw std::invalid_argument("tau must be > 0");
  if (r.nu_points < 0 || r.eta_points < 0) throw std::invalid_argument("grid sizes must be >= 0");
  if (!(r.nu_min > 0) || !(r.eta_min > 0) || r.nu_max < r.nu_min || r.eta_max < r.eta_min)
    throw std::invalid_argument("grid ranges must be positive and ordered");
  with_output(c.out, [&](std::ostream &os) {
    if (c.boundaries) write_phase_boundaries(os, r.tau, r.eta_min, r.eta_max, r.eta_points, c.seed);
    else write_phase_raster(os, r, c.threads, c.seed);
  });
  return kOk;
}

KernelOptions kernel_options(const RunConfig &c) {
  KernelOptions o;
  if (c.method == "auto") o.method = KernelMethod::Auto;
  else if (c.method == "contour") o.method = KernelMethod::Contour;
  else if (c.method == "residue") o.method = KernelMethod::Residue;
  else throw std::invalid_argument("unknown method " + c.method);
  if (c.order < 2) throw std::invalid_argument("order must be >= 2");
  o.order = c.order;
  if (!(c.imag_tol > 0)) throw std::invalid_argument("imag-tol must be > 0");
  o.imag_tol = c.imag_tol;
  if (c.contour_nodes < 8) throw std::invalid_argument("contour-nodes must be >= 8");
  if (c.contour == "ellipse") o.contour = Contour::ellipse(c.contour_a, c.contour_b, c.contour_nodes);
  else if (c.contour == "circle") o.contour = Contour::circle(c.radius, c.contour_nodes);
  else throw std::invalid_argument("unknown contour " + c.contour);
  return o;
}

int cmd_kernel(const RunConfig &c) {
  if (c.gamma < 0) throw std::invalid_argument("gamma must be >= 0");
  KernelChoice choice;
  if (c.choice == "kernel") choice = KernelChoice::Kernel;
  else if (c.choice == "complementary") choice = KernelChoice::Complementary;
  else if (c.choice == "series") choice = KernelChoice::Series;
  else throw std::invalid_argument("unknown choice " + c.choice);
  const Kernel k(SpecFunction::pure(c.gamma), kernel_options(c));

  if (!c.sites.empty()) {
    const std::vector<Site> sites = parse_sites(c.sites);
    const Correlation corr = correlation_det(k, choice, sites);
    with_output(c.out, [&](std::ostream &os) {
      os << "#planchgrow v1 seed=" << c.seed << " gamma=" << c.gamma << "\n";
      os << "sites,determinant,in_range\n";
      os.precision(15);
      os << '"' << c.sites << '"' << "," << corr.value << "," << (corr.in_range ? 1 : 0) << "\n";
    });
    return kOk;
  }
  if (c.smax < 0 || c.nmax < 1) throw std::invalid_argument("need smax >= 0 and nmax >= 1");
  std::vector<Site> sites;
  for (int n = 1; n <= c.nmax; ++n)
    for (int s = 0; s <= c.smax; ++s) sites.push_back({s, n});
  with_output(c.out, [&](std::ostream &os) { write_kernel_csv(os, k, choice, sites, c.seed); });
  return kOk;
}

int cmd_brute(const RunConfig &c) {
  if (c.levels < 1 || c.cap < 1 || c.smax < 0) throw std::invalid_argument("need levels, cap >= 1 and smax >= 0");
  if (c.gamma < 0) throw std::invalid_argument("gamma must be >= 0");
  const BruteForce bf(c.levels, SpecFunction::pure(c.gamma), c.cap);
  const std::vector<Site> pairs = c.sites.empty() ? std::vector<Site>{{0, 1}, {1, 1}, {0, 2}, {2, 2}, {1, 3}, {3, 4}}
                                                  : parse_sites(c.sites);
  with_output(c.out, [&](std::ostream &os) { write_brute_golden(os, bf, c.gamma, pairs, c.smax, c.seed); });
  return kOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"planchgrow: symplectic Plancherel growth, kernels, phase diagram and diffusion limits"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value file; keys are long option names");
  RunConfig c;

  app.add_option("--seed", c.seed, "random seed (falls back to PLANCHGROW_SEED)")->envname("PLANCHGROW_SEED");
  app.add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("-o,--out", c.out, "output path (simulate: file prefix)");
  app.add_option("--levels", c.levels, "number of levels");
  app.add_option("--gamma", c.gamma, "time parameter");
  app.add_option("--mode", c.mode, "symplectic | orthogonal");
  app.add_option("--trials", c.trials, "Monte Carlo trials");
  app.add_option("--smax", c.smax, "largest position in tables");
  app.add_option("--cap", c.cap, "part cap for brute-force enumeration");
  app.add_option("--nmax", c.nmax, "largest level in the kernel table");
  app.add_option("--sites", c.sites, "site list s:n,s:n,...");
  app.add_option("--choice", c.choice, "kernel | complementary | series");
  app.add_option("--method", c.method, "auto | contour | residue");
  app.add_option("--order", c.order, "Gauss-Jacobi order");
  app.add_option("--contour", c.contour, "ellipse | circle");
  app.add_option("--contour-a", c.contour_a, "ellipse semi-axis along the real line");
  app.add_option("--contour-b", c.contour_b, "ellipse semi-axis along the imaginary line");
  app.add_option("--radius", c.radius, "circle radius about u = 1");
  app.add_option("--contour-nodes", c.contour_nodes, "trapezoid nodes on the contour");
  app.add_option("--imag-tol", c.imag_tol, "relative bound on the discarded imaginary part");
  app.add_option("--tau", c.raster.tau, "phase diagram tau");
  app.add_option("--nu-min", c.raster.nu_min);
  app.add_option("--nu-max", c.raster.nu_max);
  app.add_option("--eta-min", c.raster.eta_min);
  app.add_option("--eta-max", c.raster.eta_max);
  app.add_option("--nu-points", c.raster.nu_points);
  app.add_option("--eta-points", c.raster.eta_points);
  app.add_flag("--boundaries", c.boundaries, "write the two phase curves instead of the raster");
  app.add_flag("--quick", c.quick, "fewer Monte Carlo trials in verify");

  auto *simulate = app.add_subcommand("simulate", "run the growth process; events JSONL, final state CSV");
  auto *verify = app.add_subcommand("verify", "run acceptance checks; JSON report");
  verify->add_option("suite", c.suite, "orthopoly | measures | kernel | asymptotics | diffusion | all")->required();
  auto *phase = app.add_subcommand("phase", "frozen/liquid/empty raster or phase curves");
  auto *kernel = app.add_subcommand("kernel", "kernel table, or a correlation determinant with --sites");
  auto *brute = app.add_subcommand("brute", "brute-force correlation table");
  for (auto *sub : {simulate, verify, phase, kernel, brute}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? kOk : kInvalid;
  }

  try {
    if (*simulate) return cmd_simulate(c);
    if (*verify) return cmd_verify(c);
    if (*phase) return cmd_phase(c);
    if (*kernel) return cmd_kernel(c);
    if (*brute) return cmd_brute(c);
  } catch (const PhaseFault &e) {
    std::cerr << "numerical fault: " << e.what() << "\n";
    return kFault;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception &e) {
    std::cerr << "numerical fault: " << e.what() << "\n";
    return kFault;
  }
  return kInvalid;
}
