#include "planchgrow/growth.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <stdexcept>

#include "planchgrow/diffusion.hpp"
#include "planchgrow/parallel.hpp"

namespace pg {

WallMode parse_mode(const std::string &s) {
  if (s == "symplectic") return WallMode::Symplectic;
  if (s == "orthogonal") return WallMode::Orthogonal;
  throw std::invalid_argument("unknown wall mode '" + s + "' (expected symplectic|orthogonal)");
}

const char *mode_name(WallMode m) { return m == WallMode::Symplectic ? "symplectic" : "orthogonal"; }

PatternState PatternState::leftmost(int levels) {
  PatternState s;
  s.y.resize(levels);
  for (int n = 1; n <= levels; ++n)
    for (int i = 1; i <= r_of(n); ++i) s.y[n - 1].push_back(n - 2 * i + 1);
  return s;
}

namespace {

bool is_wall(int k, int i) { return k % 2 == 1 && i == r_of(k); }

// admissible range of y^k_i given level k-1
int lower_bound_of(const PatternState &s, int k, int i) {
  if (is_wall(k, i)) return 0;
  return s.y[k - 2][i - 1] + 1;
}

int upper_bound_of(const PatternState &s, int k, int i) {
  if (k == 1 || i == 1) return std::numeric_limits<int>::max();
  return s.y[k - 2][i - 2] - 1;
}

}  // namespace

bool PatternState::valid() const {
  for (int n = 1; n <= levels(); ++n) {
    if (static_cast<int>(y[n - 1].size()) != r_of(n)) return false;
    for (int i = 1; i <= r_of(n); ++i) {
      const int v = y[n - 1][i - 1];
      if (v < 0) return false;
      if (n >= 2 && (v < lower_bound_of(*this, n, i) || v > upper_bound_of(*this, n, i))) return false;
    }
  }
  return true;
}

PointConfig to_tilde(const PatternState &s) {
  if (!s.valid()) throw std::invalid_argument("to_tilde: invalid state");
  PointConfig c(s.levels());
  for (int m = 1; m <= s.levels(); ++m)
    for (int k = 1; k <= r_of(m); ++k) c[m - 1].push_back(s.y[m - 1][k - 1] - m + k - 1 + r_of(m));
  return c;
}

PatternState to_y(const PointConfig &c) {
  PatternState s;
  s.y.resize(c.size());
  for (int m = 1; m <= static_cast<int>(c.size()); ++m) {
    if (static_cast<int>(c[m - 1].size()) != r_of(m)) throw std::invalid_argument("to_y: wrong particle count");
    for (int k = 1; k <= r_of(m); ++k) s.y[m - 1].push_back(c[m - 1][k - 1] + m - k + 1 - r_of(m));
  }
  if (!s.valid()) throw std::invalid_argument("to_y: configuration violates interlacing");
  return s;
}

std::vector<Partition> to_partitions(const PatternState &s) {
  std::vector<Partition> path;
  for (int m = 1; m <= s.levels(); ++m) {
    std::vector<int> p;
    for (int k = 1; k <= r_of(m); ++k) p.push_back(s.y[m - 1][k - 1] - m + 2 * k - 1);
    path.emplace_back(m, p);
  }
  return path;
}

PatternState from_partitions(const std::vector<Partition> &path) {
  PatternState s;
  s.y.resize(path.size());
  for (int m = 1; m <= static_cast<int>(path.size()); ++m)
    for (int k = 1; k <= r_of(m); ++k) s.y[m - 1].push_back(path[m - 1][k - 1] + m - 2 * k + 1);
  if (!s.valid()) throw std::invalid_argument("from_partitions: not an interlaced path");
  return s;
}

EventStream::EventStream(int levels, double horizon, std::uint64_t seed) : horizon_(horizon), rng_(seed) {
  for (int n = 1; n <= levels; ++n)
    for (int i = 1; i <= r_of(n); ++i) owner_.emplace_back(n, i);
}

bool EventStream::next(Event &e) {
  if (owner_.empty()) return false;
  std::exponential_distribution<double> gap(static_cast<double>(owner_.size()));
  t_ += gap(rng_);
  if (t_ > horizon_) return false;
  const std::uint64_t pick = rng_();
  const std::uint64_t P = owner_.size();
  e.time = t_;
  e.level = owner_[(pick >> 1) % P].first;
  e.index = owner_[(pick >> 1) % P].second;
  e.dir = (pick & 1) ? 1 : -1;
  return true;
}

std::vector<Event> materialize(int levels, double horizon, std::uint64_t seed) {
  EventStream es(levels, horizon, seed);
  std::vector<Event> out;
  Event e;
  while (es.next(e)) out.push_back(e);
  return out;
}

bool step_event(PatternState &s, int level, int index, int dir, WallMode mode, const MoveCallback &cb) {
  int &y = s.y[level - 1][index - 1];
  const int lo = level == 1 ? 0 : lower_bound_of(s, level, index);
  const int hi = upper_bound_of(s, level, index);
  int target = y + dir;
  if (target < lo || target > hi) {
    if (mode == WallMode::Orthogonal && dir == -1 && is_wall(level, index) && y == 0 && 1 <= hi) {
      target = 1;
      dir = 1;
    } else {
      return false;
    }
  }
  if (cb) cb(level, index, y, target);
  y = target;
  // push cascade upward
  int k = level, i = index, v = target;
  while (k < s.levels()) {
    const int j = dir > 0 ? i : i + 1;
    if (j > r_of(k + 1)) break;
    int &w = s.y[k][j - 1];
    if (w != v) break;
    if (cb) cb(k + 1, j, w, w + dir);
    w += dir;
    v = w;
    i = j;
    ++k;
  }
  return true;
}

Trajectory simulate_event(int levels, double gamma, WallMode mode, std::uint64_t seed) {
  if (!(gamma >= 0)) throw std::invalid_argument("simulate_event: gamma must be >= 0");
  Trajectory tr;
  tr.events = materialize(levels, gamma, seed);
  tr.states.reserve(tr.events.size() + 1);
  PatternState s = PatternState::leftmost(levels);
  tr.states.push_back(s);
  for (const auto &e : tr.events) {
    step_event(s, e.level, e.index, e.dir, mode);
    tr.states.push_back(s);
  }
  return tr;
}

Trajectory simulate_skorokhod(int levels, const std::vector<Event> &events, WallMode mode) {
  const std::size_t J = events.size();
  // paths[k-1][i-1][j] on the event grid
  std::vector<std::vector<std::vector<double>>> paths(levels);
  for (int k = 1; k <= levels; ++k) {
    paths[k - 1].assign(r_of(k), std::vector<double>(J + 1));
    for (int i = 1; i <= r_of(k); ++i) {
      auto lower = [&](std::size_t j) -> double {
        if (is_wall(k, i)) return 0.0;
        return paths[k - 2][i - 1][j] + 1.0;
      };
      auto upper = [&](std::size_t j) -> double {
        if (k == 1 || i == 1) return kInf;
        return paths[k - 2][i - 2][j] - 1.0;
      };
      EspOnline esp;
      double psi = 0.0;
      auto &out = paths[k - 1][i - 1];
      out[0] = esp.start(psi, lower(0), upper(0));
      for (std::size_t j = 1; j <= J; ++j) {
        const Event &e = events[j - 1];
        if (e.level == k && e.index == i) {
          double inc = e.dir;
          if (mode == WallMode::Orthogonal && is_wall(k, i) && inc < 0 && out[j - 1] == 0.0) inc = 1.0;
          psi += inc;
        }
        out[j] = esp.step(psi, lower(j), upper(j));
      }
    }
  }
  Trajectory tr;
  tr.events = events;
  tr.states.resize(J + 1);
  for (std::size_t j = 0; j <= J; ++j) {
    PatternState &s = tr.states[j];
    s.y.resize(levels);
    for (int k = 1; k <= levels; ++k)
      for (int i = 1; i <= r_of(k); ++i) s.y[k - 1].push_back(static_cast<int>(std::lround(paths[k - 1][i - 1][j])));
  }
  return tr;
}

Trajectory simulate_skorokhod(int levels, double gamma, WallMode mode, std::uint64_t seed) {
  if (!(gamma >= 0)) throw std::invalid_argument("simulate_skorokhod: gamma must be >= 0");
  return simulate_skorokhod(levels, materialize(levels, gamma, seed), mode);
}

std::int64_t simulate_final(int levels, double gamma, WallMode mode, std::uint64_t seed, PatternState &out) {
  out = PatternState::leftmost(levels);
  EventStream es(levels, gamma, seed);
  Event e;
  std::int64_t count = 0;
  while (es.next(e)) {
    step_event(out, e.level, e.index, e.dir, mode);
    ++count;
  }
  return count;
}

void dump_events_jsonl(std::ostream &os, int levels, double gamma, WallMode mode, std::uint64_t seed) {
  os << "#planchgrow v1 seed=" << seed << " levels=" << levels << " gamma=" << gamma << " mode=" << mode_name(mode)
     << "\n";
  PatternState s = PatternState::leftmost(levels);
  EventStream es(levels, gamma, seed);
  Event e;
  while (es.next(e)) {
    step_event(s, e.level, e.index, e.dir, mode, [&](int level, int index, int old_y, int new_y) {
      nlohmann::json j = {{"time", e.time}, {"level", level}, {"index", index}, {"old", old_y}, {"new", new_y}};
      os << j.dump() << "\n";
    });
  }
}

void dump_state_csv(std::ostream &os, const PatternState &s, std::uint64_t seed) {
  os << "#planchgrow v1 seed=" << seed << "\n";
  os << "level,index,y,x_tilde\n";
  const PointConfig c = to_tilde(s);
  for (int m = 1; m <= s.levels(); ++m)
    for (int k = 1; k <= r_of(m); ++k) os << m << "," << k << "," << s.y[m - 1][k - 1] << "," << c[m - 1][k - 1] << "\n";
}

namespace {

bool contains_all(const PointConfig &c, const std::vector<Site> &q) {
  for (const auto &p : q) {
    if (p.level < 1 || p.level > static_cast<int>(c.size())) return false;
    const auto &row = c[p.level - 1];
    if (std::find(row.begin(), row.end(), p.s) == row.end()) return false;
  }
  return true;
}

}  // namespace

std::vector<Estimate> mc_correlation(int levels, double gamma, WallMode mode, const std::vector<std::vector<Site>> &queries,
                                     std::int64_t trials, std::uint64_t seed, int threads) {
  if (trials < 1) throw std::invalid_argument("mc_correlation: trials must be >= 1");
  threads = std::max(1, threads);
  std::vector<std::vector<std::int64_t>> hits(threads, std::vector<std::int64_t>(queries.size(), 0));
  parallel_for(trials, threads, [&](std::int64_t trial, int tid) {
    PatternState s;
    simulate_final(levels, gamma, mode, derive_seed(seed, static_cast<std::uint64_t>(trial)), s);
    const PointConfig c = to_tilde(s);
    for (std::size_t q = 0; q < queries.size(); ++q)
      if (contains_all(c, queries[q])) ++hits[tid][q];
  });
  std::vector<Estimate> out(queries.size());
  for (std::size_t q = 0; q < queries.size(); ++q) {
    std::int64_t h = 0;
    for (int t = 0; t < threads; ++t) h += hits[t][q];
    const double p = static_cast<double>(h) / trials;
    out[q] = {p, std::sqrt(std::max(p * (1 - p), 0.0) / trials), h, trials};
  }
  return out;
}

std::map<std::vector<int>, std::int64_t> mc_level_histogram(int levels, int level, double gamma, WallMode mode,
                                                            std::int64_t trials, std::uint64_t seed, int threads) {
  threads = std::max(1, threads);
  std::vector<std::map<std::vector<int>, std::int64_t>> part(threads);
  parallel_for(trials, threads, [&](std::int64_t trial, int tid) {
    PatternState s;
    simulate_final(levels, gamma, mode, derive_seed(seed, static_cast<std::uint64_t>(trial)), s);
    ++part[tid][to_partitions(s)[level - 1].parts];
  });
  std::map<std::vector<int>, std::int64_t> out;
  for (const auto &m : part)
    for (const auto &[k, v] : m) out[k] += v;
  return out;
}

}  // namespace pg
