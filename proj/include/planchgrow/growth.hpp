#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "planchgrow/repmeasures.hpp"

namespace pg {

enum class WallMode { Symplectic, Orthogonal };

WallMode parse_mode(const std::string &s);  // throws std::invalid_argument
const char *mode_name(WallMode m);

// y[n-1][i-1] = y^n_i in the wall coordinates
struct PatternState {
  std::vector<std::vector<int>> y;

  static PatternState leftmost(int levels);
  int levels() const { return static_cast<int>(y.size()); }
  bool valid() const;
  bool operator==(const PatternState &o) const { return y == o.y; }
};

// per level, the shifted positions x~ (decreasing)
using PointConfig = std::vector<std::vector<int>>;

PointConfig to_tilde(const PatternState &s);
PatternState to_y(const PointConfig &c);
std::vector<Partition> to_partitions(const PatternState &s);
PatternState from_partitions(const std::vector<Partition> &path);

struct Event {
  double time = 0;
  int level = 1;
  int index = 1;
  int dir = 1;  // +1 right, -1 left
};

// Superposition of independent rate-1/2 left and right clocks for every particle.
class EventStream {
 public:
  EventStream(int levels, double horizon, std::uint64_t seed);
  bool next(Event &e);  // false once past the horizon
  int particles() const { return static_cast<int>(owner_.size()); }

 private:
  double horizon_, t_ = 0;
  std::mt19937_64 rng_;
  std::vector<std::pair<int, int>> owner_;
};

std::vector<Event> materialize(int levels, double horizon, std::uint64_t seed);

using MoveCallback = std::function<void(int level, int index, int old_y, int new_y)>;

// one clock ring; returns true if anything moved
bool step_event(PatternState &s, int level, int index, int dir, WallMode mode, const MoveCallback &cb = nullptr);

struct Trajectory {
  std::vector<Event> events;
  std::vector<PatternState> states;  // states[0] initial, states[j] after events[j-1]
  const PatternState &final_state() const { return states.back(); }
};

Trajectory simulate_event(int levels, double gamma, WallMode mode, std::uint64_t seed);
Trajectory simulate_skorokhod(int levels, double gamma, WallMode mode, std::uint64_t seed);
Trajectory simulate_skorokhod(int levels, const std::vector<Event> &events, WallMode mode);

// final state only, streaming events; returns number of clock rings
std::int64_t simulate_final(int levels, double gamma, WallMode mode, std::uint64_t seed, PatternState &out);

// JSON lines {time, level, index, old, new}
void dump_events_jsonl(std::ostream &os, int levels, double gamma, WallMode mode, std::uint64_t seed);
void dump_state_csv(std::ostream &os, const PatternState &s, std::uint64_t seed);

struct Estimate {
  double value = 0;
  double se = 0;
  std::int64_t hits = 0;
  std::int64_t trials = 0;
};

// each query is a site set (x~ coordinates); estimates P(config contains all sites)
std::vector<Estimate> mc_correlation(int levels, double gamma, WallMode mode, const std::vector<std::vector<Site>> &queries,
                                     std::int64_t trials, std::uint64_t seed, int threads = 1);

// counts of level-n partitions at time gamma
std::map<std::vector<int>, std::int64_t> mc_level_histogram(int levels, int level, double gamma, WallMode mode,
                                                            std::int64_t trials, std::uint64_t seed, int threads = 1);

}  // namespace pg
