#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "planchgrow/orthopoly.hpp"
#include "planchgrow/specfunction.hpp"

namespace pg {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct Partition {
  int level = 1;
  std::vector<int> parts;  // exactly r_level entries, zero padded

  Partition() = default;
  Partition(int n, std::vector<int> p);  // pads/validates, throws std::invalid_argument
  static Partition empty(int n) { return Partition(n, {}); }
  static Partition from_tilde(int n, const std::vector<int> &tilde);

  int rank() const { return static_cast<int>(parts.size()); }
  int operator[](int i) const { return parts[i]; }  // 0-based
  std::vector<int> tilde() const;                   // parts[i] + r_n - 1 - i
  bool operator==(const Partition &o) const { return level == o.level && parts == o.parts; }
  bool operator<(const Partition &o) const { return parts < o.parts; }
};

std::ostream &operator<<(std::ostream &os, const Partition &p);

// lambda at level n, mu at level n+1
bool interlaces(const Partition &lambda, const Partition &mu);
Rational det_form(const Partition &lambda, const Partition &mu);

BigInt dimension_exact(const Partition &lambda);
double dimension(const Partition &lambda);
// number of interlaced paths u^1 < ... < u^n = lambda
BigInt count_paths(const Partition &lambda);

// <J_{k,alpha_n}, (x-1)^i E>_{alpha_n} for i < r_n, k <= kmax
class PlancherelTable {
 public:
  PlancherelTable(int n, const SpecFunction &omega, int kmax, int order = 400);
  int level() const { return n_; }
  double moment(int i, int k) const { return g_(i, k); }
  double mass(const Partition &lambda) const;  // P_n(lambda)
  int kmax() const { return static_cast<int>(g_.cols()) - 1; }

 private:
  int n_;
  Eigen::MatrixXd g_;
};

double plancherel_mass(int n, const SpecFunction &omega, const Partition &lambda, const QuadratureRule &rule);

// all partitions at level n with parts <= cap, lexicographically sorted
struct LevelSpace {
  int level = 1;
  int cap = 0;
  std::vector<Partition> members;
  std::map<std::vector<int>, int> index;
  int size() const { return static_cast<int>(members.size()); }
  int find(const Partition &p) const;  // -1 if absent
};

LevelSpace make_level_space(int n, int cap);

// multiplier psi for transition operators
struct TransitionSymbol {
  std::function<double(double)> f;
  double at_one = 1.0;
  int band = -1;            // max |mu~ - lambda~| reach; -1 when not banded
  bool linear = false;      // psi = p0 + p1 x, closed entry formula
  double p0 = 0, p1 = 0;

  static TransitionSymbol constant(double c);
  static TransitionSymbol affine(double p0, double p1);
  // polynomial in (x-1): sum c_j (x-1)^j
  static TransitionSymbol shifted_polynomial(std::vector<double> c);
  static TransitionSymbol exp_gamma(double gamma);                   // exact e^{gamma(x-1)}
  static TransitionSymbol exp_gamma_series(double gamma, int degree);  // Taylor truncation
  static TransitionSymbol product(const TransitionSymbol &a, const TransitionSymbol &b);
};

// <J_a, J_b psi>_alpha for a, b <= kmax
Eigen::MatrixXd symbol_matrix(const TransitionSymbol &psi, ChebKind kind, int kmax, int order = 400);

Eigen::MatrixXd transition_op(int n, const TransitionSymbol &psi, const LevelSpace &space);
// rows: level n+1 members, columns: level n members
std::vector<std::vector<Rational>> cotransition_exact(const LevelSpace &upper, const LevelSpace &lower);
Eigen::MatrixXd cotransition_op(const LevelSpace &upper, const LevelSpace &lower);

// rows of level-n+1 states whose one-step reach stays below the cap
std::vector<int> safe_rows(const LevelSpace &space, int reach);

struct IntertwiningReport {
  double residual = 0;
  int safe_entries = 0;
};
IntertwiningReport check_intertwining(int n, const TransitionSymbol &psi, int cap);
double check_semigroup(int n, const TransitionSymbol &a, const TransitionSymbol &b, int cap);
// max |sum_{lambda > mu} P_n/dim_n - P_{n-1}(mu)/dim_{n-1}| over mu with parts <= cap - 1
double check_consistency(int n, const SpecFunction &omega, int cap);

struct Site {
  int s = 0;
  int level = 1;
  bool operator==(const Site &o) const { return s == o.s && level == o.level; }
  bool operator<(const Site &o) const { return level != o.level ? level < o.level : s < o.s; }
};

using GTPath = std::vector<Partition>;  // u^1..u^n
double path_measure(const SpecFunction &omega, const GTPath &path, const PlancherelTable &table);

// Exhaustive enumeration of GT paths with parts <= cap. Masses are normalized over the
// truncated set; leakage() reports the missing raw mass.
class BruteForce {
 public:
  BruteForce(int n, const SpecFunction &omega, int cap);
  int levels() const { return n_; }
  int cap() const { return cap_; }
  std::size_t path_count() const { return mass_.size(); }
  double leakage() const { return leakage_; }
  double raw_total() const { return 1.0 - leakage_; }
  double min_mass() const;
  double correlation(const std::vector<Site> &points) const;
  // marginal law of level n in the truncated space
  std::map<std::vector<int>, double> level_law(int level) const;
  // visit every path: (x~ per level, normalized mass)
  void for_each(const std::function<void(const std::vector<std::vector<int>> &, double)> &fn) const;

 private:
  int n_, cap_;
  std::vector<int> offset_;  // level m tilde entries at offset_[m-1]
  int width_ = 0;
  std::vector<int> data_;
  std::vector<double> mass_;
  double leakage_ = 0;
};

// Finite L-ensemble kernel on positions {0..N} x levels {1..n}; entry (s,i),(t,j)
class EMKernel {
 public:
  EMKernel(int n, const SpecFunction &omega, int N);
  double operator()(const Site &a, const Site &b) const;
  int positions() const { return N_ + 1; }
  int levels() const { return n_; }
  // D^{-1} block (i,j)
  Eigen::MatrixXd dinv_block(int i, int j) const;

 private:
  int n_, N_;
  Eigen::MatrixXd K_;
};

// CSV: #planchgrow v1 header, then kind,level1,pos1,level2,pos2,value,cap,gamma
void write_brute_golden(std::ostream &os, const BruteForce &bf, double gamma, const std::vector<Site> &pair_sites,
                        int smax, std::uint64_t seed = 0);

}  // namespace pg
