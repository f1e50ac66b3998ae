#pragma once

#include "supgof/common.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace supgof {

struct Sample {
  std::vector<double> values;
};

// Newline-delimited decimal floats (one per line), UTF-8, '#' starts a
// comment, blank lines ignored.  Throws UsageError with a line number on
// malformed input.
Sample load_sample(const std::string& path);
Sample parse_sample(std::istream& in, const std::string& name);

// Evaluates the centered comparison statistic D_n(t1,t2) = H_n - G_n for one
// sample, by rank counts on the sorted data.
//
// For the exponential test every pair is classified by its stored double
// difference x_(j) - x_(i) (never by x_(i) + t2); the evaluator and the exact
// enumeration share that rule, which keeps boundary cases and exact scale
// equivariance consistent.
class StatEvaluator {
 public:
  StatEvaluator(Kind kind, std::vector<double> values);

  Kind kind() const { return kind_; }
  int n() const { return static_cast<int>(xs_.size()); }
  const std::vector<double>& sorted() const { return xs_; }

  double diff(double t1, double t2) const;

  // Supremum of |diff| over the parameter plane.
  //   exact: complete enumeration of achievable count configurations; errors
  //          for n above exact_cap(kind), pointing at grid mode.
  //   grid:  rank-quantile selection from data-derived candidate pools
  //          (m1 x m2 per GridSpec), then one 10x zoom around the incumbent.
  // The reported argmax re-evaluates to the reported value through diff().
  SupremumResult sup(SupMode mode, const GridSpec& spec = {}) const;

 private:
  double diff_pa(double t1, double t2) const;
  double diff_lo(double t1, double t2) const;
  double diff_ex(double t1, double t2) const;
  SupremumResult sup_exact_pa() const;
  SupremumResult sup_exact_lo() const;
  SupremumResult sup_exact_ex() const;
  SupremumResult sup_grid(const GridSpec& spec) const;
  std::vector<double> axis_pool(int axis) const;

  long long cnt_gt(double t) const;
  long long cnt_ge(double t) const;
  long long cnt_lt(double t) const;
  long long cnt_le(double t) const;

  Kind kind_;
  std::vector<double> xs_;  // ascending
};

// Direct evaluation from the definition (nested loops); n <= kBruteForceCap.
double brute_force_diff(Kind kind, const std::vector<double>& data, double t1,
                        double t2);

// Convenience wrapper used by the CLI and the Monte Carlo driver.
SupremumResult k_statistic(Kind kind, const Sample& sample, SupMode mode,
                           const GridSpec& spec = {});

}  // namespace supgof
