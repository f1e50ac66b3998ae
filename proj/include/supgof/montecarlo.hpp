#pragma once

#include "supgof/common.hpp"

#include <string>
#include <vector>

namespace supgof {

// Throws UsageError unless reps >= 100, 0 < alpha < 1, n >= kernel degree,
// and (in exact mode) n <= exact_cap(kind).
void validate_plan(const SimPlan& plan);

// Ascending table of the null statistic, one entry per replication.
// Replication r draws its sample from a stream derived from (seed, kind, r),
// so the table does not depend on `threads` or evaluation order.  A non-empty
// cache_dir enables a JSON disk cache keyed by (kind, n, reps, seed, mode);
// the cached table round-trips bit for bit.
std::vector<double> null_table(const SimPlan& plan, int threads = 1,
                               const std::string& cache_dir = "");

// Empirical (1-alpha) quantile of an ascending table: the k-th smallest
// entry with k = ceil((1-alpha) * size).  alpha = 0.5 gives the median.
double table_quantile(const std::vector<double>& ascending, double alpha);

// The test rejects when the observed statistic exceeds this value (strictly).
double critical_value(const SimPlan& plan, int threads = 1,
                      const std::string& cache_dir = "");

// Add-one estimator (1 + #{K_r >= observed}) / (reps + 1); never zero, and
// exactly 1 when observed is 0 (the statistic is nonnegative).
double p_value_from_table(const std::vector<double>& ascending,
                          double observed);
double p_value(Kind kind, const std::vector<double>& data, int reps,
               std::uint64_t seed, SupMode mode = SupMode::exact,
               int threads = 1, const std::string& cache_dir = "");

// Rejection frequency at theta against the plan's own critical value.
// Alternative replications use a stream tag disjoint from the null tables',
// so power and critical value stay independent under a shared master seed.
double power(const SimPlan& plan, Alt alt, double theta, int threads = 1,
             const std::string& cache_dir = "");

struct LdPoint {
  int n = 0;
  long long hits = 0;   // replications with K_n >= eps
  double rate = 0.0;    // -(1/n) log(hits/reps); meaningless when flagged
  bool flagged = false; // zero hits at this n: no estimate, nothing invented
};

// Empirical large-deviation rates -(1/n) log P{K_n >= eps}, one entry per n.
// Reuses (and populates) the same cache as critical_value.
std::vector<LdPoint> ld_empirical(Kind kind, double eps,
                                  const std::vector<int>& ns, int reps,
                                  std::uint64_t seed,
                                  SupMode mode = SupMode::exact,
                                  int threads = 1,
                                  const std::string& cache_dir = "");

// One-line JSON record {kind, n, alpha, reps, seed, value}.
std::string mc_record_json(const SimPlan& plan, double value);

}  // namespace supgof
