#pragma once

#include "supgof/common.hpp"
#include "supgof/rng.hpp"

namespace supgof {

// Null families: Pareto(1) on (1,inf), standard logistic on R, unit
// exponential on (0,inf).  Sampling is inverse-CDF throughout.
struct NullFamily {
  Kind kind;

  double pdf(double x) const;
  double cdf(double x) const;
  double quantile(double u) const;  // u in (0,1)
  double sample(Xoshiro256& rng) const { return quantile(rng.uniform01()); }
  double support_lo() const;  // 1, -inf, 0
};

NullFamily null_family(Kind k);

// One-parameter local alternative g(x; theta) with g(x; 0) = null pdf.
//
//   score(x)        = d/dtheta g(x; theta) at theta = 0
//   score_factor(x) = score(x) / f0(x)   (bounded; safe deep in the tails)
//   score_tail(a)   = int_a^inf score(x) dx
struct Alternative {
  Alt alt;
  Kind kind;
  double theta_lo, theta_hi;  // admissible parameter range

  double density(double x, double theta) const;
  double cdf(double x, double theta) const;
  double score(double x) const;
  double score_factor(double x) const;
  double score_tail(double a) const;
  double sample(double theta, Xoshiro256& rng) const;  // inverse CDF
  void validate_theta(double theta) const;
};

Alternative alternative(Alt a);

}  // namespace supgof
