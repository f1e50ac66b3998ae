#pragma once

#include "supgof/common.hpp"

#include <array>
#include <functional>
#include <iosfwd>

namespace supgof {

// First projection of the centered comparison kernel: the statistic's
// asymptotics are governed by sup of n Var[mean of xi(X_i; t1, t2)].
//
// Domains match the null supports: t1, t2 > 1 (pareto), real (logistic),
// > 0 (exponential); out-of-domain arguments throw UsageError.
double xi(Kind kind, double s, double t1, double t2);

// Var_{F0} xi(S; t1, t2), in closed form (pareto, exponential) or as an
// exact sum over the constancy regions of xi (logistic).
double sigma2(Kind kind, double t1, double t2);

struct VarianceSupremum {
  double value = 0.0;
  std::array<double, 2> argmax{0.0, 0.0};
};

// sup_{t1,t2} sigma2 via Nelder-Mead restarts on the probability square
// (t = F0^{-1}(p) per axis).  The logistic surface has two symmetric maxima;
// one of them is returned.
VarianceSupremum sigma2_sup(Kind kind);

// "t1,t2,value" CSV over an m1 x m2 grid of null-quantile-spaced abscissae
// t_i = F0^{-1}(i/(m+1)), row-major in t1, 17 significant digits.
void surface_csv(std::ostream& os, Kind kind, int m1, int m2,
                 const std::function<double(double, double)>& value);

}  // namespace supgof
