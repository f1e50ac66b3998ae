#pragma once

#include <functional>

namespace supgof {

struct MaxResult {
  double value;
  double x1, x2;
};

// Global maximum of g over the open unit square.  Coarse `coarse` x `coarse`
// scan, then Nelder-Mead refinement from up to `restarts` well-separated seed
// points; each local search stops once the simplex diameter drops below
// `xtol`.  Deterministic.
MaxResult maximize_unit_square(const std::function<double(double, double)>& g,
                               int coarse = 64, int restarts = 8,
                               double xtol = 1e-6);

// Scalar minimum of f on [lo, hi] (Brent), position resolved to about `xtol`.
double minimize_scalar(const std::function<double(double)>& f, double lo,
                       double hi, double xtol = 1e-8);

}  // namespace supgof
