#pragma once

#include <functional>
#include <vector>

namespace supgof {

// Adaptive Gauss-Kronrod (15 point) on [a,b]; either endpoint may be
// +-infinity.  `tol` is the target absolute error.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-10);

// Same, but splits [a,b] at the interior breakpoints first.  Use whenever the
// integrand has kinks or jumps at known abscissae.
double integrate_with_breaks(const std::function<double(double)>& f, double a,
                             double b, std::vector<double> breaks,
                             double tol = 1e-10);

// Tanh-sinh rule on finite [a,b]; tolerates integrable endpoint
// singularities (log, inverse square root) that starve Gauss-Kronrod.
double integrate_singular(const std::function<double(double)>& f, double a,
                          double b, double tol = 1e-12);

}  // namespace supgof
