#include "supgof/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>

namespace supgof {

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  using boost::math::quadrature::gauss_kronrod;
  double err = 0.0;
  return gauss_kronrod<double, 15>::integrate(f, a, b, 15, tol, &err);
}

double integrate_singular(const std::function<double(double)>& f, double a,
                          double b, double tol) {
  boost::math::quadrature::tanh_sinh<double> rule;
  return rule.integrate(f, a, b, tol);
}

double integrate_with_breaks(const std::function<double(double)>& f, double a,
                             double b, std::vector<double> breaks, double tol) {
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> pts;
  pts.push_back(a);
  for (double x : breaks)
    if (x > pts.back() && x < b) pts.push_back(x);
  pts.push_back(b);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    total += integrate(f, pts[i], pts[i + 1], tol);
  return total;
}

}  // namespace supgof
