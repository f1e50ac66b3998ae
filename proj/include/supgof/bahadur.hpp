#pragma once

#include "supgof/common.hpp"

#include <array>
#include <string>
#include <vector>

namespace supgof {

// Coefficient f in the large-deviation asymptotics -ln P(K_n > eps) ~
// n f eps^2, i.e. f = 1/(2 m^2 sigma0^2) with sigma0^2 = sup sigma2.
double ld_coefficient(Kind kind);

// a'(t1, t2) = d/dtheta E_theta D(t1, t2) at theta = 0 = int xi(s) h(s) ds
// with h the score of the alternative, by segment quadrature between the
// discontinuities of xi (tolerance 1e-10).  Signed.
double a_prime(Kind kind, Alt alt, double t1, double t2);

struct SlopeResult {
  double b_coef = 0.0;  // scaled per convention
  std::array<double, 2> argmax{0.0, 0.0};
  double raw_sup = 0.0;       // sup |a'|, convention-free
  double signed_value = 0.0;  // a' at the argmax, sign preserved
};

// b(theta) ~ b_coef * theta: lemma = sup|a'|, paper_compat = m * sup|a'|.
// The supremum search mirrors sigma2_sup (quantile-compactified square).
SlopeResult b_slope(Kind kind, Alt alt, Convention conv);

// inf over the nuisance parameter lambda of the KL distance between the
// alternative at theta and the null family (shape/scale/rate lambda).
struct KlPoint {
  double k = 0.0;
  double lambda = 1.0;
};
KlPoint kl_point(Alt alt, double theta);

// Small-theta KL pipeline for the logistic alternatives: 2K(theta)/theta^2
// at theta in {0.02, 0.04, 0.08}, quadratic extrapolation to theta = 0,
// plus the nuisance slope (lambda_hat - 1)/theta extrapolated the same way.
struct Kl2Numeric {
  std::array<double, 3> thetas{};
  std::array<double, 3> rows{};     // 2 K(theta) / theta^2
  std::array<double, 3> lambdas{};  // argmin lambda per theta
  double extrapolated = 0.0;
  double lambda_slope = 0.0;
};
Kl2Numeric kl2_numeric(Alt alt);

// Coefficient of theta^2 in 2K(theta): closed-form quadratures for the
// pareto/exponential alternatives, the numeric pipeline above for logistic.
double kl2_coefficient(Kind kind, Alt alt);

struct EfficiencyReport {
  Kind kind;
  Alt alt;
  Convention convention;
  double ld_coef = 0.0;
  double b_coef = 0.0;
  double kl2_coef = 0.0;
  double efficiency = 0.0;  // 2 * ld_coef * b_coef^2 / kl2_coef
  std::array<double, 2> argmax{0.0, 0.0};
  double paper_value = 0.0;  // efficiency reported in the reference publication
  std::string discrepancy_note;
};

EfficiencyReport efficiency(Kind kind, Alt alt, Convention conv);
std::vector<EfficiencyReport> efficiency_all(Convention conv);

std::string efficiency_json(const EfficiencyReport& r);
// Aligned text table juxtaposing computed and published values.
std::string efficiency_table(const std::vector<EfficiencyReport>& rs);

}  // namespace supgof
