#include "supgof/projection_variance.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "supgof/distributions.hpp"
#include "supgof/optimize.hpp"

namespace supgof {

namespace {

void check_domain(Kind kind, double t1, double t2) {
  if (kind == Kind::pareto && (t1 <= 1.0 || t2 <= 1.0))
    throw UsageError("pareto projection needs t1, t2 > 1");
  if (kind == Kind::exponential && (t1 <= 0.0 || t2 <= 0.0))
    throw UsageError("exponential projection needs t1, t2 > 0");
}

double xi_pa(double s, double t1, double t2) {
  return -1.0 / (2.0 * t1 * t2) + (s > t1 ? 1.0 : 0.0) / (2.0 * t2) +
         (s > t2 ? 1.0 : 0.0) / (2.0 * t1) - (s > t1 * t2 ? 0.5 : 0.0);
}

double xi_lo(double s, double t1, double t2) {
  const double u = t1 + t2;
  const double e1 = std::exp(t1), e2 = std::exp(t2), eu = std::exp(u);
  const double A = (-1.0 + e1 + e2 + eu) / (3.0 * (1 + e1) * (1 + e2) * (1 + eu));
  const double B = e2 * (1 + e1) / (3.0 * (1 + e2) * (1 + eu));
  const double C = e1 * (1 + e2) / (3.0 * (1 + e1) * (1 + eu));
  const double D = (1 + eu) / (3.0 * (1 + e1) * (1 + e2));
  return -(A - B * (s > t1 ? 1.0 : 0.0) - C * (s > t2 ? 1.0 : 0.0) +
           D * (s > u ? 1.0 : 0.0));
}

// Oriented as the projection of (product of marginals - joint), matching the
// sign of the evaluated difference; the supremum statistic is sign-blind.
double xi_ex(double s, double t1, double t2) {
  auto F = [](double x) { return -std::expm1(-x); };
  const double mu_u = -std::expm1(-2.0 * t1);
  const double mu_v = -std::expm1(-t2);
  const double t1b = s <= t1 ? 1.0 : F(t1);
  const double t2b = s <= t2 ? F(s + t2)
                             : std::exp(-(s - t2)) - std::exp(-(s + t2));
  double t1a = 0.0;
  if (s <= t1) {
    t1a = t2b;
  } else if (s <= t1 + t2) {
    t1a = std::exp(-std::max(0.0, s - t2)) - std::exp(-t1);
  }
  return 0.5 * (t1b * mu_v - t1a) + 0.5 * mu_u * (t2b - mu_v);
}

double sigma2_pa(double t1, double t2) {
  const double tmin = std::min(t1, t2), tmax = std::max(t1, t2);
  return (tmin - 1.0) * (tmax + 1.0) / (4.0 * t1 * t1 * t2 * t2);
}

// xi is constant between consecutive elements of {t1, t2, t1+t2}, so the
// variance is a finite sum of xi^2 times logistic interval masses (E xi = 0).
double sigma2_lo(double t1, double t2) {
  auto F = [](double x) {  // overflow-safe logistic cdf
    return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x))
                    : std::exp(x) / (1.0 + std::exp(x));
  };
  std::array<double, 3> bp{t1, t2, t1 + t2};
  std::sort(bp.begin(), bp.end());
  double tot = 0.0, prev_f = 0.0, prev_x = -1.0;
  bool first = true;
  for (double b : bp) {
    if (!first && b <= prev_x) continue;
    const double mid = first ? b - 1.0 : 0.5 * (prev_x + b);
    const double fb = F(b);
    const double v = xi_lo(mid, t1, t2);
    tot += v * v * (fb - prev_f);
    prev_f = fb;
    prev_x = b;
    first = false;
  }
  const double v = xi_lo(prev_x + 1.0, t1, t2);
  tot += v * v * (1.0 - prev_f);
  return tot;
}

double sigma2_ex(double t1, double t2) {
  const double e1 = std::exp(t1), e2 = std::exp(t2);
  double poly;
  if (t1 <= t2) {
    poly = (e1 - 1.0) * (e1 - 1.0) * (-1.0 - e1 + e2 + e2 * e2);
  } else {
    poly = (e2 - 1.0) * (e2 - 1.0) * (-1.0 + e1 - e2 + e1 * e1);
  }
  return std::exp(-5.0 * t1 - 3.0 * t2) * poly / 12.0;
}

}  // namespace

double xi(Kind kind, double s, double t1, double t2) {
  check_domain(kind, t1, t2);
  switch (kind) {
    case Kind::pareto: return xi_pa(s, t1, t2);
    case Kind::logistic: return xi_lo(s, t1, t2);
    case Kind::exponential: return xi_ex(s, t1, t2);
  }
  return 0.0;
}

double sigma2(Kind kind, double t1, double t2) {
  check_domain(kind, t1, t2);
  switch (kind) {
    case Kind::pareto: return sigma2_pa(t1, t2);
    case Kind::logistic: return sigma2_lo(t1, t2);
    case Kind::exponential: return sigma2_ex(t1, t2);
  }
  return 0.0;
}

VarianceSupremum sigma2_sup(Kind kind) {
  const NullFamily f0 = null_family(kind);
  const auto r = maximize_unit_square(
      [&](double p1, double p2) {
        return sigma2(kind, f0.quantile(p1), f0.quantile(p2));
      },
      64, 8, 1e-9);
  return {r.value, {f0.quantile(r.x1), f0.quantile(r.x2)}};
}

void surface_csv(std::ostream& os, Kind kind, int m1, int m2,
                 const std::function<double(double, double)>& value) {
  if (m1 < 1 || m2 < 1) throw UsageError("surface grid must be at least 1x1");
  const NullFamily f0 = null_family(kind);
  os << "t1,t2,value\n";
  char buf[96];
  for (int i = 1; i <= m1; ++i) {
    const double t1 = f0.quantile(static_cast<double>(i) / (m1 + 1));
    for (int j = 1; j <= m2; ++j) {
      const double t2 = f0.quantile(static_cast<double>(j) / (m2 + 1));
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", t1, t2,
                    value(t1, t2));
      os << buf;
    }
  }
}

}  // namespace supgof
