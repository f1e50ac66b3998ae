#include "supgof/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace supgof {

namespace {

constexpr double kPi = std::numbers::pi;

// ln(1 + e^t), stable for large |t|.
double log1p_exp(double t) {
  return t <= 0.0 ? std::log1p(std::exp(t)) : t + std::log1p(std::exp(-t));
}

double logi_pdf(double x) {
  const double e = std::exp(-std::abs(x));
  return e / ((1.0 + e) * (1.0 + e));
}

double logi_cdf(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Monotone scalar root solve of g(y) = 0 on [lo, hi] (g increasing):
// Newton with a maintained bracket, bisection when the step escapes it.
template <class G, class DG>
double solve_increasing(G g, DG dg, double lo, double hi, double y0) {
  double a = lo, b = hi, y = y0;
  for (int it = 0; it < 80; ++it) {
    const double gy = g(y);
    if (gy > 0.0)
      b = y;
    else
      a = y;
    const double d = dg(y);
    double ynext = d > 0.0 ? y - gy / d : 0.5 * (a + b);
    if (!(ynext > a && ynext < b)) ynext = 0.5 * (a + b);
    if (std::abs(ynext - y) <= 1e-16 * (std::abs(y) + 1e-300)) return ynext;
    y = ynext;
  }
  return y;
}

}  // namespace

// ---- null families ----

double NullFamily::pdf(double x) const {
  switch (kind) {
    case Kind::pareto: return x > 1.0 ? 1.0 / (x * x) : 0.0;
    case Kind::logistic: return logi_pdf(x);
    case Kind::exponential: return x >= 0.0 ? std::exp(-x) : 0.0;
  }
  return 0.0;
}

double NullFamily::cdf(double x) const {
  switch (kind) {
    case Kind::pareto: return x <= 1.0 ? 0.0 : 1.0 - 1.0 / x;
    case Kind::logistic: return logi_cdf(x);
    case Kind::exponential: return x <= 0.0 ? 0.0 : -std::expm1(-x);
  }
  return 0.0;
}

double NullFamily::quantile(double u) const {
  switch (kind) {
    case Kind::pareto: return 1.0 / (1.0 - u);
    case Kind::logistic: return std::log(u) - std::log1p(-u);
    case Kind::exponential: return -std::log1p(-u);
  }
  return 0.0;
}

double NullFamily::support_lo() const {
  switch (kind) {
    case Kind::pareto: return 1.0;
    case Kind::logistic: return -std::numeric_limits<double>::infinity();
    case Kind::exponential: return 0.0;
  }
  return 0.0;
}

NullFamily null_family(Kind k) { return NullFamily{k}; }

// ---- alternatives ----

Alternative alternative(Alt a) {
  switch (a) {
    case Alt::mixture: return {a, Kind::pareto, 0.0, 1.0};
    case Alt::leyp: return {a, Kind::pareto, 0.0, 1.0 / kPi};
    case Alt::shifted: return {a, Kind::logistic, -1.0, 1.0};
    case Alt::gld: return {a, Kind::logistic, 0.0, 2.0};
    case Alt::makeham: return {a, Kind::exponential, 0.0, 2.0};
    case Alt::weibull: return {a, Kind::exponential, 0.0, 2.0};
  }
  throw std::logic_error("bad alt");
}

void Alternative::validate_theta(double theta) const {
  if (!(theta >= theta_lo && theta <= theta_hi)) {
    std::ostringstream os;
    os << "theta=" << theta << " outside [" << theta_lo << ", " << theta_hi
       << "] for alternative " << alt_name(alt);
    throw UsageError(os.str());
  }
}

double Alternative::density(double x, double theta) const {
  switch (alt) {
    case Alt::mixture:
      if (x <= 1.0) return 0.0;
      return (1.0 - theta) / (x * x) + theta * 6.0 * std::pow(x, -7.0);
    case Alt::leyp: {
      if (x <= 1.0) return 0.0;
      const double y = 1.0 - 1.0 / x;
      return (1.0 - theta * kPi * std::cos(kPi * y)) / (x * x);
    }
    case Alt::shifted: return logi_pdf(x - theta);
    case Alt::gld: {
      const double L = log1p_exp(-x);
      return std::exp(std::log1p(theta) - x - (2.0 + theta) * L);
    }
    case Alt::makeham: {
      if (x < 0.0) return 0.0;
      const double ex = std::exp(-x);
      return (1.0 + theta * (1.0 - ex)) * std::exp(-x - theta * (ex + x - 1.0));
    }
    case Alt::weibull: {
      if (x <= 0.0) return 0.0;
      const double lx = std::log(x);
      return (1.0 + theta) * std::exp(theta * lx - std::exp((1.0 + theta) * lx));
    }
  }
  return 0.0;
}

double Alternative::cdf(double x, double theta) const {
  switch (alt) {
    case Alt::mixture:
      if (x <= 1.0) return 0.0;
      return (1.0 - theta) * (1.0 - 1.0 / x) + theta * (1.0 - std::pow(x, -6.0));
    case Alt::leyp: {
      if (x <= 1.0) return 0.0;
      const double y = 1.0 - 1.0 / x;
      return y - theta * std::sin(kPi * y);
    }
    case Alt::shifted: return logi_cdf(x - theta);
    case Alt::gld: return std::exp(-(1.0 + theta) * log1p_exp(-x));
    case Alt::makeham: {
      if (x <= 0.0) return 0.0;
      return -std::expm1(-x - theta * (std::exp(-x) + x - 1.0));
    }
    case Alt::weibull:
      if (x <= 0.0) return 0.0;
      return -std::expm1(-std::exp((1.0 + theta) * std::log(x)));
  }
  return 0.0;
}

double Alternative::score(double x) const {
  return score_factor(x) * null_family(kind).pdf(x);
}

double Alternative::score_factor(double x) const {
  switch (alt) {
    case Alt::mixture: return x > 1.0 ? 6.0 * std::pow(x, -5.0) - 1.0 : 0.0;
    case Alt::leyp:
      return x > 1.0 ? -kPi * std::cos(kPi * (1.0 - 1.0 / x)) : 0.0;
    case Alt::shifted: return 2.0 * logi_cdf(x) - 1.0;
    case Alt::gld: return 1.0 - log1p_exp(-x);
    case Alt::makeham: return x >= 0.0 ? 2.0 - 2.0 * std::exp(-x) - x : 0.0;
    case Alt::weibull: return x > 0.0 ? 1.0 + (1.0 - x) * std::log(x) : 0.0;
  }
  return 0.0;
}

double Alternative::score_tail(double a) const {
  switch (alt) {
    case Alt::mixture:
      return a <= 1.0 ? 0.0 : std::pow(a, -6.0) - 1.0 / a;
    case Alt::leyp: return a <= 1.0 ? 0.0 : std::sin(kPi / a);
    case Alt::shifted: return logi_pdf(a);
    case Alt::gld: return log1p_exp(-a) * logi_cdf(a);
    case Alt::makeham: {
      if (a <= 0.0) return 0.0;
      const double ea = std::exp(-a);
      return ea * (1.0 - a - ea);
    }
    case Alt::weibull:
      return a <= 0.0 ? 0.0 : -a * std::log(a) * std::exp(-a);
  }
  return 0.0;
}

double Alternative::sample(double theta, Xoshiro256& rng) const {
  const double u = rng.uniform01();
  switch (alt) {
    case Alt::mixture: {
      // Solve (1-theta) y + theta y^6 = 1-u for y = 1/x in (0,1).
      const double target = 1.0 - u;
      const double y = solve_increasing(
          [&](double t) { return (1.0 - theta) * t + theta * std::pow(t, 6.0) - target; },
          [&](double t) { return (1.0 - theta) + 6.0 * theta * std::pow(t, 5.0); },
          0.0, 1.0, target);
      return 1.0 / y;
    }
    case Alt::leyp: {
      // Solve y - theta sin(pi y) = u for y in (0,1); monotone since
      // theta < 1/pi.
      const double y = solve_increasing(
          [&](double t) { return t - theta * std::sin(kPi * t) - u; },
          [&](double t) { return 1.0 - theta * kPi * std::cos(kPi * t); },
          0.0, 1.0, u);
      return 1.0 / (1.0 - y);
    }
    case Alt::shifted:
      return std::log(u) - std::log1p(-u) + theta;
    case Alt::gld: {
      const double w = -std::log(u) / (1.0 + theta);
      return -std::log(std::expm1(w));
    }
    case Alt::makeham: {
      // Solve x + theta (e^-x + x - 1) = E; increasing in x for theta >= 0.
      const double e = -std::log1p(-u);
      return solve_increasing(
          [&](double t) { return t + theta * (std::exp(-t) + t - 1.0) - e; },
          [&](double t) { return 1.0 + theta * (1.0 - std::exp(-t)); },
          e / (1.0 + theta) - 1e-12, e + 1e-12, e / (1.0 + theta));
    }
    case Alt::weibull: {
      const double e = -std::log1p(-u);
      return std::exp(std::log(e) / (1.0 + theta));
    }
  }
  return 0.0;
}

// ---- names ----

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::pareto: return "pareto";
    case Kind::logistic: return "logistic";
    case Kind::exponential: return "exp";
  }
  return "?";
}

std::string alt_name(Alt a) {
  switch (a) {
    case Alt::mixture: return "mixture";
    case Alt::leyp: return "leyp";
    case Alt::shifted: return "shifted";
    case Alt::gld: return "gld";
    case Alt::makeham: return "makeham";
    case Alt::weibull: return "weibull";
  }
  return "?";
}

std::string convention_name(Convention c) {
  return c == Convention::lemma ? "lemma" : "paper-compat";
}

std::string mode_name(SupMode m) { return m == SupMode::exact ? "exact" : "grid"; }

Kind parse_kind(const std::string& s) {
  if (s == "pareto" || s == "pa") return Kind::pareto;
  if (s == "logistic" || s == "lo") return Kind::logistic;
  if (s == "exp" || s == "exponential" || s == "ex") return Kind::exponential;
  throw UsageError("unknown kind '" + s + "' (expected pareto|logistic|exp)");
}

Alt parse_alt(const std::string& s) {
  if (s == "mixture") return Alt::mixture;
  if (s == "leyp") return Alt::leyp;
  if (s == "shifted") return Alt::shifted;
  if (s == "gld") return Alt::gld;
  if (s == "makeham") return Alt::makeham;
  if (s == "weibull") return Alt::weibull;
  throw UsageError("unknown alternative '" + s +
                   "' (expected mixture|leyp|shifted|gld|makeham|weibull)");
}

Convention parse_convention(const std::string& s) {
  if (s == "lemma") return Convention::lemma;
  if (s == "paper-compat" || s == "paper_compat") return Convention::paper_compat;
  throw UsageError("unknown convention '" + s + "' (expected lemma|paper-compat)");
}

SupMode parse_mode(const std::string& s) {
  if (s == "exact") return SupMode::exact;
  if (s == "grid") return SupMode::grid;
  throw UsageError("unknown mode '" + s + "' (expected exact|grid)");
}

}  // namespace supgof
