#include "supgof/bahadur.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "supgof/distributions.hpp"
#include "supgof/optimize.hpp"
#include "supgof/projection_variance.hpp"
#include "supgof/quadrature.hpp"

namespace supgof {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_pair(Kind kind, Alt alt) {
  if (alt_kind(alt) != kind) {
    throw UsageError("alternative " + alt_name(alt) + " perturbs the " +
                     kind_name(alt_kind(alt)) + " null, not " +
                     kind_name(kind));
  }
}

// null family with nuisance parameter lambda = 1 at the standard null:
// 1 - x^-lambda (pareto), 1/(1 + e^{-lambda x}) (logistic),
// 1 - e^{-lambda x} (exponential).
double null_lambda_pdf(Kind kind, double x, double lambda) {
  switch (kind) {
    case Kind::pareto:
      return x > 1.0 ? lambda * std::pow(x, -lambda - 1.0) : 0.0;
    case Kind::logistic: {
      const double e = std::exp(-lambda * std::abs(x));
      return lambda * e / ((1.0 + e) * (1.0 + e));
    }
    case Kind::exponential:
      return x > 0.0 ? lambda * std::exp(-lambda * x) : 0.0;
  }
  return 0.0;
}

double quadratic_at_zero(const std::array<double, 3>& t,
                         const std::array<double, 3>& y) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    s += y[i] * (0.0 - t[j]) * (0.0 - t[k]) / ((t[i] - t[j]) * (t[i] - t[k]));
  }
  return s;
}

double published_efficiency(Alt alt) {
  switch (alt) {
    case Alt::mixture: return 0.29;
    case Alt::leyp: return 0.23;
    case Alt::shifted: return 0.55;
    case Alt::gld: return 0.43;
    case Alt::makeham: return 0.38;
    case Alt::weibull: return 0.20;
  }
  return 0.0;
}

}  // namespace

double ld_coefficient(Kind kind) {
  static const double cached[3] = {
      sigma2_sup(Kind::pareto).value,
      sigma2_sup(Kind::logistic).value,
      sigma2_sup(Kind::exponential).value,
  };
  const double s0 = cached[static_cast<int>(kind)];
  const double m = ustat_degree(kind);
  return 1.0 / (2.0 * m * m * s0);
}

double a_prime(Kind kind, Alt alt, double t1, double t2) {
  check_pair(kind, alt);
  const Alternative a = alternative(alt);
  auto f = [&](double s) { return xi(kind, s, t1, t2) * a.score(s); };
  switch (kind) {
    case Kind::pareto:
      return integrate_with_breaks(f, 1.0, kInf, {t1, t2, t1 * t2}, 1e-10);
    case Kind::logistic:
      return integrate_with_breaks(f, -kInf, kInf, {t1, t2, t1 + t2}, 1e-10);
    case Kind::exponential: {
      // the score decays like e^{-x}; past the last kink the tail is dust
      const double hi = std::max({t1, t2, t1 + t2}) + 80.0;
      return integrate_with_breaks(f, 0.0, hi, {t1, t2, t1 + t2}, 1e-10);
    }
  }
  return 0.0;
}

SlopeResult b_slope(Kind kind, Alt alt, Convention conv) {
  check_pair(kind, alt);
  // each probe below costs a full quadrature, so the scan is cached: the
  // supremum itself does not depend on the requested convention
  static std::map<int, SlopeResult> cache;
  static std::mutex cache_mu;
  const int key = static_cast<int>(kind) * 16 + static_cast<int>(alt);
  auto scaled = [&](SlopeResult out) {
    out.b_coef = conv == Convention::lemma ? out.raw_sup
                                           : ustat_degree(kind) * out.raw_sup;
    return out;
  };
  {
    std::lock_guard<std::mutex> lock(cache_mu);
    auto it = cache.find(key);
    if (it != cache.end()) return scaled(it->second);
  }
  const NullFamily f0 = null_family(kind);
  // coarse 32x32 is enough here: the slope surfaces are smooth with wide
  // basins
  const auto r = maximize_unit_square(
      [&](double p1, double p2) {
        return std::abs(a_prime(kind, alt, f0.quantile(p1), f0.quantile(p2)));
      },
      32, 8, 1e-9);
  SlopeResult out;
  out.argmax = {f0.quantile(r.x1), f0.quantile(r.x2)};
  out.raw_sup = r.value;
  out.signed_value = a_prime(kind, alt, out.argmax[0], out.argmax[1]);
  {
    std::lock_guard<std::mutex> lock(cache_mu);
    cache.emplace(key, out);
  }
  return scaled(out);
}

KlPoint kl_point(Alt alt, double theta) {
  const Alternative a = alternative(alt);
  a.validate_theta(theta);
  const Kind kind = alt_kind(alt);
  double lo = 0.0, hi = kInf;
  if (kind == Kind::pareto) lo = 1.0;
  if (kind == Kind::logistic) {
    lo = -60.0;
    hi = 60.0;
  }
  auto kl_at = [&](double lambda) {
    return integrate(
        [&](double x) {
          const double g = a.density(x, theta);
          if (g <= 0.0) return 0.0;
          const double f = null_lambda_pdf(kind, x, lambda);
          return g * (std::log(g) - std::log(f));
        },
        lo, hi, 1e-13);
  };
  KlPoint p;
  p.lambda = minimize_scalar(kl_at, 0.5, 1.5, 1e-8);
  p.k = kl_at(p.lambda);
  // At theta = 0 the minimum is exactly 0; quadrature noise may dip below.
  if (p.k < 0.0 && p.k > -1e-9) p.k = 0.0;
  if (!std::isfinite(p.k) || p.k < 0.0) {
    throw std::runtime_error("KL minimization failed for " + alt_name(alt) +
                             " at theta = " + std::to_string(theta));
  }
  return p;
}

Kl2Numeric kl2_numeric(Alt alt) {
  Kl2Numeric r;
  r.thetas = {0.02, 0.04, 0.08};
  std::array<double, 3> slopes{};
  for (int i = 0; i < 3; ++i) {
    const KlPoint p = kl_point(alt, r.thetas[i]);
    r.rows[i] = 2.0 * p.k / (r.thetas[i] * r.thetas[i]);
    r.lambdas[i] = p.lambda;
    slopes[i] = (p.lambda - 1.0) / r.thetas[i];
  }
  r.extrapolated = quadratic_at_zero(r.thetas, r.rows);
  r.lambda_slope = quadratic_at_zero(r.thetas, slopes);
  return r;
}

double kl2_coefficient(Kind kind, Alt alt) {
  check_pair(kind, alt);
  if (kind == Kind::logistic) return kl2_numeric(alt).extrapolated;
  const Alternative a = alternative(alt);
  // int psi^2 f0 - (int h w)^2 with w the nuisance score direction
  // (ln x for pareto, x for exponential).  Pareto integrals go through
  // y = 1/x, which turns f0 dx into dy on (0, 1); exponential tails are
  // immaterial past x = 80.
  double i_hh, i_hw;
  if (kind == Kind::pareto) {
    i_hh = integrate_singular(
        [&](double y) {
          const double psi = a.score_factor(1.0 / y);
          return psi * psi;
        },
        0.0, 1.0);
    i_hw = integrate_singular(
        [&](double y) { return -a.score_factor(1.0 / y) * std::log(y); }, 0.0,
        1.0);
  } else {
    i_hh = integrate_singular(
        [&](double x) {
          const double psi = a.score_factor(x);
          return psi * psi * std::exp(-x);
        },
        0.0, 80.0);
    i_hw = integrate_singular([&](double x) { return a.score(x) * x; }, 0.0,
                              80.0);
  }
  return i_hh - i_hw * i_hw;
}

EfficiencyReport efficiency(Kind kind, Alt alt, Convention conv) {
  check_pair(kind, alt);
  EfficiencyReport r;
  r.kind = kind;
  r.alt = alt;
  r.convention = conv;
  r.ld_coef = ld_coefficient(kind);
  const SlopeResult s = b_slope(kind, alt, conv);
  r.b_coef = s.b_coef;
  r.argmax = s.argmax;
  r.kl2_coef = kl2_coefficient(kind, alt);
  r.efficiency = 2.0 * r.ld_coef * r.b_coef * r.b_coef / r.kl2_coef;
  r.paper_value = published_efficiency(alt);
  if (!(r.efficiency >= 0.0 && r.efficiency <= 1.05)) {
    throw std::runtime_error("efficiency outside [0, 1.05] for " +
                             alt_name(alt) + " (" + convention_name(conv) +
                             "): " + std::to_string(r.efficiency));
  }

  char buf[512];
  const std::string cname = convention_name(conv);
  const char* cn = cname.c_str();
  if (conv == Convention::lemma) {
    std::snprintf(buf, sizeof buf,
                  "lemma-scaled slope (no kernel-degree factor m=%d): computed "
                  "%.4f vs published %.2f; the published table matches the "
                  "paper-compat convention.",
                  ustat_degree(kind), r.efficiency, r.paper_value);
    r.discrepancy_note = buf;
  } else if (kind == Kind::exponential) {
    std::snprintf(
        buf, sizeof buf,
        "computed %.4f vs published %.2f under %s; agreement holds only with "
        "the rate coefficient rebuilt from the recomputed variance supremum "
        "%.6g (published intermediates sigma0^2 = 0.0223 and rate 0.715 are "
        "mutually inconsistent and reproduce neither).",
        r.efficiency, r.paper_value, cn, sigma2_sup(kind).value);
    r.discrepancy_note = buf;
  } else if (alt == Alt::gld) {
    std::snprintf(buf, sizeof buf,
                  "computed %.4f vs published %.2f under %s; note the "
                  "published nuisance slope -0.35 is opposite in sign to the "
                  "computed +0.35 (finite-theta minimizers sit above 1).",
                  r.efficiency, r.paper_value, cn);
    r.discrepancy_note = buf;
  } else {
    std::snprintf(buf, sizeof buf, "computed %.4f vs published %.2f under %s.",
                  r.efficiency, r.paper_value, cn);
    r.discrepancy_note = buf;
  }
  return r;
}

std::vector<EfficiencyReport> efficiency_all(Convention conv) {
  std::vector<EfficiencyReport> rs;
  for (Alt a : {Alt::mixture, Alt::leyp, Alt::shifted, Alt::gld, Alt::makeham,
                Alt::weibull}) {
    rs.push_back(efficiency(alt_kind(a), a, conv));
  }
  return rs;
}

std::string efficiency_json(const EfficiencyReport& r) {
  nlohmann::ordered_json j;
  j["kind"] = kind_name(r.kind);
  j["alt"] = alt_name(r.alt);
  j["convention"] = convention_name(r.convention);
  j["ld_coef"] = r.ld_coef;
  j["b_coef"] = r.b_coef;
  j["kl2_coef"] = r.kl2_coef;
  j["efficiency"] = r.efficiency;
  j["argmax"] = {r.argmax[0], r.argmax[1]};
  j["paper_value"] = r.paper_value;
  j["discrepancy_note"] = r.discrepancy_note;
  return j.dump(2);
}

std::string efficiency_table(const std::vector<EfficiencyReport>& rs) {
  std::ostringstream os;
  char line[768];
  std::snprintf(line, sizeof line, "%-12s %-9s %10s %10s %10s %12s %10s  %s\n",
                "kind", "alt", "ld_coef", "b_coef", "kl2_coef", "efficiency",
                "published", "note");
  os << line;
  for (const auto& r : rs) {
    std::snprintf(line, sizeof line,
                  "%-12s %-9s %10.5f %10.5f %10.5f %12.4f %10.2f  %s\n",
                  kind_name(r.kind).c_str(), alt_name(r.alt).c_str(), r.ld_coef,
                  r.b_coef, r.kl2_coef, r.efficiency, r.paper_value,
                  r.discrepancy_note.c_str());
    os << line;
  }
  return os.str();
}

}  // namespace supgof
