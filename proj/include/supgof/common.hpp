#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace supgof {

// The three null families the tests are built around.
enum class Kind { pareto, logistic, exponential };

// Local alternatives, two per kind.
enum class Alt { mixture, leyp, shifted, gld, makeham, weibull };

enum class SupMode { exact, grid };

// Scaling convention for the slope coefficient b: `lemma` reports the raw
// supremum of |a'(0)|, `paper_compat` multiplies by the kernel degree m.
enum class Convention { lemma, paper_compat };

struct GridSpec {
  int m1 = 256;
  int m2 = 256;
};

struct SupremumResult {
  double value = 0.0;
  std::array<double, 2> argmax{0.0, 0.0};
  SupMode mode = SupMode::exact;
  std::uint64_t evaluations = 0;
};

struct SimPlan {
  Kind kind;
  int n;
  int reps;
  std::uint64_t seed;
  double alpha;
  SupMode mode;
};

// Degree of the U-statistic kernel behind each test.
inline int ustat_degree(Kind k) {
  switch (k) {
    case Kind::pareto: return 2;
    case Kind::logistic: return 3;
    case Kind::exponential: return 4;
  }
  return 0;
}

// Largest n for which the exact supremum enumeration is attempted.
inline int exact_cap(Kind k) { return k == Kind::logistic ? 100 : 200; }

inline constexpr int kBruteForceCap = 30;

inline Kind alt_kind(Alt a) {
  switch (a) {
    case Alt::mixture:
    case Alt::leyp: return Kind::pareto;
    case Alt::shifted:
    case Alt::gld: return Kind::logistic;
    case Alt::makeham:
    case Alt::weibull: return Kind::exponential;
  }
  throw std::logic_error("bad alt");
}

std::string kind_name(Kind k);
std::string alt_name(Alt a);
std::string convention_name(Convention c);
std::string mode_name(SupMode m);
Kind parse_kind(const std::string& s);  // accepts pareto|pa, logistic|lo, exp|exponential|ex
Alt parse_alt(const std::string& s);
Convention parse_convention(const std::string& s);
SupMode parse_mode(const std::string& s);

// Thrown for malformed user input (bad flags, bad data files); the CLI maps
// it to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace supgof
