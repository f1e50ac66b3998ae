#include "supgof/empirical.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace supgof {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double next_below(double x) { return std::nextafter(x, -kInf); }
double next_above(double x) { return std::nextafter(x, kInf); }

// ---- shared value formulas ----
//
// These are the single source of truth for turning count configurations into
// statistic values; diff(), the exact enumerations and the brute force all
// route through them, so re-evaluating an enumerated argmax reproduces the
// enumerated value bit for bit.

double pa_value(long long n, long long a1, long long a2, long long a12) {
  const double h = static_cast<double>(a1 * a2 - std::min(a1, a2)) /
                   (static_cast<double>(n) * static_cast<double>(n - 1));
  return h - static_cast<double>(a12) / static_cast<double>(n);
}

// L* = #{x < t*}, A* = #{x > t*} for t1, t2 and u = t1 + t2.
double lo_value(long long n, long long L1, long long A1, long long L2,
                long long A2, long long Lu, long long Au) {
  auto betw = [n](long long L, long long A) {  // #{a < x < b}, L=#{x<b}, A=#{x>a}
    return std::max(0LL, L - (n - A));
  };
  const long long Amax = std::min(A1, A2), Lmin = std::min(L1, L2);
  const long long nh = Lu * A1 * A2 - betw(Lu, A1) * A2 - betw(Lu, A2) * A1 -
                       Amax * Lu + 2 * betw(Lu, Amax);
  const long long ng = Au * L1 * L2 - betw(L1, Au) * L2 - betw(L2, Au) * L1 -
                       Lmin * Au + 2 * betw(Lmin, Au);
  return static_cast<double>(nh - ng) /
         (static_cast<double>(n) * static_cast<double>(n - 1) *
          static_cast<double>(n - 2));
}

double ex_value(long long n, long long a1, long long p2, long long p12) {
  const long long c = n * (n - 1) / 2;
  const long long p1 = c - a1 * (a1 - 1) / 2;
  return static_cast<double>(p1) * static_cast<double>(p2) /
             (static_cast<double>(c) * static_cast<double>(c)) -
         static_cast<double>(p12) / static_cast<double>(c);
}

// ---- bounded best-candidate collection for the exact enumerations ----

struct Cand {
  double absd, d;
  int i1, i2, i3;
  double r1, r2;  // prebuilt representative if already known, else NaN
};

bool cand_better(const Cand& a, const Cand& b) {
  if (a.absd != b.absd) return a.absd > b.absd;
  if (a.i1 != b.i1) return a.i1 < b.i1;
  if (a.i2 != b.i2) return a.i2 < b.i2;
  return a.i3 < b.i3;
}

class TopK {
 public:
  explicit TopK(std::size_t k) : k_(k) { v_.reserve(k + 1); }

  void push(const Cand& c) {
    if (v_.size() < k_) {
      v_.push_back(c);
      std::push_heap(v_.begin(), v_.end(), cand_better);  // worst at front
    } else if (cand_better(c, v_.front())) {
      std::pop_heap(v_.begin(), v_.end(), cand_better);
      v_.back() = c;
      std::push_heap(v_.begin(), v_.end(), cand_better);
    }
  }

  std::vector<Cand> sorted_desc() {
    std::sort(v_.begin(), v_.end(), cand_better);
    return v_;
  }

 private:
  std::size_t k_;
  std::vector<Cand> v_;
};

std::size_t topk_size(int n) { return n <= 12 ? 4096 : 64; }

}  // namespace

// ---- sample IO ----

Sample parse_sample(std::istream& in, const std::string& name) {
  Sample s;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    const auto b = line.find_first_not_of(" \t\r\n\f\v");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r\n\f\v");
    const std::string tok = line.substr(b, e - b + 1);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size()) {
      throw UsageError(name + ":" + std::to_string(lineno) +
                       ": malformed value '" + tok + "'");
    }
    if (!std::isfinite(v)) {
      throw UsageError(name + ":" + std::to_string(lineno) +
                       ": non-finite value '" + tok + "'");
    }
    s.values.push_back(v);
  }
  return s;
}

Sample load_sample(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open data file: " + path);
  return parse_sample(f, path);
}

// ---- evaluator ----

StatEvaluator::StatEvaluator(Kind kind, std::vector<double> values)
    : kind_(kind), xs_(std::move(values)) {
  for (double v : xs_)
    if (!std::isfinite(v)) throw UsageError("sample contains a non-finite value");
  const int min_n = kind_ == Kind::logistic ? 3 : 2;
  if (n() < min_n) {
    throw UsageError("sample too small for " + kind_name(kind_) +
                     " statistic: need n >= " + std::to_string(min_n));
  }
  std::sort(xs_.begin(), xs_.end());
}

long long StatEvaluator::cnt_gt(double t) const {
  return xs_.end() - std::upper_bound(xs_.begin(), xs_.end(), t);
}
long long StatEvaluator::cnt_ge(double t) const {
  return xs_.end() - std::lower_bound(xs_.begin(), xs_.end(), t);
}
long long StatEvaluator::cnt_lt(double t) const {
  return std::lower_bound(xs_.begin(), xs_.end(), t) - xs_.begin();
}
long long StatEvaluator::cnt_le(double t) const {
  return std::upper_bound(xs_.begin(), xs_.end(), t) - xs_.begin();
}

double StatEvaluator::diff(double t1, double t2) const {
  switch (kind_) {
    case Kind::pareto: return diff_pa(t1, t2);
    case Kind::logistic: return diff_lo(t1, t2);
    case Kind::exponential: return diff_ex(t1, t2);
  }
  return 0.0;
}

double StatEvaluator::diff_pa(double t1, double t2) const {
  return pa_value(n(), cnt_gt(t1), cnt_gt(t2), cnt_gt(t1 * t2));
}

double StatEvaluator::diff_lo(double t1, double t2) const {
  const double u = t1 + t2;
  return lo_value(n(), cnt_lt(t1), cnt_gt(t1), cnt_lt(t2), cnt_gt(t2),
                  cnt_lt(u), cnt_gt(u));
}

double StatEvaluator::diff_ex(double t1, double t2) const {
  const long long nn = n();
  const long long ple = cnt_le(t1);
  long long p2 = 0, p12 = 0;
  for (long long i = 0; i + 1 < nn; ++i) {
    const double xi = xs_[i];
    auto it = std::partition_point(xs_.begin() + i + 1, xs_.end(),
                                   [&](double v) { return v - xi <= t2; });
    const long long c = it - (xs_.begin() + i + 1);
    p2 += c;
    if (i < ple) p12 += c;
  }
  return ex_value(nn, nn - ple, p2, p12);
}

SupremumResult StatEvaluator::sup(SupMode mode, const GridSpec& spec) const {
  if (mode == SupMode::grid) return sup_grid(spec);
  if (n() > exact_cap(kind_)) {
    throw UsageError("exact supremum enumeration supports n <= " +
                     std::to_string(exact_cap(kind_)) + " for kind " +
                     kind_name(kind_) + " (got n = " + std::to_string(n()) +
                     "); use grid mode");
  }
  switch (kind_) {
    case Kind::pareto: return sup_exact_pa();
    case Kind::logistic: return sup_exact_lo();
    case Kind::exponential: return sup_exact_ex();
  }
  return {};
}

// ---- exact enumeration: Pareto ----
//
// Both axes partition into cells [l, r) bounded by 1 and the distinct data
// values; #{x > t1} is constant per cell.  Over a cell pair the product
// t1*t2 sweeps [l1*l2, r1*r2), so #{x > t1*t2} moves monotonically between
// its two end configurations, and |diff| is maximal at one of them.

SupremumResult StatEvaluator::sup_exact_pa() const {
  const long long nn = n();
  struct Cell {
    double l, r;
    long long a;
  };
  std::vector<Cell> cells;
  {
    double prev = 1.0;
    for (std::size_t i = 0; i < xs_.size(); ++i) {
      const double v = xs_[i];
      if (v <= 1.0 || (i > 0 && v == xs_[i - 1])) continue;
      cells.push_back({prev, v, cnt_gt(prev)});
      prev = v;
    }
    cells.push_back({prev, kInf, cnt_gt(prev)});
  }

  TopK top(topk_size(n()));
  std::uint64_t evals = 0;
  for (int i1 = 0; i1 < static_cast<int>(cells.size()); ++i1) {
    for (int i2 = 0; i2 < static_cast<int>(cells.size()); ++i2) {
      const Cell &c1 = cells[i1], &c2 = cells[i2];
      const double lo = c1.l * c2.l;
      const double dlo = pa_value(nn, c1.a, c2.a, cnt_gt(lo));
      top.push({std::abs(dlo), dlo, i1, i2, 0,
                std::numeric_limits<double>::quiet_NaN(), 0.0});
      const double hi = c1.r * c2.r;  // inf if either side unbounded
      const long long ahi = std::isinf(hi) ? 0 : cnt_ge(hi);
      const double dhi = pa_value(nn, c1.a, c2.a, ahi);
      top.push({std::abs(dhi), dhi, i1, i2, 1,
                std::numeric_limits<double>::quiet_NaN(), 0.0});
      evals += 2;
    }
  }

  const double big = (xs_.back() > 1.0 ? xs_.back() : 1.0) * 2.0 + 1.0;
  auto in_cell = [](const Cell& c, double t) {
    return t > 1.0 && t >= c.l && (std::isinf(c.r) || t < c.r) &&
           std::isfinite(t);
  };
  SupremumResult best{-1.0, {0.0, 0.0}, SupMode::exact, evals};
  for (const Cand& c : top.sorted_desc()) {
    const Cell &c1 = cells[c.i1], &c2 = cells[c.i2];
    const double l1 = c1.l > 1.0 ? c1.l : next_above(1.0);
    const double l2 = c2.l > 1.0 ? c2.l : next_above(1.0);
    std::vector<std::pair<double, double>> reps;
    if (c.i3 == 0) {
      reps = {{l1, l2},
              {l1, std::min(next_above(l2), 0.5 * (l2 + c2.r))},
              {std::min(next_above(l1), 0.5 * (l1 + c1.r)), l2}};
    } else {
      const double h1 = std::isinf(c1.r) ? big : next_below(c1.r);
      const double h2 = std::isinf(c2.r) ? big : next_below(c2.r);
      reps = {{h1, h2},
              {h1, std::isinf(c2.r) ? big : c2.r * (1.0 - 5e-13)},
              {std::isinf(c1.r) ? big : c1.r * (1.0 - 5e-13), h2}};
    }
    bool done = false;
    for (auto [t1, t2] : reps) {
      if (!in_cell(c1, t1) || !in_cell(c2, t2)) continue;
      if (diff_pa(t1, t2) == c.d) {
        best = {c.absd, {t1, t2}, SupMode::exact, evals};
        done = true;
        break;
      }
    }
    if (done) break;
  }
  if (best.value < 0.0) {  // unreachable in practice; (big, big) gives d = 0
    best = {std::abs(diff_pa(big, big)), {big, big}, SupMode::exact, evals};
  }
  return best;
}

// ---- exact enumeration: logistic ----
//
// Per axis the achievable (#{x < t}, #{x > t}) configurations are indexed by
// the data points and the open gaps between them (2d + 1 states).  For a
// state pair, u = t1 + t2 sweeps an interval, and the u-axis states meeting
// that interval form a contiguous index range.

namespace {

struct LoState {
  bool pt;
  double a, b;  // pt: a == b == value; gap: open interval (a, b)
  long long L, A;
};

}  // namespace

SupremumResult StatEvaluator::sup_exact_lo() const {
  const long long nn = n();
  std::vector<double> ds;  // distinct values
  for (std::size_t i = 0; i < xs_.size(); ++i)
    if (i == 0 || xs_[i] != xs_[i - 1]) ds.push_back(xs_[i]);
  const int m = static_cast<int>(ds.size());

  std::vector<LoState> st;
  st.reserve(2 * m + 1);
  for (int i = 0; i < m; ++i) {
    const double lo = i == 0 ? -kInf : ds[i - 1];
    st.push_back({false, lo, ds[i], i == 0 ? 0 : cnt_le(lo), cnt_ge(ds[i])});
    st.push_back({true, ds[i], ds[i], cnt_lt(ds[i]), cnt_gt(ds[i])});
  }
  st.push_back({false, ds[m - 1], kInf, cnt_le(ds[m - 1]), 0});
  const int S = static_cast<int>(st.size());
  std::vector<double> ub(S);  // state upper ends, nondecreasing
  std::vector<double> lb(S);
  for (int i = 0; i < S; ++i) {
    ub[i] = st[i].b;
    lb[i] = st[i].a;
  }
  // state index containing a concrete u
  auto locate = [&](double u) {
    const int pos =
        static_cast<int>(std::lower_bound(ds.begin(), ds.end(), u) - ds.begin());
    if (pos < m && ds[pos] == u) return 2 * pos + 1;
    return 2 * pos;
  };

  TopK top(topk_size(n()));
  std::uint64_t evals = 0;
  for (int i1 = 0; i1 < S; ++i1) {
    for (int i2 = 0; i2 < S; ++i2) {
      const LoState &s1 = st[i1], &s2 = st[i2];
      if (s1.pt && s2.pt) {
        const double u = s1.a + s2.a;
        const int i3 = locate(u);
        const double d = lo_value(nn, s1.L, s1.A, s2.L, s2.A, st[i3].L, st[i3].A);
        top.push({std::abs(d), d, i1, i2, i3,
                  std::numeric_limits<double>::quiet_NaN(), 0.0});
        ++evals;
        continue;
      }
      const double ulo = s1.a + s2.a, uhi = s1.b + s2.b;  // open interval
      int i3 = static_cast<int>(std::upper_bound(ub.begin(), ub.end(), ulo) -
                                ub.begin());
      for (; i3 < S && lb[i3] < uhi; ++i3) {
        const double d = lo_value(nn, s1.L, s1.A, s2.L, s2.A, st[i3].L, st[i3].A);
        top.push({std::abs(d), d, i1, i2, i3,
                  std::numeric_limits<double>::quiet_NaN(), 0.0});
        ++evals;
      }
    }
  }

  const double span = (m > 1 ? ds.back() - ds.front() : 0.0) + 1.0;
  auto in_state = [](const LoState& s, double t) {
    return s.pt ? t == s.a : (t > s.a && t < s.b);
  };
  // t1 choice respecting t1 + t2 = u with t1, t2 inside their gaps: take a
  // fraction of the joint-feasible interval (max(a1, u-b2), min(b1, u-a2)).
  auto t1_for_u = [&](const LoState& g1, const LoState& g2, double u,
                      double frac) {
    double lo = std::max(g1.a, u - g2.b);
    double hi = std::min(g1.b, u - g2.a);
    if (!std::isfinite(lo) && !std::isfinite(hi)) {
      lo = u * 0.5 - span;
      hi = u * 0.5 + span;
    } else if (!std::isfinite(lo)) {
      lo = hi - span;
    } else if (!std::isfinite(hi)) {
      hi = lo + span;
    }
    return lo + (hi - lo) * frac;
  };
  static constexpr double kFracs[] = {0.5, 0.25, 0.75, 0.382, 0.618};

  SupremumResult best{-1.0, {0.0, 0.0}, SupMode::exact, evals};
  for (const Cand& c : top.sorted_desc()) {
    const LoState &s1 = st[c.i1], &s2 = st[c.i2], &s3 = st[c.i3];
    std::vector<std::pair<double, double>> reps;
    if (s1.pt && s2.pt) {
      reps.push_back({s1.a, s2.a});
    } else {
      std::vector<double> us;
      if (s3.pt) {
        us.push_back(s3.a);
      } else {
        const double ulo = s1.a + s2.a, uhi = s1.b + s2.b;
        double olo = std::max(ulo, s3.a), ohi = std::min(uhi, s3.b);
        if (!std::isfinite(olo) && !std::isfinite(ohi)) {
          olo = -span;
          ohi = span;
        } else if (!std::isfinite(olo)) {
          olo = ohi - span;
        } else if (!std::isfinite(ohi)) {
          ohi = olo + span;
        }
        for (double uf : kFracs) us.push_back(olo + (ohi - olo) * uf);
      }
      for (double u : us) {
        if (s1.pt) {
          const double t2 = u - s1.a;
          for (double t2c : {t2, next_above(t2), next_below(t2)})
            reps.push_back({s1.a, t2c});
        } else if (s2.pt) {
          const double t1 = u - s2.a;
          for (double t1c : {t1, next_above(t1), next_below(t1)})
            reps.push_back({t1c, s2.a});
        } else {
          for (double f : {0.5, 0.25, 0.75}) {
            const double t1 = t1_for_u(s1, s2, u, f);
            const double t2 = u - t1;
            for (double t2c : {t2, next_above(t2), next_below(t2)})
              reps.push_back({t1, t2c});
          }
        }
      }
    }
    bool done = false;
    for (auto [t1, t2] : reps) {
      if (!in_state(s1, t1) || !in_state(s2, t2)) continue;
      if (diff_lo(t1, t2) == c.d) {
        best = {c.absd, {t1, t2}, SupMode::exact, evals};
        done = true;
        break;
      }
    }
    if (done) break;
  }
  if (best.value < 0.0) {
    const double t = ds.back() + span;  // beyond the data; diff is 0 there
    best = {std::abs(diff_lo(t, t)), {t, t}, SupMode::exact, evals};
  }
  return best;
}

// ---- exact enumeration: exponential ----
//
// t1 states are {0+} and the distinct positive data values (counts use <=,
// so cells are left-closed); t2 states are {0+} and the distinct positive
// stored pair differences.  For each t1 state one sweep over the
// value-sorted pair differences visits every t2 state.

SupremumResult StatEvaluator::sup_exact_ex() const {
  const long long nn = n();
  std::vector<std::pair<double, int>> ev;  // (stored difference, row index)
  ev.reserve(static_cast<std::size_t>(nn) * (nn - 1) / 2);
  for (int i = 0; i + 1 < nn; ++i)
    for (int j = i + 1; j < nn; ++j) ev.push_back({xs_[j] - xs_[i], i});
  std::sort(ev.begin(), ev.end());

  std::vector<std::pair<double, long long>> t1s;  // (state value, #{x <= t1})
  t1s.push_back({0.0, cnt_le(0.0)});
  for (std::size_t i = 0; i < xs_.size(); ++i)
    if (xs_[i] > 0.0 && (i == 0 || xs_[i] != xs_[i - 1]))
      t1s.push_back({xs_[i], cnt_le(xs_[i])});

  double minpos_data = 0.0;
  for (double v : xs_)
    if (v > 0.0) {
      minpos_data = v;
      break;
    }
  double minpos_diff = 0.0;
  for (const auto& e : ev)
    if (e.first > 0.0) {
      minpos_diff = e.first;
      break;
    }
  const double t1_zero_rep = minpos_data > 0.0 ? minpos_data / 2.0 : 1.0;
  const double t2_zero_rep = minpos_diff > 0.0 ? minpos_diff / 2.0 : 1.0;

  TopK top(topk_size(n()));
  std::uint64_t evals = 0;
  for (int k = 0; k < static_cast<int>(t1s.size()); ++k) {
    const auto [t1v, ple] = t1s[k];
    const double t1rep = k == 0 ? t1_zero_rep : t1v;
    const long long a1 = nn - ple;
    long long p2 = 0, p12 = 0;
    std::size_t p = 0;
    while (p < ev.size() && ev[p].first <= 0.0) {
      ++p2;
      if (ev[p].second < ple) ++p12;
      ++p;
    }
    double d = ex_value(nn, a1, p2, p12);
    top.push({std::abs(d), d, k, -1, 0, t1rep, t2_zero_rep});
    ++evals;
    int grp = 0;
    while (p < ev.size()) {
      const double g = ev[p].first;
      while (p < ev.size() && ev[p].first == g) {
        ++p2;
        if (ev[p].second < ple) ++p12;
        ++p;
      }
      d = ex_value(nn, a1, p2, p12);
      top.push({std::abs(d), d, k, ++grp, 0, t1rep, g});
      ++evals;
    }
  }

  SupremumResult best{-1.0, {0.0, 0.0}, SupMode::exact, evals};
  for (const Cand& c : top.sorted_desc()) {
    if (c.r1 > 0.0 && c.r2 > 0.0 && diff_ex(c.r1, c.r2) == c.d) {
      best = {c.absd, {c.r1, c.r2}, SupMode::exact, evals};
      break;
    }
  }
  if (best.value < 0.0) {
    best = {std::abs(diff_ex(t1_zero_rep, t2_zero_rep)),
            {t1_zero_rep, t2_zero_rep},
            SupMode::exact,
            evals};
  }
  return best;
}

// ---- grid search ----
//
// Candidate pools are built from the data (values, and the pairwise
// combinations that move the u axis), so they scale with the sample; axis
// grids are rank-quantile selections from the pools.  Each selected abscissa
// is probed at the point and immediately below it.

std::vector<double> StatEvaluator::axis_pool(int axis) const {
  const int nn = n();
  const int stride = std::max(1, (nn + 599) / 600);
  std::vector<double> pool;
  switch (kind_) {
    case Kind::pareto: {
      for (double v : xs_)
        if (v > 1.0) pool.push_back(v);
      for (int i = 0; i < nn; i += stride)
        for (int j = 0; j < nn; j += stride) {
          if (i == j || xs_[i] <= 0.0) continue;
          const double r = xs_[j] / xs_[i];
          if (r > 1.0 && std::isfinite(r)) pool.push_back(r);
        }
      if (pool.empty()) pool.push_back(2.0);
      break;
    }
    case Kind::logistic: {
      pool = xs_;
      for (int i = 0; i < nn; i += stride)
        for (int j = 0; j < nn; j += stride)
          if (i != j) pool.push_back(xs_[j] - xs_[i]);
      break;
    }
    case Kind::exponential: {
      if (axis == 0) {
        double minpos = 0.0;
        for (double v : xs_)
          if (v > 0.0) {
            pool.push_back(v);
            if (minpos == 0.0) minpos = v;
          }
        if (minpos > 0.0) pool.push_back(minpos / 2.0);
      } else {
        for (int i = 0; i + 1 < nn; ++i) {
          const double d = xs_[i + 1] - xs_[i];
          if (d > 0.0) pool.push_back(d);
        }
        for (int i = 0; i < nn; i += stride)
          for (int j = i + 1; j < nn; j += stride) {
            const double d = xs_[j] - xs_[i];
            if (d > 0.0) pool.push_back(d);
          }
        double minpos = kInf;
        for (double d : pool) minpos = std::min(minpos, d);
        if (std::isfinite(minpos)) pool.push_back(minpos / 2.0);
      }
      if (pool.empty()) pool.push_back(1.0);
      break;
    }
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  return pool;
}

SupremumResult StatEvaluator::sup_grid(const GridSpec& spec) const {
  const std::vector<double> pools[2] = {axis_pool(0), axis_pool(1)};
  SupremumResult best{-1.0, {0.0, 0.0}, SupMode::grid, 0};

  auto probe = [&](double t1, double t2) {
    const double d = std::abs(diff(t1, t2));
    ++best.evaluations;
    if (d > best.value) {
      best.value = d;
      best.argmax = {t1, t2};
    }
  };
  auto probe_pair = [&](double t1, double t2) {
    for (double a : {t1, next_below(t1)})
      for (double b : {t2, next_below(t2)}) probe(a, b);
  };
  // rank-quantile selection of m pool indices in [lo, hi]
  auto select = [](const std::vector<double>& pool, std::size_t lo,
                   std::size_t hi, int m) {
    std::vector<std::size_t> idx;
    if (pool.empty()) return idx;
    hi = std::min(hi, pool.size() - 1);
    const std::size_t span = hi - lo;
    const int steps = std::max(1, m - 1);
    for (int k = 0; k < m; ++k) {
      const std::size_t i = lo + (span * k + steps / 2) / steps;
      if (idx.empty() || idx.back() != i) idx.push_back(i);
    }
    return idx;
  };

  const auto sel1 = select(pools[0], 0, pools[0].size() - 1, spec.m1);
  const auto sel2 = select(pools[1], 0, pools[1].size() - 1, spec.m2);
  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i < sel1.size(); ++i)
    for (std::size_t j = 0; j < sel2.size(); ++j) {
      const double before = best.value;
      probe_pair(pools[0][sel1[i]], pools[1][sel2[j]]);
      if (best.value > before) {
        bi = i;
        bj = j;
      }
    }

  // one zoom pass: 10x rank resolution between the incumbent's neighbours
  auto zoom_range = [](const std::vector<std::size_t>& sel, std::size_t b,
                       std::size_t pool_last) {
    const std::size_t lo = b > 0 ? sel[b - 1] : sel[b];
    const std::size_t hi = b + 1 < sel.size() ? sel[b + 1] : std::min(sel[b] + 1, pool_last);
    return std::pair<std::size_t, std::size_t>(lo, hi);
  };
  if (!sel1.empty() && !sel2.empty()) {
    const auto [l1, h1] = zoom_range(sel1, bi, pools[0].size() - 1);
    const auto [l2, h2] = zoom_range(sel2, bj, pools[1].size() - 1);
    const auto z1 = select(pools[0], l1, h1, 21);
    const auto z2 = select(pools[1], l2, h2, 21);
    for (std::size_t i : z1)
      for (std::size_t j : z2) probe_pair(pools[0][i], pools[1][j]);
  }
  return best;
}

// ---- brute force ----

double brute_force_diff(Kind kind, const std::vector<double>& data, double t1,
                        double t2) {
  const long long nn = static_cast<long long>(data.size());
  if (nn > kBruteForceCap) {
    throw UsageError("brute force supports n <= " +
                     std::to_string(kBruteForceCap));
  }
  switch (kind) {
    case Kind::pareto: {
      if (nn < 2) throw UsageError("need n >= 2");
      long long h = 0, g = 0;
      for (long long i = 0; i < nn; ++i) {
        for (long long j = 0; j < nn; ++j)
          if (i != j && data[i] > t1 && data[j] > t2) ++h;
        if (data[i] > t1 * t2) ++g;
      }
      return static_cast<double>(h) /
                 (static_cast<double>(nn) * static_cast<double>(nn - 1)) -
             static_cast<double>(g) / static_cast<double>(nn);
    }
    case Kind::logistic: {
      if (nn < 3) throw UsageError("need n >= 3");
      const double u = t1 + t2;
      long long num = 0;
      for (long long i = 0; i < nn; ++i)
        for (long long j = 0; j < nn; ++j)
          for (long long k = 0; k < nn; ++k) {
            if (i == j || j == k || i == k) continue;
            if (data[i] < u && data[j] > t1 && data[k] > t2) ++num;
            if (data[i] > u && data[j] < t1 && data[k] < t2) --num;
          }
      return static_cast<double>(num) /
             (static_cast<double>(nn) * static_cast<double>(nn - 1) *
              static_cast<double>(nn - 2));
    }
    case Kind::exponential: {
      if (nn < 2) throw UsageError("need n >= 2");
      long long p1 = 0, p2 = 0, p12 = 0;
      for (long long i = 0; i < nn; ++i)
        for (long long j = i + 1; j < nn; ++j) {
          const bool b1 = std::min(data[i], data[j]) <= t1;
          const bool b2 = std::abs(data[i] - data[j]) <= t2;
          p1 += b1;
          p2 += b2;
          p12 += b1 && b2;
        }
      const long long c = nn * (nn - 1) / 2;
      return static_cast<double>(p1) * static_cast<double>(p2) /
                 (static_cast<double>(c) * static_cast<double>(c)) -
             static_cast<double>(p12) / static_cast<double>(c);
    }
  }
  return 0.0;
}

SupremumResult k_statistic(Kind kind, const Sample& sample, SupMode mode,
                           const GridSpec& spec) {
  return StatEvaluator(kind, sample.values).sup(mode, spec);
}

}  // namespace supgof
