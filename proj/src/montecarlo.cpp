#include "supgof/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "supgof/distributions.hpp"
#include "supgof/empirical.hpp"
#include "supgof/rng.hpp"

namespace supgof {

namespace {

// Stream tags.  Null tables use 0..2 (the kind), alternative sampling uses
// 16 + alt, resimulation helpers in the tests pick their own masters.
std::uint64_t null_tag(Kind k) { return static_cast<std::uint64_t>(k); }
std::uint64_t alt_tag(Alt a) { return 16 + static_cast<std::uint64_t>(a); }

double eval_stat(Kind kind, std::vector<double> xs, SupMode mode) {
  StatEvaluator ev(kind, std::move(xs));
  return ev.sup(mode).value;
}

// Runs body(r) for r in [0, reps) across `threads` workers, chunked by
// replication index.  The partition never affects results: every r maps to
// the same derived stream no matter which worker runs it.
template <class Body>
void parallel_reps(int reps, int threads, const Body& body) {
  threads = std::clamp(threads, 1, 64);
  if (threads == 1 || reps < 2 * threads) {
    for (int r = 0; r < reps; ++r) body(r);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(threads);
  for (int w = 0; w < threads; ++w) {
    const int lo = static_cast<int>(static_cast<long long>(reps) * w / threads);
    const int hi =
        static_cast<int>(static_cast<long long>(reps) * (w + 1) / threads);
    pool.emplace_back([&, lo, hi, w] {
      try {
        for (int r = lo; r < hi; ++r) body(r);
      } catch (...) {
        errs[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

std::filesystem::path cache_file(const SimPlan& plan,
                                 const std::string& cache_dir) {
  char name[160];
  std::snprintf(name, sizeof name, "crit_%s_%d_%d_%llu_%s.json",
                kind_name(plan.kind).c_str(), plan.n, plan.reps,
                static_cast<unsigned long long>(plan.seed),
                mode_name(plan.mode).c_str());
  return std::filesystem::path(cache_dir) / name;
}

bool load_cached_table(const std::filesystem::path& path, const SimPlan& plan,
                       std::vector<double>& out) {
  std::ifstream in(path);
  if (!in) return false;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception&) {
    return false;  // unreadable cache entries are recomputed, not fatal
  }
  if (j.value("kind", "") != kind_name(plan.kind)) return false;
  if (j.value("n", -1) != plan.n) return false;
  if (j.value("reps", -1) != plan.reps) return false;
  if (j.value("seed", std::uint64_t(0)) != plan.seed) return false;
  if (j.value("mode", "") != mode_name(plan.mode)) return false;
  if (!j.contains("table") || !j["table"].is_array()) return false;
  out = j["table"].get<std::vector<double>>();
  return static_cast<int>(out.size()) == plan.reps;
}

void store_cached_table(const std::filesystem::path& path, const SimPlan& plan,
                        const std::vector<double>& table) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  nlohmann::ordered_json j;
  j["kind"] = kind_name(plan.kind);
  j["n"] = plan.n;
  j["reps"] = plan.reps;
  j["seed"] = plan.seed;
  j["mode"] = mode_name(plan.mode);
  j["table"] = table;
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;  // cache is an optimization; simulation already done
    out << j << '\n';
  }
  std::filesystem::rename(tmp, path, ec);
}

}  // namespace

void validate_plan(const SimPlan& plan) {
  if (plan.reps < 100) {
    throw UsageError("reps must be >= 100 (got " + std::to_string(plan.reps) +
                     ")");
  }
  if (!(plan.alpha > 0.0 && plan.alpha < 1.0)) {
    throw UsageError("alpha must lie in (0,1)");
  }
  const int m = ustat_degree(plan.kind);
  if (plan.n < m) {
    throw UsageError("n=" + std::to_string(plan.n) + " below the minimum " +
                     std::to_string(m) + " for the " + kind_name(plan.kind) +
                     " test");
  }
  if (plan.mode == SupMode::exact && plan.n > exact_cap(plan.kind)) {
    throw UsageError("n=" + std::to_string(plan.n) +
                     " exceeds the exact-mode cap " +
                     std::to_string(exact_cap(plan.kind)) + " for " +
                     kind_name(plan.kind) + "; use grid mode");
  }
}

std::vector<double> null_table(const SimPlan& plan, int threads,
                               const std::string& cache_dir) {
  validate_plan(plan);
  std::filesystem::path path;
  if (!cache_dir.empty()) {
    path = cache_file(plan, cache_dir);
    std::vector<double> cached;
    if (load_cached_table(path, plan, cached)) return cached;
  }
  const NullFamily fam = null_family(plan.kind);
  std::vector<double> stats(plan.reps);
  parallel_reps(plan.reps, threads, [&](int r) {
    Xoshiro256 rng = Xoshiro256::derive(plan.seed, null_tag(plan.kind), r);
    std::vector<double> xs(plan.n);
    for (double& x : xs) x = fam.sample(rng);
    stats[r] = eval_stat(plan.kind, std::move(xs), plan.mode);
  });
  std::sort(stats.begin(), stats.end());
  if (!cache_dir.empty()) store_cached_table(path, plan, stats);
  return stats;
}

double table_quantile(const std::vector<double>& ascending, double alpha) {
  if (ascending.empty()) throw UsageError("empty table");
  const auto reps = static_cast<long long>(ascending.size());
  // guard against (1-alpha)*reps landing a hair above an integer
  auto k = static_cast<long long>(
      std::ceil((1.0 - alpha) * static_cast<double>(reps) - 1e-9));
  k = std::clamp(k, 1LL, reps);
  return ascending[static_cast<std::size_t>(k - 1)];
}

double critical_value(const SimPlan& plan, int threads,
                      const std::string& cache_dir) {
  return table_quantile(null_table(plan, threads, cache_dir), plan.alpha);
}

double p_value_from_table(const std::vector<double>& ascending,
                          double observed) {
  const auto ge = ascending.end() - std::lower_bound(ascending.begin(),
                                                     ascending.end(), observed);
  return (1.0 + static_cast<double>(ge)) /
         (static_cast<double>(ascending.size()) + 1.0);
}

double p_value(Kind kind, const std::vector<double>& data, int reps,
               std::uint64_t seed, SupMode mode, int threads,
               const std::string& cache_dir) {
  const double observed = eval_stat(kind, data, mode);
  SimPlan plan{kind, static_cast<int>(data.size()), reps, seed, 0.5, mode};
  return p_value_from_table(null_table(plan, threads, cache_dir), observed);
}

double power(const SimPlan& plan, Alt alt, double theta, int threads,
             const std::string& cache_dir) {
  if (alt_kind(alt) != plan.kind) {
    throw UsageError("alternative " + alt_name(alt) + " perturbs the " +
                     kind_name(alt_kind(alt)) + " null, not " +
                     kind_name(plan.kind));
  }
  const Alternative a = alternative(alt);
  a.validate_theta(theta);
  const double crit = critical_value(plan, threads, cache_dir);
  std::vector<char> reject(plan.reps, 0);
  parallel_reps(plan.reps, threads, [&](int r) {
    Xoshiro256 rng = Xoshiro256::derive(plan.seed, alt_tag(alt), r);
    std::vector<double> xs(plan.n);
    for (double& x : xs) x = a.sample(theta, rng);
    reject[r] = eval_stat(plan.kind, std::move(xs), plan.mode) > crit;
  });
  long long hits = 0;
  for (char c : reject) hits += c;
  return static_cast<double>(hits) / static_cast<double>(plan.reps);
}

std::vector<LdPoint> ld_empirical(Kind kind, double eps,
                                  const std::vector<int>& ns, int reps,
                                  std::uint64_t seed, SupMode mode,
                                  int threads, const std::string& cache_dir) {
  if (!(eps > 0.0)) throw UsageError("eps must be positive");
  if (ns.empty()) throw UsageError("empty n list");
  std::vector<LdPoint> out;
  for (int n : ns) {
    SimPlan plan{kind, n, reps, seed, 0.5, mode};
    const std::vector<double> table = null_table(plan, threads, cache_dir);
    LdPoint p;
    p.n = n;
    p.hits = table.end() -
             std::lower_bound(table.begin(), table.end(), eps);
    if (p.hits == 0) {
      p.flagged = true;
    } else {
      p.rate = -std::log(static_cast<double>(p.hits) /
                         static_cast<double>(reps)) /
               static_cast<double>(n);
    }
    out.push_back(p);
  }
  return out;
}

std::string mc_record_json(const SimPlan& plan, double value) {
  nlohmann::ordered_json j;
  j["kind"] = kind_name(plan.kind);
  j["n"] = plan.n;
  j["alpha"] = plan.alpha;
  j["reps"] = plan.reps;
  j["seed"] = plan.seed;
  j["value"] = value;
  return j.dump();
}

}  // namespace supgof
