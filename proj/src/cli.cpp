#include "supgof/cli.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "supgof/bahadur.hpp"
#include "supgof/common.hpp"
#include "supgof/empirical.hpp"
#include "supgof/montecarlo.hpp"
#include "supgof/projection_variance.hpp"

namespace supgof {

namespace {

// Every key a config file may carry; keys meant for a different subcommand
// are ignored so one file can drive a whole study.
const std::set<std::string> kAllKeys = {
    "kind", "alt",  "data",       "alpha",  "reps",    "seed",   "mode",
    "grid", "which", "convention", "theta", "n",       "eps",    "ns",
    "out",  "threads", "cache-dir", "config", "format", "all"};

std::string trimmed(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// One subcommand's option set.  CLI11 writes raw strings into `v`; the
// config file fills whatever the command line left unset (flags win), and
// the typed getters below do all conversion so errors read the same either
// way.  Required options are enforced after the merge, not by the parser.
struct Ctx {
  CLI::App* cmd = nullptr;
  std::map<std::string, std::string> v;
  std::map<std::string, CLI::Option*> opt;
  std::map<std::string, bool*> flags;
  std::set<std::string> present;

  void add(const std::string& key, const std::string& help) {
    opt[key] = cmd->add_option("--" + key, v[key], help);
  }
  void add_flag(const std::string& key, bool* dst, const std::string& help) {
    flags[key] = dst;
    opt[key] = cmd->add_flag("--" + key, *dst, help);
  }
  bool has(const std::string& key) const { return present.count(key) != 0; }
};

bool parse_bool(const std::string& key, const std::string& s) {
  if (s == "1" || s == "true" || s == "yes") return true;
  if (s == "0" || s == "false" || s == "no") return false;
  throw UsageError("--" + key + ": cannot parse '" + s + "' as a boolean");
}

void mark_present(Ctx& ctx) {
  for (const auto& [key, o] : ctx.opt)
    if (o->count() > 0) ctx.present.insert(key);
}

void apply_config(Ctx& ctx, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("config: cannot open " + path);
  const std::set<std::string> from_flags = ctx.present;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trimmed(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) +
                       ": expected key=value");
    }
    const std::string key = trimmed(line.substr(0, eq));
    const std::string val = trimmed(line.substr(eq + 1));
    if (key.empty()) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": empty key");
    }
    if (ctx.opt.count(key) != 0) {
      if (from_flags.count(key) != 0) continue;  // flags win
      if (auto it = ctx.flags.find(key); it != ctx.flags.end()) {
        *it->second = parse_bool(key, val);
      } else {
        ctx.v[key] = val;
      }
      ctx.present.insert(key);
    } else if (kAllKeys.count(key) == 0) {
      throw UsageError(path + ":" + std::to_string(lineno) +
                       ": unknown key '" + key + "'");
    }
  }
}

const std::string& require_str(const Ctx& ctx, const std::string& key) {
  if (!ctx.has(key)) {
    throw UsageError("--" + key + " is required for '" +
                     ctx.cmd->get_name() + "'");
  }
  return ctx.v.at(key);
}

std::string str_or(const Ctx& ctx, const std::string& key,
                   const std::string& def) {
  return ctx.has(key) ? ctx.v.at(key) : def;
}

double to_num(const std::string& key, const std::string& s) {
  const char* p = s.c_str();
  char* end = nullptr;
  const double x = std::strtod(p, &end);
  if (end == p || *end != '\0' || !std::isfinite(x)) {
    throw UsageError("--" + key + ": cannot parse '" + s + "' as a number");
  }
  return x;
}

long long to_int(const std::string& key, const std::string& s) {
  const char* p = s.c_str();
  char* end = nullptr;
  const long long x = std::strtoll(p, &end, 10);
  if (end == p || *end != '\0') {
    throw UsageError("--" + key + ": cannot parse '" + s + "' as an integer");
  }
  return x;
}

double num_or(const Ctx& ctx, const std::string& key, double def) {
  return ctx.has(key) ? to_num(key, ctx.v.at(key)) : def;
}

long long int_or(const Ctx& ctx, const std::string& key, long long def) {
  return ctx.has(key) ? to_int(key, ctx.v.at(key)) : def;
}

int reps_or(const Ctx& ctx, long long def) {
  const long long r = int_or(ctx, "reps", def);
  if (r < 1 || r > 100000000) {
    throw UsageError("--reps out of range (1 .. 1e8)");
  }
  return static_cast<int>(r);
}

int threads_of(const Ctx& ctx) {
  const long long t = int_or(ctx, "threads", 1);
  if (t < 1 || t > 64) throw UsageError("--threads out of range (1 .. 64)");
  return static_cast<int>(t);
}

std::uint64_t seed_of(const Ctx& ctx, std::ostream& err) {
  if (!ctx.has("seed")) {
    err << "seed: " << kDefaultSeed << " (default; pass --seed to vary)\n";
    return kDefaultSeed;
  }
  const std::string& s = ctx.v.at("seed");
  const char* p = s.c_str();
  char* end = nullptr;
  const unsigned long long x = std::strtoull(p, &end, 10);
  if (end == p || *end != '\0') {
    throw UsageError("--seed: cannot parse '" + s + "'");
  }
  err << "seed: " << x << "\n";
  return x;
}

SupMode mode_of(const Ctx& ctx) {
  return parse_mode(str_or(ctx, "mode", "exact"));
}

GridSpec grid_of(const Ctx& ctx, const std::string& def) {
  const std::string s = str_or(ctx, "grid", def);
  const auto x = s.find_first_of("xX");
  if (x == std::string::npos || x == 0 || x + 1 == s.size()) {
    throw UsageError("--grid expects AxB, e.g. 100x100 (got '" + s + "')");
  }
  GridSpec g;
  g.m1 = static_cast<int>(to_int("grid", s.substr(0, x)));
  g.m2 = static_cast<int>(to_int("grid", s.substr(x + 1)));
  if (g.m1 < 1 || g.m2 < 1 || g.m1 > 20000 || g.m2 > 20000) {
    throw UsageError("--grid dimensions out of range (1 .. 20000)");
  }
  return g;
}

std::vector<int> ns_of(const Ctx& ctx, const std::string& def) {
  const std::string s = str_or(ctx, "ns", def);
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trimmed(item);
    if (item.empty()) continue;
    out.push_back(static_cast<int>(to_int("ns", item)));
  }
  if (out.empty()) throw UsageError("--ns: no sample sizes in '" + s + "'");
  return out;
}

void check_format(const Ctx& ctx, const std::string& supported) {
  const std::string f = str_or(ctx, "format", supported);
  if (f != supported) {
    throw UsageError("'" + ctx.cmd->get_name() + "' emits " + supported +
                     " only (got --format " + f + ")");
  }
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

// ---- subcommand handlers; each returns the full payload ----

std::string run_test(const Ctx& ctx, std::ostream& err) {
  check_format(ctx, "json");
  const Kind kind = parse_kind(require_str(ctx, "kind"));
  const Sample sample = load_sample(require_str(ctx, "data"));
  const SupMode mode = mode_of(ctx);
  const SupremumResult res = k_statistic(kind, sample, mode);
  SimPlan plan{kind, static_cast<int>(sample.values.size()),
               reps_or(ctx, 10000), seed_of(ctx, err),
               num_or(ctx, "alpha", 0.05), mode};
  const auto table = null_table(plan, threads_of(ctx),
                                str_or(ctx, "cache-dir", "mc_cache"));
  const double crit = table_quantile(table, plan.alpha);
  nlohmann::ordered_json j;
  j["statistic"] = res.value;
  j["argmax"] = {res.argmax[0], res.argmax[1]};
  j["p_value"] = p_value_from_table(table, res.value);
  j["critical_value"] = crit;
  j["decision"] = res.value > crit ? "reject" : "retain";
  return j.dump(2) + "\n";
}

std::string run_critvals(const Ctx& ctx, std::ostream& err) {
  check_format(ctx, "json");
  const Kind kind = parse_kind(require_str(ctx, "kind"));
  const SupMode mode = mode_of(ctx);
  const double alpha = num_or(ctx, "alpha", 0.05);
  const int reps = reps_or(ctx, 10000);
  const std::uint64_t seed = seed_of(ctx, err);
  const int threads = threads_of(ctx);
  const std::string cache = str_or(ctx, "cache-dir", "mc_cache");
  std::vector<int> ns;
  {
    std::stringstream ss(require_str(ctx, "n"));
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trimmed(item);
      if (!item.empty()) ns.push_back(static_cast<int>(to_int("n", item)));
    }
  }
  if (ns.empty()) throw UsageError("--n: no sample sizes given");
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (int n : ns) {
    SimPlan plan{kind, n, reps, seed, alpha, mode};
    const double c = critical_value(plan, threads, cache);
    arr.push_back(nlohmann::ordered_json::parse(mc_record_json(plan, c)));
  }
  return arr.dump(2) + "\n";
}

std::string run_power(const Ctx& ctx, std::ostream& err) {
  check_format(ctx, "json");
  const Alt alt = parse_alt(require_str(ctx, "alt"));
  const Kind kind = ctx.has("kind") ? parse_kind(ctx.v.at("kind"))
                                    : alt_kind(alt);
  if (kind != alt_kind(alt)) {
    throw UsageError("alternative " + alt_name(alt) + " belongs to the " +
                     kind_name(alt_kind(alt)) + " test, not " +
                     kind_name(kind));
  }
  const double theta = to_num("theta", require_str(ctx, "theta"));
  SimPlan plan{kind, static_cast<int>(to_int("n", require_str(ctx, "n"))),
               reps_or(ctx, 10000), seed_of(ctx, err),
               num_or(ctx, "alpha", 0.05), mode_of(ctx)};
  const int threads = threads_of(ctx);
  const std::string cache = str_or(ctx, "cache-dir", "mc_cache");
  const double pw = power(plan, alt, theta, threads, cache);
  nlohmann::ordered_json j;
  j["kind"] = kind_name(kind);
  j["alt"] = alt_name(alt);
  j["theta"] = theta;
  j["n"] = plan.n;
  j["alpha"] = plan.alpha;
  j["reps"] = plan.reps;
  j["seed"] = plan.seed;
  j["critical_value"] = critical_value(plan, threads, cache);
  j["power"] = pw;
  return j.dump(2) + "\n";
}

std::string run_surface(const Ctx& ctx, std::ostream&) {
  check_format(ctx, "csv");
  const Kind kind = parse_kind(require_str(ctx, "kind"));
  const GridSpec g = grid_of(ctx, "100x100");
  const std::string which = str_or(ctx, "which", "variance");
  std::ostringstream os;
  if (which == "variance") {
    surface_csv(os, kind, g.m1, g.m2,
                [kind](double t1, double t2) { return sigma2(kind, t1, t2); });
  } else if (which == "aprime") {
    const Alt alt = parse_alt(require_str(ctx, "alt"));
    surface_csv(os, kind, g.m1, g.m2, [kind, alt](double t1, double t2) {
      return a_prime(kind, alt, t1, t2);
    });
  } else {
    throw UsageError("--which must be variance or aprime (got '" + which +
                     "')");
  }
  return os.str();
}

std::string run_efficiency(const Ctx& ctx, bool all, std::ostream&) {
  const Convention conv =
      parse_convention(str_or(ctx, "convention", "paper-compat"));
  if (!all) {
    check_format(ctx, "json");
    const Kind kind = parse_kind(require_str(ctx, "kind"));
    const Alt alt = parse_alt(require_str(ctx, "alt"));
    return efficiency_json(efficiency(kind, alt, conv)) + "\n";
  }
  const std::string fmt = str_or(ctx, "format", "csv");
  const auto reports = efficiency_all(conv);
  if (fmt == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports)
      arr.push_back(nlohmann::ordered_json::parse(efficiency_json(r)));
    return arr.dump(2) + "\n";
  }
  if (fmt != "csv") {
    throw UsageError("'efficiency --all' emits csv or json (got --format " +
                     fmt + ")");
  }
  std::string out =
      "kind,alt,convention,ld_coef,b_coef,kl2_coef,efficiency,published,note\n";
  char buf[160];
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof buf, ",%.10g,%.10g,%.10g,%.10g,%.10g,",
                  r.ld_coef, r.b_coef, r.kl2_coef, r.efficiency,
                  r.paper_value);
    out += kind_name(r.kind) + "," + alt_name(r.alt) + "," +
           convention_name(r.convention) + buf +
           csv_quote(r.discrepancy_note) + "\n";
  }
  return out;
}

std::string run_ldcheck(const Ctx& ctx, std::ostream& err) {
  check_format(ctx, "json");
  const Kind kind = parse_kind(require_str(ctx, "kind"));
  const double eps = to_num("eps", require_str(ctx, "eps"));
  const std::vector<int> ns = ns_of(ctx, "50,100,200");
  const int reps = reps_or(ctx, 100000);
  const std::uint64_t seed = seed_of(ctx, err);
  const SupMode mode = mode_of(ctx);
  const auto points =
      ld_empirical(kind, eps, ns, reps, seed, mode, threads_of(ctx),
                   str_or(ctx, "cache-dir", "mc_cache"));
  nlohmann::ordered_json j;
  j["kind"] = kind_name(kind);
  j["eps"] = eps;
  j["reps"] = reps;
  j["seed"] = seed;
  j["mode"] = mode_name(mode);
  j["prediction"] = ld_coefficient(kind) * eps * eps;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& p : points) {
    nlohmann::ordered_json q;
    q["n"] = p.n;
    q["hits"] = p.hits;
    if (p.flagged) {
      q["rate"] = nullptr;
      q["flagged"] = true;
    } else {
      q["rate"] = p.rate;
      q["flagged"] = false;
    }
    arr.push_back(q);
  }
  j["points"] = arr;
  return j.dump(2) + "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "Supremum-type goodness-of-fit tests for the Pareto, logistic and "
      "exponential families, with efficiency and large-deviation tooling"};
  app.require_subcommand(1);

  Ctx test, critvals, power_c, surface, eff, ldcheck;
  bool eff_all = false;

  test.cmd = app.add_subcommand("test", "Run the test on a data file");
  test.add("kind", "null family: pareto|logistic|exp");
  test.add("data", "newline-delimited sample ('#' comments)");
  test.add("alpha", "level (default 0.05)");
  test.add("reps", "null replications (default 10000)");
  test.add("seed", "master seed (default printed to stderr)");
  test.add("mode", "statistic evaluation: exact|grid (default exact)");
  test.add("threads", "worker threads (default 1; results identical)");
  test.add("cache-dir", "critical-table cache ('' disables; default mc_cache)");
  test.add("out", "write output here instead of stdout");
  test.add("config", "key=value defaults file (flags win)");
  test.add("format", "output format (json)");

  critvals.cmd =
      app.add_subcommand("critvals", "Simulate critical-value records");
  critvals.add("kind", "null family: pareto|logistic|exp");
  critvals.add("n", "sample size, or comma list 25,50,100");
  critvals.add("alpha", "level (default 0.05)");
  critvals.add("reps", "null replications (default 10000)");
  critvals.add("seed", "master seed (default printed to stderr)");
  critvals.add("mode", "statistic evaluation: exact|grid (default exact)");
  critvals.add("threads", "worker threads (default 1)");
  critvals.add("cache-dir", "cache directory ('' disables)");
  critvals.add("out", "write output here instead of stdout");
  critvals.add("config", "key=value defaults file (flags win)");
  critvals.add("format", "output format (json)");

  power_c.cmd =
      app.add_subcommand("power", "Rejection frequency under an alternative");
  power_c.add("alt", "mixture|leyp|shifted|gld|makeham|weibull");
  power_c.add("kind", "optional; must match the alternative's family");
  power_c.add("theta", "alternative parameter");
  power_c.add("n", "sample size");
  power_c.add("alpha", "level (default 0.05)");
  power_c.add("reps", "replications (default 10000)");
  power_c.add("seed", "master seed (default printed to stderr)");
  power_c.add("mode", "statistic evaluation: exact|grid (default exact)");
  power_c.add("threads", "worker threads (default 1)");
  power_c.add("cache-dir", "cache directory ('' disables)");
  power_c.add("out", "write output here instead of stdout");
  power_c.add("config", "key=value defaults file (flags win)");
  power_c.add("format", "output format (json)");

  surface.cmd =
      app.add_subcommand("surface", "Dump a surface as t1,t2,value CSV");
  surface.add("kind", "null family: pareto|logistic|exp");
  surface.add("which", "variance|aprime (default variance)");
  surface.add("alt", "alternative (required for --which aprime)");
  surface.add("grid", "grid AxB at quantile-spaced points (default 100x100)");
  surface.add("out", "write output here instead of stdout");
  surface.add("config", "key=value defaults file (flags win)");
  surface.add("format", "output format (csv)");

  eff.cmd = app.add_subcommand("efficiency", "Local efficiency reports");
  eff.add("kind", "null family (with --alt)");
  eff.add("alt", "alternative (with --kind)");
  eff.add_flag("all", &eff_all, "all six alternatives as a CSV table");
  eff.add("convention", "slope scaling: lemma|paper-compat (default)");
  eff.add("out", "write output here instead of stdout");
  eff.add("config", "key=value defaults file (flags win)");
  eff.add("format", "json, or csv for --all (default csv there)");

  ldcheck.cmd = app.add_subcommand(
      "ldcheck", "Empirical large-deviation rates vs. prediction");
  ldcheck.add("kind", "null family: pareto|logistic|exp");
  ldcheck.add("eps", "tail threshold for P{K_n >= eps}");
  ldcheck.add("ns", "comma list of sample sizes (default 50,100,200)");
  ldcheck.add("reps", "replications per n (default 100000)");
  ldcheck.add("seed", "master seed (default printed to stderr)");
  ldcheck.add("mode", "statistic evaluation: exact|grid (default exact)");
  ldcheck.add("threads", "worker threads (default 1)");
  ldcheck.add("cache-dir", "cache directory ('' disables)");
  ldcheck.add("out", "write output here instead of stdout");
  ldcheck.add("config", "key=value defaults file (flags win)");
  ldcheck.add("format", "output format (json)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    Ctx* ctx = nullptr;
    for (Ctx* c : {&test, &critvals, &power_c, &surface, &eff, &ldcheck})
      if (c->cmd->parsed()) ctx = c;
    if (ctx == nullptr) throw UsageError("no subcommand given");
    mark_present(*ctx);
    if (ctx->has("config")) apply_config(*ctx, ctx->v.at("config"));

    std::string payload;
    const std::string name = ctx->cmd->get_name();
    if (name == "test") payload = run_test(*ctx, err);
    else if (name == "critvals") payload = run_critvals(*ctx, err);
    else if (name == "power") payload = run_power(*ctx, err);
    else if (name == "surface") payload = run_surface(*ctx, err);
    else if (name == "efficiency") payload = run_efficiency(*ctx, eff_all, err);
    else payload = run_ldcheck(*ctx, err);

    if (ctx->has("out")) {
      const std::string& path = ctx->v.at("out");
      std::ofstream f(path);
      if (!f) throw UsageError("cannot open --out file " + path);
      f << payload;
    } else {
      out << payload;
    }
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace supgof
