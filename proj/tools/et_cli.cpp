// et: config-driven front end for the envelope solver library.
//
// Subcommands: solve, scan, compare, validate. Systems are described by a
// flat key = value config file (dotted keys, '#' comments); see README for
// the schema. Exit codes: 0 success, 2 config error, 3 solver
// non-convergence, 4 no bound state / no binding.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "envelope/envelope.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitNoBound = 4;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(et_status s) {
  switch (s) {
    case ET_OK:
      return 0;
    case ET_ERR_INVALID_INPUT:
      return kExitConfig;
    case ET_ERR_NO_BINDING:
    case ET_ERR_NO_BOUND_STATE:
      return kExitNoBound;
    default:
      return kExitNoConvergence;
  }
}

[[noreturn]] void fail_status(et_status s, const std::string& what) {
  std::fprintf(stderr, "error: %s: %s (%s)\n", what.c_str(), et_last_error(),
               et_status_name(s));
  std::exit(exit_code_for(s));
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ---- handle wrappers -------------------------------------------------------

using KineticPtr = std::unique_ptr<et_kinetic, decltype(&et_kinetic_free)>;
using PotentialPtr =
    std::unique_ptr<et_potential, decltype(&et_potential_free)>;
using SystemPtr = std::unique_ptr<et_system, decltype(&et_system_free)>;
using ResultPtr = std::unique_ptr<et_result, decltype(&et_result_free)>;

// ---- config file -----------------------------------------------------------

struct KineticCfg {
  std::string form;  // nonrelativistic | relativistic | ultrarelativistic | power
  double mass = 0;
  double coef = 0;
  double exponent = 0;
};

struct PotentialCfg {
  std::string form;  // power | sum
  double coef = 0;
  double exponent = 0;
  std::vector<std::pair<double, double>> terms;  // (coef, exponent)
  bool present = false;
};

struct RunConfig {
  std::string kind;  // identical | two-species
  int dim = 3;

  long long count = 0;  // identical
  KineticCfg kinetic;
  PotentialCfg potential;
  std::optional<double> q;

  long long n_a = 0, n_b = 0;  // two-species
  KineticCfg kinetic_a, kinetic_b;
  PotentialCfg v_aa, v_bb, v_ab;
  std::optional<double> q_a, q_b, q_rel;

  std::optional<double> tol;
  std::optional<int> max_iter;
  std::optional<double> bracket_growth;
  std::optional<double> damping;

  std::set<std::string> outputs{"energy", "means"};
};

class KeyValues {
 public:
  explicit KeyValues(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
      };
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError("line " + std::to_string(lineno) +
                          ": expected key = value");
      const std::string key = trim(line.substr(0, eq));
      const std::string val = trim(line.substr(eq + 1));
      if (key.empty() || val.empty())
        throw ConfigError("line " + std::to_string(lineno) +
                          ": empty key or value");
      if (!kv_.emplace(key, val).second)
        throw ConfigError("duplicate key '" + key + "'");
    }
  }

  std::optional<std::string> take(const std::string& key) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return std::nullopt;
    std::string v = it->second;
    kv_.erase(it);
    return v;
  }

  std::string require(const std::string& key) {
    auto v = take(key);
    if (!v) throw ConfigError("missing required key '" + key + "'");
    return *v;
  }

  void reject_leftovers() const {
    if (kv_.empty()) return;
    std::string msg = "unknown key(s):";
    for (const auto& [k, _] : kv_) msg += " '" + k + "'";
    throw ConfigError(msg);
  }

 private:
  std::map<std::string, std::string> kv_;
};

double parse_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size() || !std::isfinite(x)) throw std::invalid_argument(v);
    return x;
  } catch (...) {
    throw ConfigError("key '" + key + "': cannot parse number '" + v + "'");
  }
}

long long parse_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (...) {
    throw ConfigError("key '" + key + "': cannot parse integer '" + v + "'");
  }
}

KineticCfg read_kinetic(KeyValues& kv, const std::string& prefix) {
  KineticCfg k;
  k.form = kv.require(prefix + ".form");
  if (k.form == "nonrelativistic" || k.form == "relativistic") {
    k.mass = parse_double(prefix + ".mass", kv.require(prefix + ".mass"));
  } else if (k.form == "ultrarelativistic") {
    // no parameters
  } else if (k.form == "power") {
    k.coef = parse_double(prefix + ".coef", kv.require(prefix + ".coef"));
    k.exponent =
        parse_double(prefix + ".exponent", kv.require(prefix + ".exponent"));
  } else {
    throw ConfigError("key '" + prefix + ".form': unknown kinetic form '" +
                      k.form + "'");
  }
  return k;
}

PotentialCfg read_potential(KeyValues& kv, const std::string& prefix,
                            bool required) {
  PotentialCfg p;
  auto form = kv.take(prefix + ".form");
  if (!form) {
    if (required) throw ConfigError("missing required key '" + prefix + ".form'");
    return p;
  }
  p.present = true;
  p.form = *form;
  if (p.form == "power") {
    p.coef = parse_double(prefix + ".coef", kv.require(prefix + ".coef"));
    p.exponent =
        parse_double(prefix + ".exponent", kv.require(prefix + ".exponent"));
  } else if (p.form == "sum") {
    // terms = c1,b1; c2,b2; ...
    const std::string terms = kv.require(prefix + ".terms");
    std::stringstream ss(terms);
    std::string item;
    while (std::getline(ss, item, ';')) {
      const auto comma = item.find(',');
      if (comma == std::string::npos)
        throw ConfigError("key '" + prefix +
                          ".terms': each term needs 'coef,exponent'");
      p.terms.emplace_back(
          parse_double(prefix + ".terms", item.substr(0, comma)),
          parse_double(prefix + ".terms", item.substr(comma + 1)));
    }
    if (p.terms.empty())
      throw ConfigError("key '" + prefix + ".terms': no terms given");
  } else {
    throw ConfigError("key '" + prefix + ".form': unknown potential form '" +
                      p.form + "'");
  }
  return p;
}

RunConfig read_config(const std::string& path) {
  KeyValues kv(path);
  RunConfig c;
  c.kind = kv.require("system.kind");
  c.dim = static_cast<int>(parse_int("system.dim", kv.require("system.dim")));

  if (c.kind == "identical") {
    c.count = parse_int("system.count", kv.require("system.count"));
    c.kinetic = read_kinetic(kv, "kinetic");
    c.potential = read_potential(kv, "potential", true);
    if (auto v = kv.take("quantum.q")) c.q = parse_double("quantum.q", *v);
  } else if (c.kind == "two-species") {
    c.n_a = parse_int("species.a.count", kv.require("species.a.count"));
    c.n_b = parse_int("species.b.count", kv.require("species.b.count"));
    c.kinetic_a = read_kinetic(kv, "species.a.kinetic");
    c.kinetic_b = read_kinetic(kv, "species.b.kinetic");
    c.v_aa = read_potential(kv, "potential.aa", c.n_a >= 2);
    c.v_bb = read_potential(kv, "potential.bb", c.n_b >= 2);
    c.v_ab = read_potential(kv, "potential.ab", true);
    if (auto v = kv.take("quantum.q_a")) c.q_a = parse_double("quantum.q_a", *v);
    if (auto v = kv.take("quantum.q_b")) c.q_b = parse_double("quantum.q_b", *v);
    if (auto v = kv.take("quantum.q_rel"))
      c.q_rel = parse_double("quantum.q_rel", *v);
  } else {
    throw ConfigError("system.kind must be 'identical' or 'two-species'");
  }

  if (auto v = kv.take("solver.tol")) c.tol = parse_double("solver.tol", *v);
  if (auto v = kv.take("solver.max_iter"))
    c.max_iter = static_cast<int>(parse_int("solver.max_iter", *v));
  if (auto v = kv.take("solver.bracket_growth"))
    c.bracket_growth = parse_double("solver.bracket_growth", *v);
  if (auto v = kv.take("solver.damping"))
    c.damping = parse_double("solver.damping", *v);

  if (auto v = kv.take("output.quantities")) {
    c.outputs.clear();
    std::stringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto a = item.find_first_not_of(" \t");
      const auto b = item.find_last_not_of(" \t");
      if (a == std::string::npos) continue;
      item = item.substr(a, b - a + 1);
      if (item != "energy" && item != "means" && item != "residuals")
        throw ConfigError("output.quantities: unknown quantity '" + item + "'");
      c.outputs.insert(item);
    }
    if (c.outputs.empty())
      throw ConfigError("output.quantities: empty list");
  }

  kv.reject_leftovers();
  return c;
}

// ---- building C API objects -------------------------------------------------

KineticPtr build_kinetic(const KineticCfg& k) {
  et_kinetic* h = nullptr;
  if (k.form == "nonrelativistic")
    h = et_kinetic_nonrelativistic(k.mass);
  else if (k.form == "relativistic")
    h = et_kinetic_relativistic(k.mass);
  else if (k.form == "ultrarelativistic")
    h = et_kinetic_ultrarelativistic();
  else
    h = et_kinetic_power(k.coef, k.exponent);
  if (!h) throw ConfigError(std::string("kinetic law rejected: ") +
                            et_last_error());
  return {h, &et_kinetic_free};
}

PotentialPtr build_potential(const PotentialCfg& p) {
  if (!p.present) return {nullptr, &et_potential_free};
  et_potential* h = nullptr;
  if (p.form == "power") {
    h = et_potential_power(p.coef, p.exponent);
  } else {
    std::vector<double> cs, es;
    for (const auto& [cc, ee] : p.terms) {
      cs.push_back(cc);
      es.push_back(ee);
    }
    h = et_potential_sum(cs.data(), es.data(), cs.size());
  }
  if (!h) throw ConfigError(std::string("potential rejected: ") +
                            et_last_error());
  return {h, &et_potential_free};
}

double ground_q(long long n, int dim) {
  double q = 0;
  if (et_status s = et_boson_ground_q(n, dim, &q); s != ET_OK)
    throw ConfigError(std::string("quantum number: ") + et_last_error());
  return q;
}

SystemPtr build_system(const RunConfig& c) {
  if (c.kind == "identical") {
    auto kin = build_kinetic(c.kinetic);
    auto pot = build_potential(c.potential);
    const double q = c.q ? *c.q : ground_q(c.count, c.dim);
    et_system* s = et_system_identical(c.count, c.dim, kin.get(), pot.get(), q);
    if (!s) throw ConfigError(std::string("system rejected: ") +
                              et_last_error());
    return {s, &et_system_free};
  }
  auto ka = build_kinetic(c.kinetic_a);
  auto kb = build_kinetic(c.kinetic_b);
  auto vaa = build_potential(c.v_aa);
  auto vbb = build_potential(c.v_bb);
  auto vab = build_potential(c.v_ab);
  const double qa = c.q_a ? *c.q_a : ground_q(c.n_a, c.dim);
  const double qb = c.q_b ? *c.q_b : ground_q(c.n_b, c.dim);
  const double qr = c.q_rel ? *c.q_rel : ground_q(2, c.dim);
  et_system* s = et_system_two_species(c.n_a, c.n_b, c.dim, ka.get(), kb.get(),
                                       vaa.get(), vbb.get(), vab.get(), qa, qb,
                                       qr);
  if (!s) throw ConfigError(std::string("system rejected: ") +
                            et_last_error());
  return {s, &et_system_free};
}

et_options make_options(const RunConfig& c, std::optional<double> tol_flag,
                        std::optional<int> max_iter_flag) {
  et_options opt;
  et_options_init(&opt);
  if (const char* env = std::getenv("ET_SOLVER_TOL");
      env && env[0] != '\0') {
    try {
      opt.tol = std::stod(env);
    } catch (...) {
      throw ConfigError("ET_SOLVER_TOL is not a number");
    }
  }
  if (c.tol) opt.tol = *c.tol;
  if (c.max_iter) opt.max_iter = *c.max_iter;
  if (c.bracket_growth) opt.bracket_growth = *c.bracket_growth;
  if (c.damping) opt.damping = *c.damping;
  if (tol_flag) opt.tol = *tol_flag;
  if (max_iter_flag) opt.max_iter = *max_iter_flag;
  return opt;
}

// ---- output helpers ----------------------------------------------------------

std::vector<std::pair<std::string, double>> result_means(const et_result* r) {
  std::vector<std::pair<std::string, double>> means;
  for (size_t i = 0; i < et_result_mean_count(r); ++i) {
    const char* name = et_result_mean_name(r, i);
    double v = 0;
    et_result_mean(r, name, &v);
    means.emplace_back(name, v);
  }
  return means;
}

std::vector<double> result_residuals(const et_system* s, const et_result* r) {
  size_t count = 0;
  if (et_residuals(s, r, nullptr, 0, &count) != ET_OK) return {};
  std::vector<double> res(count);
  et_residuals(s, r, res.data(), res.size(), &count);
  return res;
}

// The superset of mean columns for a system kind, so scan rows line up even
// when the dispatch (and therefore the reported means) changes mid-scan.
std::vector<std::string> mean_columns(const RunConfig& c) {
  if (c.kind == "identical") return {"p0", "rho0"};
  return {"p_a",       "p_b",       "P0",        "r_aa",      "r_bb",
          "R0",        "p_prime_a", "p_prime_b", "r_prime_0"};
}

// ---- oracle selection ----------------------------------------------------------

struct OracleOutcome {
  bool available = false;
  double energy = 0;
  double est_accuracy = 0;
  std::string method;
  std::string why_not;
};

bool quantum_to_nl(double q, int dim, long long* n, long long* l) {
  const double x = q - (dim == 1 ? 0.5 : dim * 0.5);
  const double r = std::round(x);
  if (r < 0 || std::abs(x - r) > 1e-9) return false;
  const long long k = static_cast<long long>(r);
  *l = k % 2;
  *n = k / 2;
  return true;
}

OracleOutcome run_oracle(const RunConfig& c, const et_system* sys) {
  OracleOutcome o;
  // Exact oscillator level, when the laws allow it.
  if (double e = 0; et_oracle_exact_ho(sys, &e) == ET_OK) {
    o.available = true;
    o.energy = e;
    o.method = "exact-ho";
    return o;
  }

  // Two-body numeric reference for quadratic kinetic laws.
  double mu = 0, q = 0;
  bool two_body = false;
  PotentialPtr pot{nullptr, &et_potential_free};
  if (c.kind == "identical" && c.count == 2 &&
      c.kinetic.form == "nonrelativistic") {
    two_body = true;
    mu = c.kinetic.mass / 2;
    q = c.q ? *c.q : ground_q(2, c.dim);
    pot = build_potential(c.potential);
  } else if (c.kind == "two-species" && c.n_a == 1 && c.n_b == 1 &&
             c.kinetic_a.form == "nonrelativistic" &&
             c.kinetic_b.form == "nonrelativistic") {
    two_body = true;
    mu = c.kinetic_a.mass * c.kinetic_b.mass /
         (c.kinetic_a.mass + c.kinetic_b.mass);
    q = c.q_rel ? *c.q_rel : ground_q(2, c.dim);
    pot = build_potential(c.v_ab);
  }
  if (!two_body) {
    o.why_not = "no oracle for this system (not oscillator-exact and not a "
                "nonrelativistic two-body problem)";
    return o;
  }
  long long n = 0, l = 0;
  if (!quantum_to_nl(q, c.dim, &n, &l)) {
    o.why_not = "no oracle: Q does not map to integer quantum numbers";
    return o;
  }
  double e = 0, acc = 0;
  const et_status s =
      et_oracle_radial_two_body(mu, pot.get(), c.dim, n, l, 0, &e, &acc);
  if (s != ET_OK) {
    o.why_not = std::string("radial oracle unavailable: ") + et_last_error();
    return o;
  }
  o.available = true;
  o.energy = e;
  o.est_accuracy = acc;
  o.method = "radial-numeric";
  return o;
}

// ---- commands -----------------------------------------------------------------

int cmd_solve(const std::string& config_path, const std::string& out_path,
              std::optional<double> tol, std::optional<int> max_iter) {
  const RunConfig cfg = read_config(config_path);
  auto sys = build_system(cfg);
  const et_options opt = make_options(cfg, tol, max_iter);

  et_result* raw = nullptr;
  if (et_status s = et_solve(sys.get(), &opt, &raw); s != ET_OK)
    fail_status(s, "solve failed");
  ResultPtr res{raw, &et_result_free};

  std::printf("method: %s\n", et_result_method(res.get()));
  if (cfg.outputs.count("energy"))
    std::printf("energy: %s\n", fmt17(et_result_energy(res.get())).c_str());
  if (cfg.outputs.count("means"))
    for (const auto& [name, v] : result_means(res.get()))
      std::printf("%s: %s\n", name.c_str(), fmt17(v).c_str());
  std::vector<double> residuals;
  if (cfg.outputs.count("residuals")) {
    residuals = result_residuals(sys.get(), res.get());
    std::printf("residuals:");
    for (double r : residuals) std::printf(" %s", fmt17(r).c_str());
    std::printf("\n");
  }
  std::printf("residual_norm: %s\n",
              fmt17(et_result_residual_norm(res.get())).c_str());
  std::printf("iterations: %d\n", et_result_iterations(res.get()));
  if (et_result_ambiguous(res.get()))
    std::printf("note: multiple roots bracketed; lowest energy reported\n");

  if (!out_path.empty()) {
    nlohmann::json j;
    j["method"] = et_result_method(res.get());
    j["energy"] = et_result_energy(res.get());
    nlohmann::json means = nlohmann::json::object();
    for (const auto& [name, v] : result_means(res.get())) means[name] = v;
    j["means"] = means;
    j["residual_norm"] = et_result_residual_norm(res.get());
    j["iterations"] = et_result_iterations(res.get());
    if (cfg.outputs.count("residuals")) j["residuals"] = residuals;
    std::ofstream out(out_path);
    if (!out) {
      std::fprintf(stderr, "error: cannot write '%s'\n", out_path.c_str());
      return kExitConfig;
    }
    out << j.dump(2) << "\n";
  }
  return 0;
}

std::string sanitize_csv(std::string s) {
  for (char& ch : s)
    if (ch == ',' || ch == '\n') ch = ';';
  return s;
}

int cmd_scan(const std::string& config_path, const std::string& out_path,
             const std::string& var, double from, double to, int steps,
             std::optional<double> tol, std::optional<int> max_iter) {
  const RunConfig base = read_config(config_path);
  if (steps < 1) throw ConfigError("--steps must be >= 1");

  const bool integer_var = var == "n" || var == "n_a" || var == "n_b";
  if ((var == "n" || var == "q") && base.kind != "identical")
    throw ConfigError("scan variable '" + var +
                      "' applies to identical systems");
  if ((var == "n_a" || var == "n_b") && base.kind != "two-species")
    throw ConfigError("scan variable '" + var +
                      "' applies to two-species systems");
  if (var != "n" && var != "n_a" && var != "n_b" && var != "q" &&
      var != "coupling")
    throw ConfigError("unknown scan variable '" + var + "'");

  const auto cols = mean_columns(base);
  std::ostringstream csv;
  csv << var << ",energy";
  for (const auto& cname : cols) csv << "," << cname;
  csv << ",residual_norm,wall_time_s,error\n";

  for (int i = 0; i < steps; ++i) {
    double value = steps == 1 ? from : from + (to - from) * i / (steps - 1);
    if (integer_var) value = std::round(value);
    RunConfig cfg = base;
    if (var == "n")
      cfg.count = static_cast<long long>(value);
    else if (var == "n_a")
      cfg.n_a = static_cast<long long>(value);
    else if (var == "n_b")
      cfg.n_b = static_cast<long long>(value);
    else if (var == "q")
      cfg.q = value;
    else if (var == "coupling") {
      PotentialCfg& target =
          cfg.kind == "identical" ? cfg.potential : cfg.v_ab;
      if (target.form == "power")
        target.coef = value;
      else
        target.terms.at(0).first = value;
    }

    csv << fmt17(value);
    try {
      auto sys = build_system(cfg);
      const et_options opt = make_options(cfg, tol, max_iter);
      const auto t0 = std::chrono::steady_clock::now();
      et_result* raw = nullptr;
      const et_status s = et_solve(sys.get(), &opt, &raw);
      const auto t1 = std::chrono::steady_clock::now();
      if (s != ET_OK) throw ConfigError(et_last_error());
      ResultPtr res{raw, &et_result_free};
      csv << "," << fmt17(et_result_energy(res.get()));
      const auto means = result_means(res.get());
      for (const auto& cname : cols) {
        csv << ",";
        for (const auto& [mname, mv] : means)
          if (mname == cname) {
            csv << fmt17(mv);
            break;
          }
      }
      csv << "," << fmt17(et_result_residual_norm(res.get())) << ","
          << fmt17(std::chrono::duration<double>(t1 - t0).count()) << ",\n";
    } catch (const std::exception& e) {
      csv << ",";  // energy
      for (size_t k = 0; k < cols.size(); ++k) csv << ",";
      csv << ",,," << sanitize_csv(e.what()) << "\n";
    }
  }

  std::fputs(csv.str().c_str(), stdout);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      std::fprintf(stderr, "error: cannot write '%s'\n", out_path.c_str());
      return kExitConfig;
    }
    out << csv.str();
  }
  return 0;
}

int cmd_compare(const std::string& config_path, std::optional<double> tol,
                std::optional<int> max_iter) {
  const RunConfig cfg = read_config(config_path);
  auto sys = build_system(cfg);
  const et_options opt = make_options(cfg, tol, max_iter);

  et_result* raw = nullptr;
  if (et_status s = et_solve(sys.get(), &opt, &raw); s != ET_OK)
    fail_status(s, "compact route failed");
  ResultPtr compact{raw, &et_result_free};
  const double e_compact = et_result_energy(compact.get());

  raw = nullptr;
  if (et_status s = et_extremize(sys.get(), &opt, &raw); s != ET_OK)
    fail_status(s, "extremization route failed");
  ResultPtr extremized{raw, &et_result_free};
  const double e_ext = et_result_energy(extremized.get());

  std::printf("%-16s %-26s %s\n", "route", "energy", "comparison");
  std::printf("%-16s %-26s\n", "compact", fmt17(e_compact).c_str());
  std::printf("%-16s %-26s abs %.3e  rel %.3e\n", "extremization",
              fmt17(e_ext).c_str(), std::abs(e_ext - e_compact),
              std::abs(e_ext - e_compact) / std::max(1.0, std::abs(e_compact)));

  const OracleOutcome orc = run_oracle(cfg, sys.get());
  if (orc.available) {
    const double d = e_compact - orc.energy;
    std::printf("%-16s %-26s ET-oracle %+.6e (%s)\n",
                ("oracle[" + orc.method + "]").c_str(),
                fmt17(orc.energy).c_str(), d,
                d > 0 ? "upper bound" : "lower bound");
    if (orc.method == "radial-numeric")
      std::printf("oracle accuracy: %.2e relative\n", orc.est_accuracy);
  } else {
    std::printf("%-16s %s\n", "oracle", orc.why_not.c_str());
  }
  return 0;
}

struct ValidatePrinter {
  int count = 0;
};

void validate_print(const char* name, int32_t pass, const char* detail,
                    void* user) {
  auto* p = static_cast<ValidatePrinter*>(user);
  ++p->count;
  std::printf("%-40s %s  %s\n", name, pass ? "PASS" : "FAIL", detail);
}

int cmd_validate() {
  ValidatePrinter p;
  const int32_t failures = et_validate_run(&validate_print, &p);
  if (failures < 0) {
    std::fprintf(stderr, "error: validation battery aborted: %s\n",
                 et_last_error());
    return 1;
  }
  std::printf("%d/%d checks passed\n", p.count - failures, p.count);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"envelope-theory solver front end"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  std::optional<double> tol;
  std::optional<int> max_iter;
  std::string scan_var;
  double from = 0, to = 0;
  int steps = 1;

  auto add_common = [&](CLI::App* cmd, bool need_config) {
    auto* c = cmd->add_option("--config", config_path, "config file path");
    if (need_config) c->required();
    cmd->add_option("--tol", tol, "residual tolerance override");
    cmd->add_option("--max-iter", max_iter, "iteration budget override");
  };

  auto* solve = app.add_subcommand("solve", "solve one system");
  add_common(solve, true);
  solve->add_option("--out", out_path, "write a JSON record here");

  auto* scan = app.add_subcommand("scan", "sweep a variable, emit CSV");
  add_common(scan, true);
  scan->add_option("--out", out_path, "also write the CSV here");
  scan->add_option("--scan-var", scan_var, "one of n, n_a, n_b, q, coupling")
      ->required();
  scan->add_option("--from", from, "first value")->required();
  scan->add_option("--to", to, "last value")->required();
  scan->add_option("--steps", steps, "number of points")->required();

  auto* compare = app.add_subcommand(
      "compare", "compact vs extremization vs oracle");
  add_common(compare, true);

  app.add_subcommand("validate", "run the invariant battery");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(config_path, out_path, tol, max_iter);
    if (scan->parsed())
      return cmd_scan(config_path, out_path, scan_var, from, to, steps, tol,
                      max_iter);
    if (compare->parsed()) return cmd_compare(config_path, tol, max_iter);
    return cmd_validate();
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
