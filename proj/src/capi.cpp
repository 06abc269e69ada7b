#include "envelope/envelope.h"

#include <cstring>
#include <optional>
#include <string>
#include <variant>

#include "compact.hpp"
#include "extremization.hpp"
#include "oracle.hpp"
#include "validate.hpp"

struct et_kinetic {
  et::KineticLaw law;
};
struct et_potential {
  et::PotentialLaw law;
};
struct et_system {
  std::variant<et::IdenticalSystemSpec, et::TwoSpeciesSystemSpec> spec;
};
struct et_result {
  et::Solution sol;
  std::optional<et::AuxiliaryParameters> aux;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

et_status status_of(const std::exception& e) {
  set_error(e.what());
  if (dynamic_cast<const et::InvalidInput*>(&e)) return ET_ERR_INVALID_INPUT;
  if (dynamic_cast<const et::DomainError*>(&e)) return ET_ERR_DOMAIN;
  if (dynamic_cast<const et::NoBinding*>(&e)) return ET_ERR_NO_BINDING;
  if (dynamic_cast<const et::DegenerateLaw*>(&e)) return ET_ERR_DEGENERATE_LAW;
  if (dynamic_cast<const et::NoConvergence*>(&e)) return ET_ERR_NO_CONVERGENCE;
  if (dynamic_cast<const et::NoBoundState*>(&e)) return ET_ERR_NO_BOUND_STATE;
  return ET_ERR_INTERNAL;
}

template <typename Fn>
et_status guarded(Fn&& fn) {
  try {
    fn();
    return ET_OK;
  } catch (const std::exception& e) {
    return status_of(e);
  } catch (...) {
    set_error("unknown error");
    return ET_ERR_INTERNAL;
  }
}

template <typename T, typename Fn>
T* guarded_new(Fn&& fn) {
  try {
    return new T{fn()};
  } catch (const std::exception& e) {
    status_of(e);
    return nullptr;
  } catch (...) {
    set_error("unknown error");
    return nullptr;
  }
}

et::SolverConfig config_of(const et_options* opt) {
  et::SolverConfig cfg;
  if (opt) {
    cfg.tol = opt->tol;
    cfg.max_iter = opt->max_iter;
    cfg.bracket_growth = opt->bracket_growth;
    cfg.damping = opt->damping;
  }
  return cfg;
}

const et::PotentialLaw& pot_or_placeholder(const et_potential* v) {
  static const et::PotentialLaw placeholder = et::PotentialLaw::power(1.0, 2.0);
  return v ? v->law : placeholder;
}

}  // namespace

extern "C" {

const char* et_status_name(et_status s) {
  switch (s) {
    case ET_OK: return "ok";
    case ET_ERR_INVALID_INPUT: return "invalid input";
    case ET_ERR_DOMAIN: return "domain error";
    case ET_ERR_NO_BINDING: return "no binding";
    case ET_ERR_DEGENERATE_LAW: return "degenerate law";
    case ET_ERR_NO_CONVERGENCE: return "no convergence";
    case ET_ERR_NO_BOUND_STATE: return "no bound state";
    case ET_ERR_INTERNAL: return "internal error";
  }
  return "?";
}

const char* et_last_error(void) { return g_last_error.c_str(); }

et_kinetic* et_kinetic_nonrelativistic(double mass) {
  return guarded_new<et_kinetic>(
      [&] { return et::KineticLaw::nonrelativistic(mass); });
}
et_kinetic* et_kinetic_relativistic(double mass) {
  return guarded_new<et_kinetic>(
      [&] { return et::KineticLaw::relativistic(mass); });
}
et_kinetic* et_kinetic_ultrarelativistic(void) {
  return guarded_new<et_kinetic>(
      [&] { return et::KineticLaw::ultrarelativistic(); });
}
et_kinetic* et_kinetic_power(double coef, double exponent) {
  return guarded_new<et_kinetic>(
      [&] { return et::KineticLaw::power(coef, exponent); });
}
void et_kinetic_free(et_kinetic* k) { delete k; }

et_status et_kinetic_value(const et_kinetic* k, double p, double* out) {
  if (!k || !out) return set_error("null argument"), ET_ERR_INVALID_INPUT;
  return guarded([&] { *out = k->law.value(p); });
}
et_status et_kinetic_derivative(const et_kinetic* k, double p, double* out) {
  if (!k || !out) return set_error("null argument"), ET_ERR_INVALID_INPUT;
  return guarded([&] { *out = k->law.derivative(p); });
}
et_status et_kinetic_aux_inverse(const et_kinetic* k, double x, double* out) {
  if (!k || !out) return set_error("null argument"), ET_ERR_INVALID_INPUT;
  return guarded([&] { *out = k->law.aux_inverse(x); });
}

et_potential* et_potential_power(double coef, double exponent) {
  return guarded_new<et_potential>(
      [&] { return et::PotentialLaw::power(coef, exponent); });
}
et_potential* et_potential_sum(const double* coefs, const double* exponents,
                               size_t nterms) {
  if (!coefs || !exponents || nterms == 0) {
    set_error("null or empty term arrays");
    return nullptr;
  }
  return guarded_new<et_potential>([&] {
    std::vector<et::PotentialLaw::Term> terms(nterms);
    for (size_t i = 0; i < nterms; ++i) terms[i] = {coefs[i], exponents[i]};
    return et::PotentialLaw::sum(std::move(terms));
  });
}
void et_potential_free(et_potential* v) { delete v; }

et_status et_potential_value(const et_potential* v, double r, double* out) {
  if (!v || !out) return set_error("null argument"), ET_ERR_INVALID_INPUT;
  return guarded([&] { *out = v->law.value(r); });
}
et_status et_potential_derivative(const et_potential* v, double r,
                                  double* out) {
  if (!v || !out) return set_error("null argument"), ET_ERR_INVALID_INPUT;
  return guarded([&] { *out = v->law.derivative(r); });
}
et_status et_potential_aux_inverse(const et_potential* v, double x,
                                   double* out) {
  if (!v || !out) return set_error("null argument"), ET_ERR_INVALID_INPUT;
  return guarded([&] { *out = v->law.aux_inverse(x); });
}

et_status et_pair_count(int64_t n, int64_t* out) {
  if (!out) return set_error("null argument"), ET_ERR_INVALID_INPUT;
  return guarded([&] { *out = et::pair_count(n); });
}
et_status et_boson_ground_q(int64_t n, int32_t dim, double* out) {
  if (!out) return set_error("null argument"), ET_ERR_INVALID_INPUT;
  return guarded([&] { *out = et::boson_ground_q(n, dim); });
}
et_status et_global_quantum_number(const int64_t* n, const int64_t* l,
                                   size_t count, int32_t dim, double* out) {
  if (!n || !out || (count > 0 && !l))
    return set_error("null argument"), ET_ERR_INVALID_INPUT;
  return guarded([&] {
    std::vector<et::QuantumPair> pairs(count);
    for (size_t i = 0; i < count; ++i) pairs[i] = {n[i], l[i]};
    *out = et::global_quantum_number(pairs, dim);
  });
}

et_system* et_system_identical(int64_t n, int32_t dim, const et_kinetic* kin,
                               const et_potential* pot, double q) {
  if (!kin || !pot) {
    set_error("null law");
    return nullptr;
  }
  return guarded_new<et_system>([&]() -> et_system {
    et::IdenticalSystemSpec s{n, dim, kin->law, pot->law, q};
    s.validate();
    return {s};
  });
}

et_system* et_system_two_species(int64_t n_a, int64_t n_b, int32_t dim,
                                 const et_kinetic* kinetic_a,
                                 const et_kinetic* kinetic_b,
                                 const et_potential* v_aa,
                                 const et_potential* v_bb,
                                 const et_potential* v_ab, double q_a,
                                 double q_b, double q_rel) {
  if (!kinetic_a || !kinetic_b || !v_ab) {
    set_error("null law");
    return nullptr;
  }
  if (!v_aa && n_a > 1) {
    set_error("v_aa required when the a-set has more than one particle");
    return nullptr;
  }
  if (!v_bb && n_b > 1) {
    set_error("v_bb required when the b-set has more than one particle");
    return nullptr;
  }
  return guarded_new<et_system>([&]() -> et_system {
    et::TwoSpeciesSystemSpec s{n_a,
                               n_b,
                               dim,
                               kinetic_a->law,
                               kinetic_b->law,
                               pot_or_placeholder(v_aa),
                               pot_or_placeholder(v_bb),
                               v_ab->law,
                               q_a,
                               q_b,
                               q_rel};
    s.validate();
    return {s};
  });
}
void et_system_free(et_system* s) { delete s; }

void et_options_init(et_options* opt) {
  if (!opt) return;
  const et::SolverConfig cfg;
  opt->tol = cfg.tol;
  opt->max_iter = cfg.max_iter;
  opt->bracket_growth = cfg.bracket_growth;
  opt->damping = cfg.damping;
}

et_status et_solve(const et_system* s, const et_options* opt,
                   et_result** out) {
  if (!s || !out) return set_error("null argument"), ET_ERR_INVALID_INPUT;
  return guarded([&] {
    const auto cfg = config_of(opt);
    et::Solution sol = std::visit(
        [&](const auto& spec) { return et::compact::solve(spec, cfg); },
        s->spec);
    *out = new et_result{std::move(sol), std::nullopt};
  });
}

et_status et_extremize(const et_system* s, const et_options* opt,
                       et_result** out) {
  if (!s || !out) return set_error("null argument"), ET_ERR_INVALID_INPUT;
  return guarded([&] {
    const auto cfg = config_of(opt);
    auto [sol, aux] = std::visit(
        [&](const auto& spec) { return et::extremization::extremize(spec, cfg); },
        s->spec);
    *out = new et_result{std::move(sol), aux};
  });
}

void et_result_free(et_result* r) { delete r; }

double et_result_energy(const et_result* r) { return r ? r->sol.energy : 0; }
double et_result_residual_norm(const et_result* r) {
  return r ? r->sol.residual_norm : 0;
}
int32_t et_result_iterations(const et_result* r) {
  return r ? r->sol.iterations : 0;
}
const char* et_result_method(const et_result* r) {
  return r ? et::method_name(r->sol.method) : "?";
}
int32_t et_result_ambiguous(const et_result* r) {
  return r && r->sol.ambiguous_root ? 1 : 0;
}

size_t et_result_mean_count(const et_result* r) {
  return r ? r->sol.means.size() : 0;
}
const char* et_result_mean_name(const et_result* r, size_t i) {
  if (!r || i >= r->sol.means.size()) return nullptr;
  auto it = r->sol.means.begin();
  std::advance(it, i);
  return it->first.c_str();
}
et_status et_result_mean(const et_result* r, const char* name, double* out) {
  if (!r || !name || !out)
    return set_error("null argument"), ET_ERR_INVALID_INPUT;
  auto it = r->sol.means.find(name);
  if (it == r->sol.means.end()) {
    set_error(std::string("no mean named '") + name + "'");
    return ET_ERR_INVALID_INPUT;
  }
  *out = it->second;
  return ET_OK;
}

et_status et_result_aux(const et_result* r, const char* name, double* out) {
  if (!r || !name || !out)
    return set_error("null argument"), ET_ERR_INVALID_INPUT;
  if (!r->aux) {
    set_error("result carries no auxiliary parameters");
    return ET_ERR_INVALID_INPUT;
  }
  const auto& a = *r->aux;
  if (!std::strcmp(name, "mu_a")) return *out = a.mu_a, ET_OK;
  if (!std::strcmp(name, "mu_b")) return *out = a.mu_b, ET_OK;
  if (!std::strcmp(name, "rho_aa")) return *out = a.rho_aa, ET_OK;
  if (!std::strcmp(name, "rho_bb")) return *out = a.rho_bb, ET_OK;
  if (!std::strcmp(name, "rho_ab")) return *out = a.rho_ab, ET_OK;
  set_error(std::string("no auxiliary parameter named '") + name + "'");
  return ET_ERR_INVALID_INPUT;
}

et_status et_residuals(const et_system* s, const et_result* r, double* out,
                       size_t cap, size_t* count) {
  if (!s || !r || !count)
    return set_error("null argument"), ET_ERR_INVALID_INPUT;
  return guarded([&] {
    const auto res = std::visit(
        [&](const auto& spec) { return et::compact::residuals(spec, r->sol); },
        s->spec);
    *count = res.size();
    if (out)
      for (size_t i = 0; i < res.size() && i < cap; ++i) out[i] = res[i];
  });
}

et_status et_oracle_exact_ho(const et_system* s, double* energy) {
  if (!s || !energy) return set_error("null argument"), ET_ERR_INVALID_INPUT;
  return guarded([&] {
    *energy = std::visit(
        [&](const auto& spec) { return et::oracle::exact_ho_energy(spec); },
        s->spec).energy;
  });
}

et_status et_oracle_radial_two_body(double mu, const et_potential* v,
                                    int32_t dim, int64_t n, int64_t l,
                                    double accuracy, double* energy,
                                    double* est_accuracy) {
  if (!v || !energy) return set_error("null argument"), ET_ERR_INVALID_INPUT;
  return guarded([&] {
    const auto r = et::oracle::radial_two_body(
        mu, v->law, dim, n, l, accuracy > 0 ? accuracy : 1e-8);
    *energy = r.energy;
    if (est_accuracy) *est_accuracy = r.est_accuracy;
  });
}

int32_t et_validate_run(et_validate_cb cb, void* user) {
  try {
    const auto checks = et::validate::run_battery();
    int32_t failures = 0;
    for (const auto& c : checks) {
      if (!c.pass) ++failures;
      if (cb) cb(c.name.c_str(), c.pass ? 1 : 0, c.detail.c_str(), user);
    }
    return failures;
  } catch (const std::exception& e) {
    set_error(e.what());
    return -1;
  } catch (...) {
    set_error("unknown error");
    return -1;
  }
}

}  // extern "C"
