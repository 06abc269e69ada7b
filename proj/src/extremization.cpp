#include "extremization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "rootfind.hpp"

namespace et::extremization {

namespace {

// Oscillator frequencies and the mean squares of the corresponding
// eigenstate, obtained by differentiating the eigenvalue with respect to the
// Hamiltonian parameters.
struct HoState {
  double wa = 0, wb = 0, wr = 0;
  double mu = 0;  // reduced mass of the two centres of mass
  double pa2 = 0, pb2 = 0, P02 = 0;
  double raa2 = 0, rbb2 = 0, R02 = 0;
  double ppa2 = 0, ppb2 = 0, rp02 = 0;
};

HoState ho_state(const AuxiliaryParameters& ap, const TwoSpeciesSystemSpec& s) {
  HoState h;
  const double na = static_cast<double>(s.n_a);
  const double nb = static_cast<double>(s.n_b);
  const double ma = na * ap.mu_a;
  const double mb = nb * ap.mu_b;
  h.mu = ma * mb / (ma + mb);
  h.wa = std::sqrt(2.0 / ap.mu_a * (na * ap.rho_aa + nb * ap.rho_ab));
  h.wb = std::sqrt(2.0 / ap.mu_b * (nb * ap.rho_bb + na * ap.rho_ab));
  h.wr = std::sqrt(2.0 / h.mu * na * nb * ap.rho_ab);

  h.pa2 = ap.mu_a * s.q_a * h.wa / na;
  h.pb2 = ap.mu_b * s.q_b * h.wb / nb;
  h.P02 = h.mu * s.q_rel * h.wr;
  if (s.n_a >= 2)
    h.raa2 = s.q_a * na / (pair_count(s.n_a) * ap.mu_a * h.wa);
  if (s.n_b >= 2)
    h.rbb2 = s.q_b * nb / (pair_count(s.n_b) * ap.mu_b * h.wb);
  h.R02 = s.q_rel / (h.mu * h.wr);
  h.ppa2 = h.pa2 + h.P02 / (na * na);
  h.ppb2 = h.pb2 + h.P02 / (nb * nb);
  h.rp02 = s.q_a / (na * ap.mu_a * h.wa) + s.q_b / (nb * ap.mu_b * h.wb) +
           s.q_rel / (h.mu * h.wr);
  return h;
}

double kinetic_offset(const KineticLaw& k, double mu) {
  if (k.degenerate()) return 0.0;
  const double g = k.aux_inverse(mu);
  return k.value(g) - g * g / (2 * mu);
}

double potential_offset(const PotentialLaw& v, double rho) {
  if (v.degenerate()) return 0.0;
  const double j = v.aux_inverse(rho);
  return v.value(j) - rho * j * j;
}

// One free parameter of the stationarity search.
struct FreeParam {
  enum class Kind { mu_a, mu_b, rho_aa, rho_bb, rho_ab } kind;
  // Transformed coordinate: mu = sqrt(m^2 + e^{2 theta}) keeps a massive
  // relativistic law inside its domain, everything else uses e^theta.
  double rel_mass = -1;  // >= 0 when the sqrt transform applies

  double to_value(double theta) const {
    if (rel_mass >= 0) {
      const double g = std::exp(theta);
      return std::sqrt(rel_mass * rel_mass + g * g);
    }
    return std::exp(theta);
  }
  double to_theta(double value) const {
    if (rel_mass >= 0)
      return 0.5 * std::log((value - rel_mass) * (value + rel_mass));
    return std::log(value);
  }
};

double rel_gap(double a, double b) {
  return (a - b) / std::max(1.0, std::abs(b));
}

// Searches may wander outside a law's auxiliary domain (e.g. below the floor
// of V'(J)/(2J) for mixed-exponent sums); report NaN so the step is rejected
// rather than aborting the solve.
template <typename Fn>
auto nan_on_domain_error(Fn fn) {
  return [fn](const std::vector<double>& theta) {
    try {
      return fn(theta);
    } catch (const Error&) {
      return std::vector<double>(theta.size(),
                                 std::numeric_limits<double>::quiet_NaN());
    }
  };
}

// Shared driver: damped Newton on the scaled stationarity residuals with a
// self-consistent fixed-point warm-up, in the transformed coordinates.
struct Driver {
  std::vector<FreeParam> free;
  // residuals(theta) -> scaled stationarity defects, one per free parameter
  std::function<std::vector<double>(const std::vector<double>&)> residuals;
  // fixed-point target values (physical coordinates), one per free parameter
  std::function<std::vector<double>(const std::vector<double>&)> targets;

  std::vector<double> theta;
  int iterations = 0;
  double norm = 0;

  void run(const SolverConfig& cfg, const char* what) {
    if (free.empty()) return;
    const int n = static_cast<int>(free.size());

    // Self-consistent warm-up: replace each parameter by the value its own
    // stationarity condition demands at the current oscillator state.
    double best_norm = max_abs(residuals(theta));
    auto best = theta;
    for (int it = 0; it < 40 && best_norm > 1e-3; ++it) {
      ++iterations;
      auto tgt = targets(theta);
      bool moved = false;
      for (int i = 0; i < n; ++i) {
        if (!(std::isfinite(tgt[i]) && tgt[i] > 0)) continue;
        double tnew = free[i].to_theta(tgt[i]);
        if (!std::isfinite(tnew)) continue;
        tnew = std::clamp(tnew, theta[i] - 2.0, theta[i] + 2.0);
        if (tnew != theta[i]) moved = true;
        theta[i] = tnew;
      }
      const double nn = max_abs(residuals(theta));
      if (nn < best_norm) {
        best_norm = nn;
        best = theta;
      }
      if (!moved) break;
    }
    theta = best;

    NewtonOptions nopt;
    nopt.tol = cfg.tol;
    nopt.max_iter = cfg.max_iter;
    nopt.damping = cfg.damping;
    auto res = damped_newton(residuals, theta, nopt);
    iterations += res.iterations;

    if (!res.converged) {
      // Coordinate sweeps, then one more Newton attempt.
      auto v = res.norm < best_norm ? res.x : best;
      for (int sweep = 0; sweep < 30; ++sweep) {
        for (int i = 0; i < n; ++i) {
          auto fi = [&](double xi) {
            auto w = v;
            w[i] = std::log(xi);
            return residuals(w)[i];
          };
          if (auto br = expand_bracket(fi, std::exp(v[i]), cfg.bracket_growth, 80)) {
            auto r = solve_bracketed(fi, *br, 1e-14, cfg.max_iter);
            if (r.converged) v[i] = std::log(r.x);
          }
          ++iterations;
        }
        if (max_abs(residuals(v)) <= cfg.tol) break;
      }
      auto again = damped_newton(residuals, v, nopt);
      iterations += again.iterations;
      if (again.norm < res.norm) res = std::move(again);
      if (!res.converged)
        throw NoConvergence(
            std::string(what) + ": stationarity search did not converge",
            res.norm);
    }

    // Polish.
    NewtonOptions polish = nopt;
    polish.tol = 1e-15;
    polish.max_iter = 3;
    auto fin = damped_newton(residuals, res.x, polish);
    if (fin.norm > res.norm) fin = std::move(res);
    iterations += fin.iterations;
    theta = fin.x;
    norm = fin.norm;
  }
};

double initial_rho(const PotentialLaw& v) {
  for (double r : {1.0, 0.5, 2.0, 0.25, 4.0, 0.125, 8.0}) {
    const double d = v.derivative(r);
    if (std::isfinite(d) && d > 0) return d / (2 * r);
  }
  return 1.0;
}

double initial_mu(const KineticLaw& k) {
  if (k.degenerate()) return k.pinned_mass();
  // G = 1 as the first momentum-scale guess.
  switch (k.form()) {
    case KineticLaw::Form::relativistic:
      return std::hypot(1.0, k.mass());
    default:
      return 1.0 / std::max(k.derivative(1.0), 1e-8);
  }
}

}  // namespace

double harmonic_eigenvalue(const AuxiliaryParameters& ap,
                           const TwoSpeciesSystemSpec& s) {
  const double na = static_cast<double>(s.n_a);
  const double nb = static_cast<double>(s.n_b);
  if (!(ap.mu_a > 0) || !(ap.mu_b > 0))
    throw InvalidInput("auxiliary masses must be positive");
  const double ma = na * ap.mu_a;
  const double mb = nb * ap.mu_b;
  const double mu = ma * mb / (ma + mb);
  const double ca = 2.0 / ap.mu_a * (na * ap.rho_aa + nb * ap.rho_ab);
  const double cb = 2.0 / ap.mu_b * (nb * ap.rho_bb + na * ap.rho_ab);
  const double cr = 2.0 / mu * na * nb * ap.rho_ab;
  if (ca < 0 || cb < 0 || cr < 0)
    throw InvalidInput("oscillator strengths must be nonnegative");
  return s.q_a * std::sqrt(ca) + s.q_b * std::sqrt(cb) +
         s.q_rel * std::sqrt(cr);
}

double b_function(const AuxiliaryParameters& ap,
                  const TwoSpeciesSystemSpec& s) {
  double b = s.n_a * kinetic_offset(s.kinetic_a, ap.mu_a) +
             s.n_b * kinetic_offset(s.kinetic_b, ap.mu_b) +
             static_cast<double>(s.n_a) * s.n_b *
                 potential_offset(s.v_ab, ap.rho_ab);
  if (s.n_a >= 2)
    b += pair_count(s.n_a) * potential_offset(s.v_aa, ap.rho_aa);
  if (s.n_b >= 2)
    b += pair_count(s.n_b) * potential_offset(s.v_bb, ap.rho_bb);
  return b;
}

AuxiliaryEnergyBreakdown auxiliary_energy(const AuxiliaryParameters& ap,
                                          const TwoSpeciesSystemSpec& s) {
  AuxiliaryEnergyBreakdown out;
  out.e_ho = harmonic_eigenvalue(ap, s);
  out.b = b_function(ap, s);
  out.total = out.e_ho + out.b;
  return out;
}

std::pair<Solution, AuxiliaryParameters> extremize(
    const TwoSpeciesSystemSpec& spec, const SolverConfig& cfg) {
  spec.validate();
  cfg.validate();

  AuxiliaryParameters ap;
  ap.mu_a = initial_mu(spec.kinetic_a);
  ap.mu_b = initial_mu(spec.kinetic_b);
  ap.rho_aa = spec.n_a >= 2 ? (spec.v_aa.degenerate()
                                   ? spec.v_aa.pinned_strength()
                                   : initial_rho(spec.v_aa))
                            : 1.0;
  ap.rho_bb = spec.n_b >= 2 ? (spec.v_bb.degenerate()
                                   ? spec.v_bb.pinned_strength()
                                   : initial_rho(spec.v_bb))
                            : 1.0;
  ap.rho_ab =
      spec.v_ab.degenerate() ? spec.v_ab.pinned_strength() : initial_rho(spec.v_ab);

  Driver d;
  if (!spec.kinetic_a.degenerate())
    d.free.push_back({FreeParam::Kind::mu_a,
                      spec.kinetic_a.form() == KineticLaw::Form::relativistic
                          ? spec.kinetic_a.mass()
                          : -1});
  if (!spec.kinetic_b.degenerate())
    d.free.push_back({FreeParam::Kind::mu_b,
                      spec.kinetic_b.form() == KineticLaw::Form::relativistic
                          ? spec.kinetic_b.mass()
                          : -1});
  if (spec.n_a >= 2 && !spec.v_aa.degenerate())
    d.free.push_back({FreeParam::Kind::rho_aa, -1});
  if (spec.n_b >= 2 && !spec.v_bb.degenerate())
    d.free.push_back({FreeParam::Kind::rho_bb, -1});
  if (!spec.v_ab.degenerate())
    d.free.push_back({FreeParam::Kind::rho_ab, -1});

  auto apply = [&](const std::vector<double>& theta) {
    AuxiliaryParameters p = ap;
    for (size_t i = 0; i < d.free.size(); ++i) {
      const double v = d.free[i].to_value(theta[i]);
      switch (d.free[i].kind) {
        case FreeParam::Kind::mu_a: p.mu_a = v; break;
        case FreeParam::Kind::mu_b: p.mu_b = v; break;
        case FreeParam::Kind::rho_aa: p.rho_aa = v; break;
        case FreeParam::Kind::rho_bb: p.rho_bb = v; break;
        case FreeParam::Kind::rho_ab: p.rho_ab = v; break;
      }
    }
    return p;
  };

  d.residuals = nan_on_domain_error([&](const std::vector<double>& theta) {
    const auto p = apply(theta);
    const auto h = ho_state(p, spec);
    std::vector<double> r(d.free.size());
    for (size_t i = 0; i < d.free.size(); ++i) {
      switch (d.free[i].kind) {
        case FreeParam::Kind::mu_a: {
          const double g = spec.kinetic_a.aux_inverse(p.mu_a);
          r[i] = rel_gap(g * g, h.ppa2);
          break;
        }
        case FreeParam::Kind::mu_b: {
          const double g = spec.kinetic_b.aux_inverse(p.mu_b);
          r[i] = rel_gap(g * g, h.ppb2);
          break;
        }
        case FreeParam::Kind::rho_aa: {
          const double j = spec.v_aa.aux_inverse(p.rho_aa);
          r[i] = rel_gap(j * j, h.raa2);
          break;
        }
        case FreeParam::Kind::rho_bb: {
          const double j = spec.v_bb.aux_inverse(p.rho_bb);
          r[i] = rel_gap(j * j, h.rbb2);
          break;
        }
        case FreeParam::Kind::rho_ab: {
          const double j = spec.v_ab.aux_inverse(p.rho_ab);
          r[i] = rel_gap(j * j, h.rp02);
          break;
        }
      }
    }
    return r;
  });

  d.targets = nan_on_domain_error([&](const std::vector<double>& theta) {
    const auto p = apply(theta);
    const auto h = ho_state(p, spec);
    std::vector<double> t(d.free.size());
    for (size_t i = 0; i < d.free.size(); ++i) {
      switch (d.free[i].kind) {
        case FreeParam::Kind::mu_a: {
          const double pp = std::sqrt(h.ppa2);
          t[i] = pp / spec.kinetic_a.derivative(pp);
          break;
        }
        case FreeParam::Kind::mu_b: {
          const double pp = std::sqrt(h.ppb2);
          t[i] = pp / spec.kinetic_b.derivative(pp);
          break;
        }
        case FreeParam::Kind::rho_aa: {
          const double r = std::sqrt(h.raa2);
          t[i] = spec.v_aa.derivative(r) / (2 * r);
          break;
        }
        case FreeParam::Kind::rho_bb: {
          const double r = std::sqrt(h.rbb2);
          t[i] = spec.v_bb.derivative(r) / (2 * r);
          break;
        }
        case FreeParam::Kind::rho_ab: {
          const double r = std::sqrt(h.rp02);
          t[i] = spec.v_ab.derivative(r) / (2 * r);
          break;
        }
      }
    }
    return t;
  });

  d.theta.resize(d.free.size());
  {
    AuxiliaryParameters p0 = ap;
    for (size_t i = 0; i < d.free.size(); ++i) {
      double v = 1.0;
      switch (d.free[i].kind) {
        case FreeParam::Kind::mu_a: v = p0.mu_a; break;
        case FreeParam::Kind::mu_b: v = p0.mu_b; break;
        case FreeParam::Kind::rho_aa: v = p0.rho_aa; break;
        case FreeParam::Kind::rho_bb: v = p0.rho_bb; break;
        case FreeParam::Kind::rho_ab: v = p0.rho_ab; break;
      }
      // Keep the sqrt transform away from its singular edge.
      if (d.free[i].rel_mass >= 0 && v <= d.free[i].rel_mass * (1 + 1e-12))
        v = std::hypot(d.free[i].rel_mass, 1.0);
      d.theta[i] = d.free[i].to_theta(v);
    }
  }

  d.run(cfg, "extremization");
  ap = apply(d.theta);

  const auto h = ho_state(ap, spec);
  const auto e = auxiliary_energy(ap, spec);

  Solution sol;
  sol.method = Method::extremization;
  sol.energy = e.total;
  sol.iterations = d.iterations;
  sol.residual_norm = d.norm;
  if (spec.n_a == 1 && spec.n_b == 1) {
    sol.means = {{"P0", std::sqrt(h.P02)}, {"R0", std::sqrt(h.R02)}};
  } else {
    sol.means = {{"p_a", std::sqrt(h.pa2)},
                 {"p_b", std::sqrt(h.pb2)},
                 {"P0", std::sqrt(h.P02)},
                 {"R0", std::sqrt(h.R02)},
                 {"p_prime_a", std::sqrt(h.ppa2)},
                 {"p_prime_b", std::sqrt(h.ppb2)},
                 {"r_prime_0", std::sqrt(h.rp02)}};
    if (spec.n_a >= 2) sol.means["r_aa"] = std::sqrt(h.raa2);
    if (spec.n_b >= 2) sol.means["r_bb"] = std::sqrt(h.rbb2);
  }
  return {sol, ap};
}

std::pair<Solution, AuxiliaryParameters> extremize(
    const IdenticalSystemSpec& spec, const SolverConfig& cfg) {
  spec.validate();
  cfg.validate();
  const double n = static_cast<double>(spec.n);
  const double c2 = static_cast<double>(pair_count(spec.n));

  double mu = initial_mu(spec.kinetic);
  double rho = spec.potential.degenerate() ? spec.potential.pinned_strength()
                                           : initial_rho(spec.potential);

  // E_ho = Q sqrt(2 N rho / mu); the eigenstate means follow by
  // differentiation: <p_i^2> = mu E/N, <r_ij^2> = E/(2 rho C2).
  auto p02_of = [&](double m, double r) {
    return m * spec.q * std::sqrt(2 * n * r / m) / n;
  };
  auto rho02_of = [&](double m, double r) {
    return spec.q * std::sqrt(2 * n * r / m) / (2 * r * c2);
  };

  const bool mu_free = !spec.kinetic.degenerate();
  const bool rho_free = !spec.potential.degenerate();

  Driver d;
  if (mu_free)
    d.free.push_back({FreeParam::Kind::mu_a,
                      spec.kinetic.form() == KineticLaw::Form::relativistic
                          ? spec.kinetic.mass()
                          : -1});
  if (rho_free) d.free.push_back({FreeParam::Kind::rho_aa, -1});

  auto apply = [&](const std::vector<double>& theta) {
    double m = mu, r = rho;
    size_t i = 0;
    if (mu_free) m = d.free[i].to_value(theta[i]), ++i;
    if (rho_free) r = d.free[i].to_value(theta[i]);
    return std::pair{m, r};
  };

  d.residuals = nan_on_domain_error([&](const std::vector<double>& theta) {
    auto [m, r] = apply(theta);
    std::vector<double> out;
    if (mu_free) {
      const double g = spec.kinetic.aux_inverse(m);
      out.push_back(rel_gap(g * g, p02_of(m, r)));
    }
    if (rho_free) {
      const double j = spec.potential.aux_inverse(r);
      out.push_back(rel_gap(j * j, rho02_of(m, r)));
    }
    return out;
  });
  d.targets = nan_on_domain_error([&](const std::vector<double>& theta) {
    auto [m, r] = apply(theta);
    std::vector<double> out;
    if (mu_free) {
      const double p = std::sqrt(p02_of(m, r));
      out.push_back(p / spec.kinetic.derivative(p));
    }
    if (rho_free) {
      const double rr = std::sqrt(rho02_of(m, r));
      out.push_back(spec.potential.derivative(rr) / (2 * rr));
    }
    return out;
  });

  d.theta.clear();
  if (mu_free) {
    double v = mu;
    if (d.free[0].rel_mass >= 0 && v <= d.free[0].rel_mass * (1 + 1e-12))
      v = std::hypot(d.free[0].rel_mass, 1.0);
    d.theta.push_back(d.free[0].to_theta(v));
  }
  if (rho_free) d.theta.push_back(std::log(rho));

  d.run(cfg, "extremization");
  std::tie(mu, rho) = apply(d.theta);

  const double e_ho = spec.q * std::sqrt(2 * n * rho / mu);
  const double b = n * kinetic_offset(spec.kinetic, mu) +
                   c2 * potential_offset(spec.potential, rho);

  Solution sol;
  sol.method = Method::extremization;
  sol.energy = e_ho + b;
  sol.iterations = d.iterations;
  sol.residual_norm = d.norm;
  sol.means = {{"p0", std::sqrt(p02_of(mu, rho))},
               {"rho0", std::sqrt(rho02_of(mu, rho))}};

  AuxiliaryParameters ap;
  ap.mu_a = ap.mu_b = mu;
  ap.rho_aa = ap.rho_bb = ap.rho_ab = rho;
  return {sol, ap};
}

}  // namespace et::extremization
