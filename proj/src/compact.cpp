#include "compact.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "rootfind.hpp"

namespace et::compact {

namespace {

double scaled(double lhs, double rhs) {
  return (lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

// --- identical particles -------------------------------------------------

struct IdenticalView {
  const IdenticalSystemSpec& s;
  double c2;    // number of pairs
  double qhat;  // Q / sqrt(C2)

  explicit IdenticalView(const IdenticalSystemSpec& spec)
      : s(spec),
        c2(static_cast<double>(pair_count(spec.n))),
        qhat(spec.q / std::sqrt(static_cast<double>(pair_count(spec.n)))) {}

  double rho(double p) const { return qhat / p; }

  double virial(double p) const {
    const double r = rho(p);
    const double lhs = s.n * s.kinetic.derivative(p) * p;
    const double rhs = c2 * s.potential.derivative(r) * r;
    return scaled(lhs, rhs);
  }

  double energy(double p) const {
    return s.n * s.kinetic.value(p) + c2 * s.potential.value(rho(p));
  }
};

// Solve a one-unknown virial balance by bracketing from `seed`, with a wide
// log-grid sweep to spot additional roots (possible for mixed-sign sums).
struct Root1D {
  double x;
  double energy;
  int iterations;
  bool ambiguous;
};

Root1D solve_virial_1d(const Fn1& virial, const Fn1& energy, double seed,
                       const SolverConfig& cfg, const char* what) {
  auto br = expand_bracket(virial, seed, cfg.bracket_growth, 160);
  if (!br)
    throw NoBinding(std::string(what) +
                    ": no sign change of the virial balance; the system "
                    "appears unbound");
  auto first = solve_bracketed(virial, *br, 1e-15, cfg.max_iter);
  if (!first.converged || std::abs(first.f) > cfg.tol)
    throw NoConvergence(std::string(what) + ": root refinement stalled",
                        std::abs(first.f));

  Root1D out{first.x, energy(first.x), first.iterations, false};
  // Sweep a generous window for further sign changes.
  const double lo = std::min(br->lo, first.x) * std::pow(2.0, -30);
  const double hi = std::max(br->hi, first.x) * std::pow(2.0, 30);
  for (const auto& b : scan_brackets(virial, lo, hi, 121)) {
    auto r = solve_bracketed(virial, b, 1e-15, cfg.max_iter);
    if (!r.converged) continue;
    if (std::abs(r.x - out.x) <= 1e-6 * std::max(r.x, out.x)) continue;
    out.ambiguous = true;
    const double e = energy(r.x);
    if (e < out.energy) {
      out.x = r.x;
      out.energy = e;
      out.iterations = r.iterations;
    }
  }
  return out;
}

// --- two species ----------------------------------------------------------

// Mean momenta/distances of the seven-equation set with the three distances
// eliminated through the quantization rules.
struct TwoSpeciesView {
  const TwoSpeciesSystemSpec& s;
  double c2a, c2b;
  double sqa, sqb;  // sqrt of pair counts

  explicit TwoSpeciesView(const TwoSpeciesSystemSpec& spec)
      : s(spec),
        c2a(static_cast<double>(pair_count(spec.n_a))),
        c2b(static_cast<double>(pair_count(spec.n_b))),
        sqa(std::sqrt(c2a)),
        sqb(std::sqrt(c2b)) {}

  struct Means {
    double pa, pb, P0;
    double raa, rbb, R0;
    double ppa, ppb, rp0;
  };

  Means means(double pa, double pb, double P0) const {
    Means m{};
    m.pa = pa;
    m.pb = pb;
    m.P0 = P0;
    m.raa = s.q_a / (sqa * pa);
    m.rbb = s.q_b / (sqb * pb);
    m.R0 = s.q_rel / P0;
    m.ppa = std::hypot(pa, P0 / s.n_a);
    m.ppb = std::hypot(pb, P0 / s.n_b);
    m.rp0 = std::sqrt((s.n_a - 1) / (2.0 * s.n_a) * m.raa * m.raa +
                      (s.n_b - 1) / (2.0 * s.n_b) * m.rbb * m.rbb +
                      m.R0 * m.R0);
    return m;
  }

  // Virial balance of the internal a-motion, the internal b-motion and the
  // relative motion of the two centres of mass, each scaled.
  std::vector<double> virials(const Means& m) const {
    const double tpa = s.kinetic_a.derivative(m.ppa);
    const double tpb = s.kinetic_b.derivative(m.ppb);
    const double vab = s.v_ab.derivative(m.rp0);

    const double la = s.n_a * tpa * m.pa * m.pa / m.ppa;
    const double ra = c2a * s.v_aa.derivative(m.raa) * m.raa +
                      (static_cast<double>(s.n_b) / s.n_a) * c2a * vab *
                          m.raa * m.raa / m.rp0;

    const double lb = s.n_b * tpb * m.pb * m.pb / m.ppb;
    const double rb = c2b * s.v_bb.derivative(m.rbb) * m.rbb +
                      (static_cast<double>(s.n_a) / s.n_b) * c2b * vab *
                          m.rbb * m.rbb / m.rp0;

    const double lr = tpa * m.P0 * m.P0 / (s.n_a * m.ppa) +
                      tpb * m.P0 * m.P0 / (s.n_b * m.ppb);
    const double rr = s.n_a * s.n_b * vab * m.R0 * m.R0 / m.rp0;

    return {scaled(la, ra), scaled(lb, rb), scaled(lr, rr)};
  }

  double energy(const Means& m) const {
    return s.n_a * s.kinetic_a.value(m.ppa) + s.n_b * s.kinetic_b.value(m.ppb) +
           c2a * s.v_aa.value(m.raa) + c2b * s.v_bb.value(m.rbb) +
           s.n_a * s.n_b * s.v_ab.value(m.rp0);
  }
};

// N_a >= 2, N_b = 1 reduction in (p_a, P0); p_b = 0, p'_b = P0.
struct NaPlusOneView {
  const TwoSpeciesSystemSpec& s;
  double c2a, sqa;

  explicit NaPlusOneView(const TwoSpeciesSystemSpec& spec)
      : s(spec),
        c2a(static_cast<double>(pair_count(spec.n_a))),
        sqa(std::sqrt(c2a)) {}

  struct Means {
    double pa, P0, raa, R0, ppa, rp0;
  };

  Means means(double pa, double P0) const {
    Means m{};
    m.pa = pa;
    m.P0 = P0;
    m.raa = s.q_a / (sqa * pa);
    m.R0 = s.q_rel / P0;
    m.ppa = std::hypot(pa, P0 / s.n_a);
    m.rp0 = std::sqrt((s.n_a - 1) / (2.0 * s.n_a) * m.raa * m.raa +
                      m.R0 * m.R0);
    return m;
  }

  std::vector<double> virials(const Means& m) const {
    const double tpa = s.kinetic_a.derivative(m.ppa);
    const double vab = s.v_ab.derivative(m.rp0);

    const double la = s.n_a * tpa * m.pa * m.pa / m.ppa;
    const double ra = c2a * s.v_aa.derivative(m.raa) * m.raa +
                      (s.n_a - 1) / 2.0 * vab * m.raa * m.raa / m.rp0;

    const double lr = tpa * m.P0 * m.P0 / (s.n_a * m.ppa) +
                      s.kinetic_b.derivative(m.P0) * m.P0;
    const double rr = s.n_a * vab * m.R0 * m.R0 / m.rp0;

    return {scaled(la, ra), scaled(lr, rr)};
  }

  double energy(const Means& m) const {
    return s.n_a * s.kinetic_a.value(m.ppa) + s.kinetic_b.value(m.P0) +
           c2a * s.v_aa.value(m.raa) + s.n_a * s.v_ab.value(m.rp0);
  }
};

// Newton in log-coordinates with a coordinate-wise bisection-sweep fallback,
// shared by the 2- and 3-unknown reductions.
struct SystemSolve {
  std::vector<double> x;  // physical coordinates, all > 0
  double norm = 0;
  int iterations = 0;
};

SystemSolve solve_system(const FnN& fn_log, std::vector<double> seed,
                         const SolverConfig& cfg, const char* what) {
  const int n = static_cast<int>(seed.size());
  std::vector<double> u(n);
  for (int i = 0; i < n; ++i) u[i] = std::log(seed[i]);

  NewtonOptions nopt;
  nopt.tol = cfg.tol;
  nopt.max_iter = cfg.max_iter;
  nopt.damping = cfg.damping;
  auto res = damped_newton(fn_log, u, nopt);
  int iterations = res.iterations;

  if (!res.converged) {
    // Gauss-Seidel sweeps: re-solve each coordinate by bracketing while the
    // others stay put, then give Newton another chance.
    auto best = res;
    for (int round = 0; round < 4 && !best.converged; ++round) {
      auto v = best.x;
      for (int sweep = 0; sweep < 25; ++sweep) {
        for (int i = 0; i < n; ++i) {
          auto fi = [&](double xi) {
            auto w = v;
            w[i] = std::log(xi);
            return fn_log(w)[i];
          };
          if (auto br = expand_bracket(fi, std::exp(v[i]), cfg.bracket_growth, 80)) {
            auto r = solve_bracketed(fi, *br, 1e-14, cfg.max_iter);
            if (r.converged) v[i] = std::log(r.x);
          }
          ++iterations;
        }
        if (max_abs(fn_log(v)) <= cfg.tol) break;
      }
      auto again = damped_newton(fn_log, v, nopt);
      iterations += again.iterations;
      if (again.norm < best.norm) best = std::move(again);
    }
    res = std::move(best);
  }
  if (!res.converged)
    throw NoConvergence(std::string(what) + ": virial system did not converge",
                        res.norm);

  // A couple of polish iterations sharpen the root well past the tolerance.
  NewtonOptions polish = nopt;
  polish.tol = 1e-15;
  polish.max_iter = 3;
  auto fin = damped_newton(fn_log, res.x, polish);
  if (fin.norm > res.norm) fin = std::move(res);
  iterations += fin.iterations;

  SystemSolve out;
  out.x.resize(n);
  for (int i = 0; i < n; ++i) out.x[i] = std::exp(fin.x[i]);
  out.norm = fin.norm;
  out.iterations = iterations;
  return out;
}

double seed_from_identical(long long n, int dim, const KineticLaw& k,
                           const PotentialLaw& v, double q,
                           const SolverConfig& cfg) {
  IdenticalSystemSpec sub{n, dim, k, v, q};
  return solve_identical(sub, cfg).mean("p0");
}

// 1D seed for the relative momentum: solve the relative virial with the
// internal momenta frozen.
double seed_relative(const Fn1& rel_virial, const SolverConfig& cfg) {
  if (auto br = expand_bracket(rel_virial, 1.0, cfg.bracket_growth, 160)) {
    auto r = solve_bracketed(rel_virial, *br, 1e-12, cfg.max_iter);
    if (r.converged) return r.x;
  }
  return 1.0;
}

Solution unswap(Solution sol) {
  auto& m = sol.means;
  auto swap_keys = [&](const char* x, const char* y) {
    const bool hx = m.count(x) > 0, hy = m.count(y) > 0;
    if (!hx && !hy) return;
    double vx = hx ? m[x] : 0, vy = hy ? m[y] : 0;
    m.erase(x);
    m.erase(y);
    if (hy) m[x] = vy;
    if (hx) m[y] = vx;
  };
  swap_keys("p_a", "p_b");
  swap_keys("p_prime_a", "p_prime_b");
  swap_keys("r_aa", "r_bb");
  return sol;
}

}  // namespace

Solution solve_identical(const IdenticalSystemSpec& spec,
                         const SolverConfig& cfg) {
  spec.validate();
  cfg.validate();
  IdenticalView v(spec);

  auto root = solve_virial_1d([&](double p) { return v.virial(p); },
                              [&](double p) { return v.energy(p); }, 1.0, cfg,
                              "identical-particle solve");

  Solution sol;
  sol.method = Method::compact_identical;
  sol.energy = root.energy;
  sol.means = {{"p0", root.x}, {"rho0", v.rho(root.x)}};
  sol.iterations = root.iterations;
  sol.ambiguous_root = root.ambiguous;
  sol.residual_norm = std::abs(v.virial(root.x));
  if (sol.residual_norm > cfg.tol)
    throw NoConvergence("identical-particle solve: residual above tolerance",
                        sol.residual_norm);
  return sol;
}

Solution solve_two_body(const TwoSpeciesSystemSpec& spec,
                        const SolverConfig& cfg) {
  spec.validate();
  cfg.validate();
  if (spec.n_a != 1 || spec.n_b != 1)
    throw InvalidInput("two-body solve requires N_a = N_b = 1");

  auto virial = [&](double P) {
    const double R = spec.q_rel / P;
    const double lhs =
        (spec.kinetic_a.derivative(P) + spec.kinetic_b.derivative(P)) * P;
    const double rhs = spec.v_ab.derivative(R) * R;
    return scaled(lhs, rhs);
  };
  auto energy = [&](double P) {
    const double R = spec.q_rel / P;
    return spec.kinetic_a.value(P) + spec.kinetic_b.value(P) +
           spec.v_ab.value(R);
  };

  auto root = solve_virial_1d(virial, energy, 1.0, cfg, "two-body solve");

  Solution sol;
  sol.method = Method::compact_two_body;
  sol.energy = root.energy;
  sol.means = {{"P0", root.x}, {"R0", spec.q_rel / root.x}};
  sol.iterations = root.iterations;
  sol.ambiguous_root = root.ambiguous;
  sol.residual_norm = std::abs(virial(root.x));
  if (sol.residual_norm > cfg.tol)
    throw NoConvergence("two-body solve: residual above tolerance",
                        sol.residual_norm);
  return sol;
}

Solution solve_na_plus_one(const TwoSpeciesSystemSpec& spec,
                           const SolverConfig& cfg) {
  spec.validate();
  cfg.validate();
  if (spec.n_b != 1 || spec.n_a < 2)
    throw InvalidInput("N_a + 1 solve requires N_b = 1 and N_a >= 2");

  NaPlusOneView v(spec);
  auto fn_log = [&](const std::vector<double>& u) {
    return v.virials(v.means(std::exp(u[0]), std::exp(u[1])));
  };

  const double pa0 = seed_from_identical(spec.n_a, spec.dim, spec.kinetic_a,
                                         spec.v_aa, spec.q_a, cfg);
  const double P00 = seed_relative(
      [&](double P) { return v.virials(v.means(pa0, P))[1]; }, cfg);

  auto r = solve_system(fn_log, {pa0, P00}, cfg, "N_a + 1 solve");
  const auto m = v.means(r.x[0], r.x[1]);

  Solution sol;
  sol.method = Method::compact_na_plus_1;
  sol.energy = v.energy(m);
  sol.means = {{"p_a", m.pa},          {"p_b", 0.0},
               {"P0", m.P0},           {"r_aa", m.raa},
               {"R0", m.R0},           {"p_prime_a", m.ppa},
               {"p_prime_b", m.P0},    {"r_prime_0", m.rp0}};
  sol.iterations = r.iterations;
  sol.residual_norm = r.norm;
  return sol;
}

Solution solve_two_species(const TwoSpeciesSystemSpec& spec,
                           const SolverConfig& cfg) {
  spec.validate();
  cfg.validate();
  if (spec.n_a < 2 || spec.n_b < 2)
    throw InvalidInput("two-species solve requires N_a >= 2 and N_b >= 2");

  TwoSpeciesView v(spec);
  auto fn_log = [&](const std::vector<double>& u) {
    return v.virials(v.means(std::exp(u[0]), std::exp(u[1]), std::exp(u[2])));
  };

  const double pa0 = seed_from_identical(spec.n_a, spec.dim, spec.kinetic_a,
                                         spec.v_aa, spec.q_a, cfg);
  const double pb0 = seed_from_identical(spec.n_b, spec.dim, spec.kinetic_b,
                                         spec.v_bb, spec.q_b, cfg);
  const double P00 = seed_relative(
      [&](double P) { return v.virials(v.means(pa0, pb0, P))[2]; }, cfg);

  auto r = solve_system(fn_log, {pa0, pb0, P00}, cfg, "two-species solve");
  const auto m = v.means(r.x[0], r.x[1], r.x[2]);

  Solution sol;
  sol.method = Method::compact_two_species;
  sol.energy = v.energy(m);
  sol.means = {{"p_a", m.pa},          {"p_b", m.pb},
               {"P0", m.P0},           {"r_aa", m.raa},
               {"r_bb", m.rbb},        {"R0", m.R0},
               {"p_prime_a", m.ppa},   {"p_prime_b", m.ppb},
               {"r_prime_0", m.rp0}};
  sol.iterations = r.iterations;
  sol.residual_norm = r.norm;
  return sol;
}

Solution solve(const TwoSpeciesSystemSpec& spec, const SolverConfig& cfg) {
  spec.validate();
  if (spec.n_a == 1 && spec.n_b == 1) return solve_two_body(spec, cfg);
  if (spec.n_b == 1) return solve_na_plus_one(spec, cfg);
  if (spec.n_a == 1) return unswap(solve_na_plus_one(spec.swapped(), cfg));
  return solve_two_species(spec, cfg);
}

Solution solve(const IdenticalSystemSpec& spec, const SolverConfig& cfg) {
  return solve_identical(spec, cfg);
}

std::vector<double> residuals(const IdenticalSystemSpec& spec,
                              const Solution& sol) {
  spec.validate();
  IdenticalView v(spec);
  const double p = sol.mean("p0");
  const double r = sol.mean("rho0");
  const double lhs = spec.n * spec.kinetic.derivative(p) * p;
  const double rhs = v.c2 * spec.potential.derivative(r) * r;
  return {
      sol.energy - (spec.n * spec.kinetic.value(p) + v.c2 * spec.potential.value(r)),
      lhs - rhs,
      spec.q - std::sqrt(v.c2) * p * r,
  };
}

std::vector<double> residuals(const TwoSpeciesSystemSpec& spec,
                              const Solution& sol) {
  spec.validate();
  if (spec.n_a == 1 && spec.n_b != 1)
    return residuals(spec.swapped(), unswap(sol));

  if (spec.n_a == 1 && spec.n_b == 1) {
    const double P = sol.mean("P0");
    const double R = sol.mean("R0");
    const double lhs =
        (spec.kinetic_a.derivative(P) + spec.kinetic_b.derivative(P)) * P;
    return {
        sol.energy - (spec.kinetic_a.value(P) + spec.kinetic_b.value(P) +
                      spec.v_ab.value(R)),
        lhs - spec.v_ab.derivative(R) * R,
        spec.q_rel - P * R,
    };
  }

  if (spec.n_b == 1) {
    NaPlusOneView v(spec);
    NaPlusOneView::Means m{};
    m.pa = sol.mean("p_a");
    m.P0 = sol.mean("P0");
    m.raa = sol.mean("r_aa");
    m.R0 = sol.mean("R0");
    m.ppa = sol.mean("p_prime_a");
    m.rp0 = sol.mean("r_prime_0");

    const double tpa = spec.kinetic_a.derivative(m.ppa);
    const double vab = spec.v_ab.derivative(m.rp0);
    const double la = spec.n_a * tpa * m.pa * m.pa / m.ppa;
    const double ra = v.c2a * spec.v_aa.derivative(m.raa) * m.raa +
                      (spec.n_a - 1) / 2.0 * vab * m.raa * m.raa / m.rp0;
    const double lr = tpa * m.P0 * m.P0 / (spec.n_a * m.ppa) +
                      spec.kinetic_b.derivative(m.P0) * m.P0;
    const double rr = spec.n_a * vab * m.R0 * m.R0 / m.rp0;
    return {
        sol.energy - v.energy(m),
        la - ra,
        lr - rr,
        spec.q_a - v.sqa * m.pa * m.raa,
        spec.q_rel - m.P0 * m.R0,
    };
  }

  TwoSpeciesView v(spec);
  TwoSpeciesView::Means m{};
  m.pa = sol.mean("p_a");
  m.pb = sol.mean("p_b");
  m.P0 = sol.mean("P0");
  m.raa = sol.mean("r_aa");
  m.rbb = sol.mean("r_bb");
  m.R0 = sol.mean("R0");
  m.ppa = sol.mean("p_prime_a");
  m.ppb = sol.mean("p_prime_b");
  m.rp0 = sol.mean("r_prime_0");

  const double tpa = spec.kinetic_a.derivative(m.ppa);
  const double tpb = spec.kinetic_b.derivative(m.ppb);
  const double vab = spec.v_ab.derivative(m.rp0);
  const double la = spec.n_a * tpa * m.pa * m.pa / m.ppa;
  const double ra = v.c2a * spec.v_aa.derivative(m.raa) * m.raa +
                    (static_cast<double>(spec.n_b) / spec.n_a) * v.c2a * vab *
                        m.raa * m.raa / m.rp0;
  const double lb = spec.n_b * tpb * m.pb * m.pb / m.ppb;
  const double rb = v.c2b * spec.v_bb.derivative(m.rbb) * m.rbb +
                    (static_cast<double>(spec.n_a) / spec.n_b) * v.c2b * vab *
                        m.rbb * m.rbb / m.rp0;
  const double lr = tpa * m.P0 * m.P0 / (spec.n_a * m.ppa) +
                    tpb * m.P0 * m.P0 / (spec.n_b * m.ppb);
  const double rr = spec.n_a * spec.n_b * vab * m.R0 * m.R0 / m.rp0;
  return {
      sol.energy - v.energy(m),
      la - ra,
      lb - rb,
      lr - rr,
      spec.q_a - v.sqa * m.pa * m.raa,
      spec.q_b - v.sqb * m.pb * m.rbb,
      spec.q_rel - m.P0 * m.R0,
  };
}

}  // namespace et::compact
