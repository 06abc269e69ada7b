#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "extremization.hpp"

namespace et::oracle {

const char* oracle_method_name(OracleMethod m) {
  switch (m) {
    case OracleMethod::exact_ho:
      return "exact-ho";
    case OracleMethod::closed_form:
      return "closed-form";
    case OracleMethod::radial_numeric:
      return "radial-numeric";
  }
  return "?";
}

namespace {

bool quadratic_kinetic(const KineticLaw& k) {
  return k.form() == KineticLaw::Form::nonrelativistic ||
         (k.form() == KineticLaw::Form::power && k.exponent() == 2.0);
}

double kinetic_mass(const KineticLaw& k) { return k.pinned_mass(); }

bool harmonic(const PotentialLaw& v) { return v.degenerate(); }

}  // namespace

OracleResult exact_ho_energy(const TwoSpeciesSystemSpec& spec) {
  spec.validate();
  if (!quadratic_kinetic(spec.kinetic_a) || !quadratic_kinetic(spec.kinetic_b))
    throw InvalidInput("exact oscillator energy needs quadratic kinetic laws");
  if ((spec.n_a >= 2 && !harmonic(spec.v_aa)) ||
      (spec.n_b >= 2 && !harmonic(spec.v_bb)) || !harmonic(spec.v_ab))
    throw InvalidInput("exact oscillator energy needs pure r^2 potentials");

  AuxiliaryParameters ap;
  ap.mu_a = kinetic_mass(spec.kinetic_a);
  ap.mu_b = kinetic_mass(spec.kinetic_b);
  ap.rho_aa = spec.n_a >= 2 ? spec.v_aa.pinned_strength() : 0.0;
  ap.rho_bb = spec.n_b >= 2 ? spec.v_bb.pinned_strength() : 0.0;
  ap.rho_ab = spec.v_ab.pinned_strength();
  return {extremization::harmonic_eigenvalue(ap, spec),
          OracleMethod::exact_ho, 0.0};
}

OracleResult exact_ho_energy(const IdenticalSystemSpec& spec) {
  spec.validate();
  if (!quadratic_kinetic(spec.kinetic))
    throw InvalidInput("exact oscillator energy needs a quadratic kinetic law");
  if (!harmonic(spec.potential))
    throw InvalidInput("exact oscillator energy needs a pure r^2 potential");
  const double m = kinetic_mass(spec.kinetic);
  const double k = spec.potential.pinned_strength();
  if (!(k > 0)) throw InvalidInput("oscillator strength must be positive");
  return {spec.q * std::sqrt(2.0 * spec.n * k / m), OracleMethod::exact_ho,
          0.0};
}

OracleResult coulomb_two_body(double mu, double alpha, long long n,
                              long long l) {
  if (!(mu > 0) || !(alpha > 0)) throw InvalidInput("need mu > 0, alpha > 0");
  if (n < 0 || l < 0) throw InvalidInput("quantum numbers must be nonnegative");
  const double np = static_cast<double>(n + l + 1);
  return {-mu * alpha * alpha / (2 * np * np), OracleMethod::closed_form, 0.0};
}

OracleResult linear_two_body_s(double mu, double a, long long n) {
  if (!(mu > 0) || !(a > 0)) throw InvalidInput("need mu > 0, a > 0");
  // |zeros| of Ai.
  static constexpr double kAiryZeros[] = {
      2.338107410459767, 4.087949444130971, 5.520559828095551,
      6.786708090071759};
  if (n < 0 || n >= static_cast<long long>(std::size(kAiryZeros)))
    throw InvalidInput("linear-potential closed form covers n <= 3");
  return {kAiryZeros[n] * std::cbrt(a * a / (2 * mu)),
          OracleMethod::closed_form, 0.0};
}

namespace {

// One Numerov pass. u'' = w(r) u with w = 2 mu (V_eff - E).
struct Shot {
  int nodes = 0;
  bool count_valid = false;
  double defect = 0;  // discrete matching defect at the turning index
  bool valid = false;
};

struct RadialGrid {
  double mu;
  const PotentialLaw* v;
  int dim;
  long long l;
  double h;
  std::vector<double> r;     // grid abscissae
  std::vector<double> veff;  // V(r) + centrifugal

  void build(double rmax, int npts) {
    // D >= 2 grids start at h to stay clear of the centrifugal singularity;
    // the parity grid in D = 1 starts at the origin.
    const bool from_origin = dim == 1;
    h = from_origin ? rmax / (npts - 1) : rmax / npts;
    r.resize(npts);
    veff.resize(npts);
    double lam = 0;
    if (dim == 3) lam = static_cast<double>(l) * (l + 1);
    if (dim == 2) lam = static_cast<double>(l) * l - 0.25;
    for (int i = 0; i < npts; ++i) {
      r[i] = from_origin ? i * h : (i + 1) * h;
      if (i == 0 && from_origin) {
        veff[i] = 0;  // filled below; origin handled separately
        continue;
      }
      veff[i] = v->value(r[i]) + lam / (2 * mu * r[i] * r[i]);
    }
    if (from_origin) veff[0] = v->value(1e-12);  // finite by construction
  }

  double w(int i, double e) const { return 2 * mu * (veff[i] - e); }

  // Frobenius start of the regular branch, u = r^s sum_k c_k r^k. Seeding
  // the recursion this deep keeps the irregular branch out even for the
  // log-degenerate two-dimensional s-wave. Integer-order contributions of
  // the potential (1/r, constant via -E, linear) are carried to k = 3.
  double start_value(double rr, double e) const {
    const double s = dim == 3 ? static_cast<double>(l) + 1
                              : static_cast<double>(l) + 0.5;
    double wm1 = 0, w1 = 0;
    for (const auto& t : v->terms()) {
      if (t.exponent == -1.0) wm1 = 2 * mu * t.coef;
      if (t.exponent == 1.0) w1 = 2 * mu * t.coef;
    }
    const double w0 = -2 * mu * e;
    const double c1 = wm1 / (2 * s);
    const double c2 = (w0 + wm1 * c1) / (4 * s + 2);
    const double c3 = (w1 + w0 * c1 + wm1 * c2) / (6 * s + 6);
    return std::pow(rr, s) * (1 + rr * (c1 + rr * (c2 + rr * c3)));
  }
};

constexpr double kRescale = 1e140;

Shot shoot(const RadialGrid& g, double e) {
  const int n = static_cast<int>(g.r.size());
  Shot s;

  // Matching point: outermost grid index inside the classically allowed
  // region, clamped away from the ends. Without one (energy below the
  // potential floor) only the node count is meaningful.
  int im = -1;
  for (int i = n - 2; i >= 1; --i)
    if (g.w(i, e) < 0) {
      im = i;
      break;
    }
  if (im > n - 3) im = n - 3;

  const double h2 = g.h * g.h;
  auto t = [&](int i) { return h2 / 12.0 * g.w(i, e); };

  // Outward sweep over the whole grid, counting sign changes on the fly
  // (the count below an energy equals the number of boxed states there).
  // The solution is renormalized against overflow; the values at the
  // matching point are kept on the running scale.
  double u0, u1;
  if (g.dim == 1) {
    if (g.l == 0) {
      u0 = 1.0;
      u1 = 1.0 + 0.5 * h2 * g.w(0, e);
    } else {
      u0 = 0.0;
      u1 = g.h;
    }
  } else {
    u0 = g.start_value(g.r[0], e);
    u1 = g.start_value(g.r[1], e);
  }

  double om1 = 0, o0 = 0, op1 = 0;  // outward u at im-1, im, im+1
  if (im - 1 == 0) om1 = u0;
  if (im - 1 == 1) om1 = u1;
  if (im == 1) o0 = u1;

  int nodes = 0;
  for (int i = 1; i < n - 1; ++i) {
    double u2 =
        ((2 + 10 * t(i)) * u1 - (1 - t(i - 1)) * u0) / (1 - t(i + 1));
    if (!std::isfinite(u2)) return s;
    if (u1 != 0.0 && u1 * u2 < 0.0) ++nodes;
    if (i + 1 == im - 1) om1 = u2;
    if (i + 1 == im) o0 = u2;
    if (i + 1 == im + 1) op1 = u2;
    u0 = u1;
    u1 = u2;
    if (std::abs(u1) > kRescale) {
      const double f = 1.0 / std::abs(u1);
      u0 *= f;
      u1 *= f;
      om1 *= f;
      o0 *= f;
      op1 *= f;
    }
  }
  s.nodes = nodes;
  s.count_valid = true;
  if (im < 1) return s;

  // Inward sweep from a decaying seed down to the matching point.
  double v1 = 1.0;  // u at i+1 (rolling), seeded at the last grid point
  const double kappa = std::sqrt(std::max(g.w(n - 1, e), 1e-12));
  double v0 = v1 * std::exp(kappa * g.h);  // u at i = n-2
  double i_im = 0, i_imp1 = 0;             // inward u at im, im+1
  if (im + 1 == n - 2) i_imp1 = v0;
  if (im + 1 == n - 1) i_imp1 = v1;
  for (int i = n - 2; i > im; --i) {
    double vm =
        ((2 + 10 * t(i)) * v0 - (1 - t(i + 1)) * v1) / (1 - t(i - 1));
    if (!std::isfinite(vm)) return s;
    if (i - 1 == im + 1) i_imp1 = vm;
    if (i - 1 == im) i_im = vm;
    v1 = v0;
    v0 = vm;
    if (std::abs(v0) > kRescale) {
      const double f = 1.0 / std::abs(v0);
      v0 *= f;
      v1 *= f;
      i_im *= f;
      i_imp1 *= f;
    }
  }
  if (o0 == 0.0 || i_im == 0.0) return s;

  // Defect: the pieced solution (inward branch scaled to agree at im) must
  // satisfy the three-term recurrence across the matching point.
  const double scale = o0 / i_im;
  const double lhs = (1 - t(im - 1)) * om1 + (1 - t(im + 1)) * i_imp1 * scale;
  const double rhs = (2 + 10 * t(im)) * o0;
  s.defect = (lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  s.valid = std::isfinite(s.defect);
  return s;
}

// Eigenvalue of the discretized problem on the current grid.
double eigen_on_grid(const RadialGrid& g, long long n_target, double e_lo,
                     double e_hi, bool* ok) {
  *ok = false;
  auto nodes_of = [&](double e) {
    const Shot s = shoot(g, e);
    return s.count_valid ? s.nodes : 0;
  };

  // The state count below e_lo must not exceed the target; above e_hi it
  // must. Callers widen the window when this fails.
  if (nodes_of(e_hi) < static_cast<int>(n_target) + 1) return 0;

  double lo = e_lo, hi = e_hi;
  for (int it = 0; it < 240; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (nodes_of(mid) > static_cast<int>(n_target))
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= 1e-15 * std::max({1e-3, std::abs(lo), std::abs(hi)})) break;
  }

  // Refine on the matching defect inside the node bracket when it changes
  // sign there; otherwise the node bisection above is already tight.
  const Shot slo = shoot(g, lo), shi = shoot(g, hi);
  if (slo.valid && shi.valid && slo.defect * shi.defect < 0) {
    double flo = slo.defect, fhi = shi.defect;
    for (int it = 0; it < 120; ++it) {
      double m = hi - fhi * (hi - lo) / (fhi - flo);
      const double width = hi - lo;
      if (!std::isfinite(m) || m <= lo + 0.01 * width || m >= hi - 0.01 * width)
        m = 0.5 * (lo + hi);
      const Shot sm = shoot(g, m);
      if (!sm.valid) break;
      if (sm.defect * flo < 0) {
        hi = m;
        fhi = sm.defect;
      } else {
        lo = m;
        flo = sm.defect;
      }
      if (hi - lo <= 1e-16 * std::max({1e-3, std::abs(lo), std::abs(hi)}))
        break;
    }
  }
  *ok = true;
  return 0.5 * (lo + hi);
}

}  // namespace

OracleResult radial_two_body(double mu, const PotentialLaw& potential, int dim,
                             long long n, long long l, double accuracy) {
  if (!(mu > 0)) throw InvalidInput("reduced mass must be positive");
  if (dim < 1 || dim > 3)
    throw InvalidInput("radial oracle covers D in {1, 2, 3}");
  if (n < 0 || l < 0) throw InvalidInput("quantum numbers must be nonnegative");
  if (dim == 1 && l > 1)
    throw InvalidInput("in D = 1 the label l selects parity and must be 0 or 1");
  if (dim == 2 && l == 0)
    throw InvalidInput(
        "the two-dimensional s-wave is log-degenerate at the origin and is "
        "not supported by the fixed-mesh integrator; use l >= 1");
  if (!(accuracy > 0)) throw InvalidInput("accuracy target must be positive");
  if (dim == 1 && l == 0) {
    // Even-parity start needs V finite at the origin.
    for (const auto& t : potential.terms())
      if (t.exponent < 0)
        throw InvalidInput(
            "even-parity D = 1 states need a potential finite at the origin");
  }

  // Crude semiclassical length scale q^2/(2 mu |a| r^{b+2}) ~ 1 from the
  // dominant binding term; only used to size the initial box.
  double rscale = 1.0;
  for (const auto& t : potential.terms()) {
    if (t.coef * t.exponent <= 0) continue;
    const double qeff = static_cast<double>(n + l + 2);
    const double rs =
        std::pow(qeff * qeff / (2 * mu * std::abs(t.coef)), 1.0 / (t.exponent + 2));
    rscale = std::max(rscale == 1.0 ? 0.0 : rscale, rs);
  }
  if (rscale == 0) rscale = 1.0;

  double rmax = 8 * rscale * (1 + static_cast<double>(n + l));
  RadialGrid g{mu, &potential, dim, l, 0, {}, {}};

  auto solve_on = [&](double box, int npts, bool* ok) {
    g.build(box, npts);
    const double vmin =
        *std::min_element(g.veff.begin() + (dim == 1 ? 1 : 0), g.veff.end());
    const double e_lo = vmin - 1e-6 * (1 + std::abs(vmin));
    return eigen_on_grid(g, n, e_lo, g.veff.back(), ok);
  };

  // Size the box first: the scanned window must hold the state and the
  // forbidden tail has to bury the eigenfunction (integrated decay >= 18).
  double e = 0;
  bool sized = false;
  for (int attempt = 0; attempt < 24 && !sized; ++attempt) {
    bool ok = false;
    e = solve_on(rmax, 4000, &ok);
    if (!ok) {
      rmax *= 1.6;
      if (attempt == 23)
        throw NoBoundState("radial oracle: no state with the requested nodes "
                           "in the scanned window");
      continue;
    }
    int it_turn = static_cast<int>(g.r.size()) - 1;
    for (int i = static_cast<int>(g.r.size()) - 2; i >= 1; --i)
      if (g.w(i, e) < 0) {
        it_turn = i;
        break;
      }
    double tail = 0;
    for (int i = it_turn; i < static_cast<int>(g.r.size()); ++i)
      tail += std::sqrt(std::max(g.w(i, e), 0.0)) * g.h;
    if (tail < 18.0)
      rmax *= 1.6;
    else
      sized = true;
  }
  if (!sized)
    throw NoConvergence("radial oracle: box sizing did not settle", 0.0);

  // Refine the step at fixed box until halving stops moving the energy.
  double prev = e;
  double change = 0;
  for (int npts = 8000; npts <= 4'000'000; npts *= 2) {
    bool ok = false;
    e = solve_on(rmax, npts, &ok);
    if (!ok)
      throw NoBoundState("radial oracle: state left the window under "
                         "refinement");
    change = std::abs(e - prev) / std::max(std::abs(e), 1e-300);
    if (change <= accuracy) {
      // Just below the eigenvalue the node count must equal the target.
      const Shot s = shoot(g, e - 1e-9 * (1 + std::abs(e)));
      if (s.count_valid && s.nodes != static_cast<int>(n))
        throw NoBoundState("radial oracle: node count mismatch at the "
                           "converged energy");
      return {e, OracleMethod::radial_numeric, std::max(change, 5e-14)};
    }
    prev = e;
  }
  throw NoConvergence("radial oracle: grid refinement exhausted", change);
}

}  // namespace et::oracle
