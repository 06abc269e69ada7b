#include "rootfind.hpp"

#include <algorithm>
#include <cmath>

namespace et {

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::optional<Bracket> expand_bracket(const Fn1& f, double seed, double growth,
                                      int max_steps) {
  double f0 = f(seed);
  if (f0 == 0.0) return Bracket{seed, seed, 0.0, 0.0};
  double up_x = seed, up_f = f0;
  double dn_x = seed, dn_f = f0;
  for (int k = 0; k < max_steps; ++k) {
    double nx = up_x * growth;
    double nf = f(nx);
    if (std::isfinite(nf) && nf * up_f <= 0.0) return Bracket{up_x, nx, up_f, nf};
    if (std::isfinite(nf)) {
      up_x = nx;
      up_f = nf;
    }
    nx = dn_x / growth;
    nf = f(nx);
    if (std::isfinite(nf) && nf * dn_f <= 0.0) return Bracket{nx, dn_x, nf, dn_f};
    if (std::isfinite(nf)) {
      dn_x = nx;
      dn_f = nf;
    }
  }
  return std::nullopt;
}

std::vector<Bracket> scan_brackets(const Fn1& f, double lo, double hi,
                                   int points) {
  std::vector<Bracket> out;
  if (!(lo > 0) || !(hi > lo) || points < 2) return out;
  const double step = std::log(hi / lo) / (points - 1);
  double px = lo, pf = f(lo);
  for (int i = 1; i < points; ++i) {
    const double x = lo * std::exp(step * i);
    const double fx = f(x);
    if (std::isfinite(pf) && std::isfinite(fx) && pf * fx <= 0.0 && pf != fx)
      out.push_back({px, x, pf, fx});
    px = x;
    pf = fx;
  }
  return out;
}

RootResult solve_bracketed(const Fn1& f, Bracket b, double xtol_rel,
                           int max_iter) {
  RootResult r;
  if (b.flo == 0.0) return {b.lo, 0.0, 0, true};
  if (b.fhi == 0.0) return {b.hi, 0.0, 0, true};
  double lo = b.lo, hi = b.hi, flo = b.flo, fhi = b.fhi;
  double x = lo, fx = flo;
  for (int it = 0; it < max_iter; ++it) {
    r.iterations = it + 1;
    // Secant proposal, midpoint when it leaves the bracket or stalls.
    double xs = hi - fhi * (hi - lo) / (fhi - flo);
    const double mid = 0.5 * (lo + hi);
    const double width = hi - lo;
    if (!std::isfinite(xs) || xs <= lo + 0.01 * width || xs >= hi - 0.01 * width)
      xs = mid;
    x = xs;
    fx = f(x);
    if (fx == 0.0 || !std::isfinite(fx)) break;
    if (flo * fx < 0.0) {
      hi = x;
      fhi = fx;
    } else {
      lo = x;
      flo = fx;
    }
    if (hi - lo <= xtol_rel * std::max(std::abs(lo), std::abs(hi))) break;
  }
  r.x = x;
  r.f = fx;
  r.converged = std::isfinite(fx);
  return r;
}

bool solve_linear(std::vector<double>& a, std::vector<double>& b, int n) {
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    if (std::abs(a[piv * n + c]) < 1e-300) return false;
    if (piv != c) {
      for (int k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
      std::swap(b[c], b[piv]);
    }
    for (int r = c + 1; r < n; ++r) {
      const double m = a[r * n + c] / a[c * n + c];
      if (m == 0.0) continue;
      for (int k = c; k < n; ++k) a[r * n + k] -= m * a[c * n + k];
      b[r] -= m * b[c];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < n; ++k) s -= a[r * n + k] * b[k];
    b[r] = s / a[r * n + r];
  }
  return true;
}

NewtonResult damped_newton(const FnN& F, std::vector<double> x0,
                           const NewtonOptions& opt) {
  const int n = static_cast<int>(x0.size());
  NewtonResult res;
  res.x = std::move(x0);
  res.f = F(res.x);
  res.norm = max_abs(res.f);

  for (int it = 0; it < opt.max_iter && res.norm > opt.tol; ++it) {
    res.iterations = it + 1;
    // Central-difference Jacobian.
    std::vector<double> jac(n * n);
    std::vector<double> xp = res.x;
    for (int j = 0; j < n; ++j) {
      const double h = opt.fd_step * std::max(1.0, std::abs(res.x[j]));
      xp[j] = res.x[j] + h;
      const auto fp = F(xp);
      xp[j] = res.x[j] - h;
      const auto fm = F(xp);
      xp[j] = res.x[j];
      for (int i = 0; i < n; ++i) jac[i * n + j] = (fp[i] - fm[i]) / (2 * h);
    }
    std::vector<double> step = res.f;
    if (!solve_linear(jac, step, n)) break;  // singular: let the caller fall back

    double lambda = opt.damping;
    bool accepted = false;
    for (int half = 0; half < 40; ++half) {
      std::vector<double> xn(n);
      for (int i = 0; i < n; ++i) xn[i] = res.x[i] - lambda * step[i];
      auto fn = F(xn);
      const double nn = max_abs(fn);
      if (std::isfinite(nn) && nn < res.norm) {
        res.x = std::move(xn);
        res.f = std::move(fn);
        res.norm = nn;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) break;  // stagnated
  }
  res.converged = res.norm <= opt.tol;
  return res;
}

}  // namespace et
