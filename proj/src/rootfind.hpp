#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace et {

using Fn1 = std::function<double(double)>;
using FnN = std::function<std::vector<double>(const std::vector<double>&)>;

struct Bracket {
  double lo, hi;
  double flo, fhi;
};

// Expand geometrically around seed (> 0) until f changes sign. Alternates
// upward and downward steps so nearby roots are found first.
std::optional<Bracket> expand_bracket(const Fn1& f, double seed, double growth,
                                      int max_steps);

// All sign-change intervals of f on a log-spaced grid over [lo, hi].
std::vector<Bracket> scan_brackets(const Fn1& f, double lo, double hi,
                                   int points);

struct RootResult {
  double x = 0;
  double f = 0;
  int iterations = 0;
  bool converged = false;
};

// Bisection with secant acceleration inside a sign-change bracket.
RootResult solve_bracketed(const Fn1& f, Bracket b, double xtol_rel,
                           int max_iter);

struct NewtonOptions {
  double tol = 1e-10;       // max-norm residual target
  int max_iter = 200;
  double fd_step = 1e-6;    // central-difference step (absolute, caller's coords)
  double damping = 1.0;     // initial step fraction, halved on overshoot
};

struct NewtonResult {
  std::vector<double> x;
  std::vector<double> f;
  double norm = 0;
  int iterations = 0;
  bool converged = false;
};

// Damped Newton on F(x) = 0 with a central finite-difference Jacobian.
// Callers typically pass log-coordinates so positivity is automatic.
NewtonResult damped_newton(const FnN& F, std::vector<double> x0,
                           const NewtonOptions& opt);

// Dense solve of a small linear system (partial pivoting). Returns false if
// singular to working precision. a is n x n row-major, overwritten.
bool solve_linear(std::vector<double>& a, std::vector<double>& b, int n);

double max_abs(const std::vector<double>& v);

}  // namespace et
