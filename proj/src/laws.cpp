#include "laws.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "rootfind.hpp"

namespace et {

namespace {

// Test hook: ET_TEST_CORRUPT_DERIVATIVE skews potential derivatives so the
// finite-difference consistency check in the validation battery trips.
bool corrupt_derivative_hook() {
  static const bool on = [] {
    const char* v = std::getenv("ET_TEST_CORRUPT_DERIVATIVE");
    return v != nullptr && v[0] != '\0' && v[0] != '0';
  }();
  return on;
}

}  // namespace

KineticLaw KineticLaw::nonrelativistic(double mass) {
  if (!(mass > 0) || !std::isfinite(mass))
    throw InvalidInput("nonrelativistic kinetic law requires mass > 0");
  return {Form::nonrelativistic, mass, 0, 0};
}

KineticLaw KineticLaw::relativistic(double mass) {
  if (!(mass >= 0) || !std::isfinite(mass))
    throw InvalidInput("relativistic kinetic law requires mass >= 0");
  return {Form::relativistic, mass, 0, 0};
}

KineticLaw KineticLaw::ultrarelativistic() {
  return {Form::ultrarelativistic, 0, 0, 0};
}

KineticLaw KineticLaw::power(double coef, double exponent) {
  if (!(coef > 0) || !(exponent > 0) || !std::isfinite(coef) ||
      !std::isfinite(exponent))
    throw InvalidInput("power kinetic law requires coef > 0 and exponent > 0");
  return {Form::power, 0, coef, exponent};
}

double KineticLaw::value(double p) const {
  switch (form_) {
    case Form::nonrelativistic:
      return p * p / (2 * mass_);
    case Form::relativistic:
      return std::hypot(p, mass_);
    case Form::ultrarelativistic:
      return p;
    case Form::power:
      return coef_ * std::pow(p, exponent_);
  }
  return 0;
}

double KineticLaw::derivative(double p) const {
  switch (form_) {
    case Form::nonrelativistic:
      return p / mass_;
    case Form::relativistic:
      return p / std::hypot(p, mass_);
    case Form::ultrarelativistic:
      return 1.0;
    case Form::power:
      return coef_ * exponent_ * std::pow(p, exponent_ - 1);
  }
  return 0;
}

bool KineticLaw::degenerate() const {
  return form_ == Form::nonrelativistic ||
         (form_ == Form::power && exponent_ == 2.0);
}

double KineticLaw::pinned_mass() const {
  if (form_ == Form::nonrelativistic) return mass_;
  if (form_ == Form::power && exponent_ == 2.0) return 1.0 / (2 * coef_);
  throw DegenerateLaw("kinetic law has no pinned auxiliary mass");
}

double KineticLaw::aux_inverse(double x) const {
  switch (form_) {
    case Form::nonrelativistic:
      throw DegenerateLaw(
          "T'(G) = G/x has no inverse for a quadratic kinetic law; the "
          "auxiliary mass is pinned at m");
    case Form::relativistic:
      if (x < mass_)
        throw DomainError("kinetic auxiliary inverse needs x >= m");
      return std::sqrt((x - mass_) * (x + mass_));
    case Form::ultrarelativistic:
      return x;  // T' = 1 = G/x
    case Form::power: {
      if (exponent_ == 2.0)
        throw DegenerateLaw(
            "T'(G) = G/x has no inverse for a quadratic kinetic law; the "
            "auxiliary mass is pinned at 1/(2A)");
      // A b G^{b-1} = G/x  =>  G = (A b x)^{1/(2-b)}
      return std::pow(coef_ * exponent_ * x, 1.0 / (2.0 - exponent_));
    }
  }
  return 0;
}

PotentialLaw::PotentialLaw(std::vector<Term> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (!std::isfinite(t.coef) || !std::isfinite(t.exponent))
      throw InvalidInput("potential term parameters must be finite");
    if (t.exponent == 0.0)
      throw InvalidInput("potential term exponent must be nonzero");
  }
  // Merge equal exponents, drop exact cancellations.
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
  std::vector<Term> merged;
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().exponent == t.exponent)
      merged.back().coef += t.coef;
    else
      merged.push_back(t);
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
  terms_ = std::move(merged);

  if (terms_.empty()) throw InvalidInput("potential has no nonzero terms");
  bool binds = false;
  for (const auto& t : terms_) binds |= t.coef * t.exponent > 0;
  if (!binds)
    throw InvalidInput("potential is repulsive everywhere and cannot bind");
}

PotentialLaw PotentialLaw::power(double coef, double exponent) {
  if (coef == 0.0) throw InvalidInput("potential coefficient must be nonzero");
  return PotentialLaw(std::vector<Term>{{coef, exponent}});
}

PotentialLaw PotentialLaw::sum(std::vector<Term> terms) {
  return PotentialLaw(std::move(terms));
}

double PotentialLaw::value(double r) const {
  double v = 0;
  for (const auto& t : terms_) v += t.coef * std::pow(r, t.exponent);
  return v;
}

double PotentialLaw::derivative(double r) const {
  double v = 0;
  for (const auto& t : terms_)
    v += t.coef * t.exponent * std::pow(r, t.exponent - 1);
  if (corrupt_derivative_hook()) v *= 1.0 + 1e-3;
  return v;
}

bool PotentialLaw::degenerate() const {
  return terms_.size() == 1 && terms_[0].exponent == 2.0;
}

double PotentialLaw::pinned_strength() const {
  if (!degenerate())
    throw DegenerateLaw("potential law has no pinned auxiliary strength");
  return terms_[0].coef;
}

double PotentialLaw::aux_inverse(double x) const {
  if (!(x > 0)) throw DomainError("potential auxiliary inverse needs x > 0");
  if (degenerate())
    throw DegenerateLaw(
        "V'(J) = 2xJ has no inverse for a pure r^2 potential; the auxiliary "
        "strength is pinned at the coefficient");
  if (terms_.size() == 1) {
    // a b J^{b-1} = 2 x J  =>  J = (a b / (2x))^{1/(2-b)}
    const auto& t = terms_[0];
    return std::pow(t.coef * t.exponent / (2 * x), 1.0 / (2.0 - t.exponent));
  }
  return aux_inverse_numeric(x);
}

double PotentialLaw::aux_inverse_numeric(double x) const {
  if (!(x > 0)) throw DomainError("potential auxiliary inverse needs x > 0");
  // Residual of the defining relation, h(J) = V'(J) - 2 x J.
  auto h = [&](double j) { return derivative(j) - 2 * x * j; };

  // Seed from the closed form of a binding non-quadratic term.
  double seed = 1.0;
  for (const auto& t : terms_) {
    if (t.coef * t.exponent > 0 && t.exponent != 2.0) {
      seed = std::pow(t.coef * t.exponent / (2 * x), 1.0 / (2.0 - t.exponent));
      break;
    }
  }
  auto br = expand_bracket(h, seed, 2.0, 200);
  if (!br) throw NoBinding("V'(J) = 2xJ has no positive root");
  auto root = solve_bracketed(h, *br, 1e-16, 300);
  const double j = root.x;
  const double rhs = 2 * x * j;
  if (!root.converged ||
      std::abs(derivative(j) - rhs) > 1e-12 * std::max(1.0, std::abs(rhs)))
    throw NoConvergence("potential auxiliary inverse did not converge",
                        std::abs(derivative(j) - rhs));
  return j;
}

}  // namespace et
