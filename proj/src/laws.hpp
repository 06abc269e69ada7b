#pragma once

#include <vector>

#include "errors.hpp"

namespace et {

// One-body kinetic energy T(p), p = |momentum|. Natural units.
//
// Supported families:
//   nonrelativistic   T = p^2 / (2m),  m > 0
//   relativistic      T = sqrt(p^2 + m^2),  m >= 0
//   ultrarelativistic T = p
//   power             T = A p^beta,  A > 0, beta > 0
//
// Each law also provides the inverse G of the relation T'(G(x)) = G(x)/x,
// used by the auxiliary-Hamiltonian route. The quadratic laws
// (nonrelativistic, power with beta = 2) have no such inverse: the relation
// holds only at one pinned x, signalled by DegenerateLaw.
class KineticLaw {
 public:
  enum class Form { nonrelativistic, relativistic, ultrarelativistic, power };

  static KineticLaw nonrelativistic(double mass);
  static KineticLaw relativistic(double mass);
  static KineticLaw ultrarelativistic();
  static KineticLaw power(double coef, double exponent);

  double value(double p) const;       // T(p), p >= 0
  double derivative(double p) const;  // dT/dp, p > 0

  // G(x) with T'(G(x)) = G(x)/x. Throws DegenerateLaw for quadratic forms,
  // DomainError for relativistic x < m.
  double aux_inverse(double x) const;

  bool degenerate() const;
  // The single admissible auxiliary mass of a degenerate law
  // (m, or 1/(2A) for T = A p^2).
  double pinned_mass() const;

  Form form() const { return form_; }
  double mass() const { return mass_; }
  double coef() const { return coef_; }
  double exponent() const { return exponent_; }

 private:
  KineticLaw(Form f, double m, double c, double e)
      : form_(f), mass_(m), coef_(c), exponent_(e) {}
  Form form_;
  double mass_ = 0;
  double coef_ = 0;
  double exponent_ = 0;
};

// Two-body central potential V(r), a sum of power laws sum_k a_k r^{b_k}.
// A term binds when a*b > 0 (covers a>0,b>0 confinement and a<0,b<0
// attractive singular tails); at least one binding term is required.
// Terms with equal exponents are merged at construction.
//
// J is the inverse of V'(J(x)) = 2 x J(x). A lone r^2 term pins the
// auxiliary strength to its coefficient instead (DegenerateLaw).
class PotentialLaw {
 public:
  struct Term {
    double coef;
    double exponent;
  };

  static PotentialLaw power(double coef, double exponent);
  static PotentialLaw sum(std::vector<Term> terms);

  double value(double r) const;       // V(r), r > 0
  double derivative(double r) const;  // dV/dr, r > 0

  // J(x) > 0 with V'(J(x)) = 2 x J(x), x > 0. Closed form for a single
  // power term, bracketed root-finding for sums.
  double aux_inverse(double x) const;
  // Numeric path, also valid for single terms; used to cross-check the
  // closed form.
  double aux_inverse_numeric(double x) const;

  bool degenerate() const;
  double pinned_strength() const;  // the r^2 coefficient of a degenerate law

  const std::vector<Term>& terms() const { return terms_; }
  bool single_term() const { return terms_.size() == 1; }

 private:
  explicit PotentialLaw(std::vector<Term> terms);
  std::vector<Term> terms_;
};

}  // namespace et
