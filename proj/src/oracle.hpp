#pragma once

#include "model.hpp"

namespace et::oracle {

enum class OracleMethod { exact_ho, closed_form, radial_numeric };

const char* oracle_method_name(OracleMethod m);

struct OracleResult {
  double energy = 0;
  OracleMethod method = OracleMethod::exact_ho;
  double est_accuracy = 0;  // relative; 0 for exact paths
};

// Exact spectrum of the oscillator system (all potentials r^2, all kinetic
// laws quadratic): the enveloping Hamiltonian coincides with the true one.
OracleResult exact_ho_energy(const TwoSpeciesSystemSpec& spec);
OracleResult exact_ho_energy(const IdenticalSystemSpec& spec);

// Hydrogen-like level -mu alpha^2 / (2 (n + l + 1)^2) for V = -alpha/r.
OracleResult coulomb_two_body(double mu, double alpha, long long n,
                              long long l);
// Linear-potential s-wave levels from Airy zeros, V = a r, l = 0, n <= 3.
OracleResult linear_two_body_s(double mu, double a, long long n);

// Reduced radial equation -(1/2mu) u'' + V_eff u = E u solved by Numerov
// shooting, integrating outward and inward with matching at the outer
// turning point and counting nodes to select the state. The centrifugal
// term is l(l+1)/(2 mu r^2) in D=3 and (l^2 - 1/4)/(2 mu r^2) in D=2 (the
// log-degenerate l=0 case is rejected there); in D=1 the label l in {0, 1}
// selects even/odd parity about the origin. `accuracy` is the relative
// grid-refinement target.
OracleResult radial_two_body(double mu, const PotentialLaw& potential, int dim,
                             long long n, long long l,
                             double accuracy = 1e-8);

}  // namespace et::oracle
