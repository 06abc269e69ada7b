#pragma once

#include <map>
#include <span>
#include <string>

#include "laws.hpp"

namespace et {

// Pair counts stay exact below this; the method itself is N-independent.
inline constexpr long long kMaxParticleCount = 1000000;

// Quantum numbers (n, l) of one internal Jacobi degree of freedom.
// An N-body internal state carries N-1 such pairs. For D = 1 the angular
// label is absent and l must be 0.
struct QuantumPair {
  long long n = 0;
  long long l = 0;
};

// Number of interacting pairs, N(N-1)/2.
long long pair_count(long long n);

// Global oscillator band number:
//   sum_i (2 n_i + l_i + D/2)  for D >= 2
//   sum_i (n_i + 1/2)          for D = 1
double global_quantum_number(std::span<const QuantumPair> pairs, int dim);

// Q with every quantum number zero: (N-1) D/2, or (N-1)/2 in one dimension.
double boson_ground_q(long long n, int dim);

struct IdenticalSystemSpec {
  long long n;
  int dim;
  KineticLaw kinetic;
  PotentialLaw potential;
  double q;  // global quantum number Q(N)

  void validate() const;
};

// N_a + N_b system. Internal motions carry Q(N_a) and Q(N_b); the relative
// motion of the two centres of mass carries a two-body Q. For a single
// particle per set the internal Q must be 0 and the in-set potential is
// never evaluated.
struct TwoSpeciesSystemSpec {
  long long n_a;
  long long n_b;
  int dim;
  KineticLaw kinetic_a;
  KineticLaw kinetic_b;
  PotentialLaw v_aa;
  PotentialLaw v_bb;
  PotentialLaw v_ab;
  double q_a;
  double q_b;
  double q_rel;

  void validate() const;

  // Same system with the roles of the two sets exchanged.
  TwoSpeciesSystemSpec swapped() const;
};

enum class Method {
  compact_identical,
  compact_two_species,
  compact_na_plus_1,
  compact_two_body,
  extremization,
};

const char* method_name(Method m);

// Converged eigensolution: the approximate energy plus the mean momenta and
// distances that parametrize it. Key names:
//   identical:    p0, rho0
//   two species:  p_a, p_b, P0, r_aa, r_bb, R0, p_prime_a, p_prime_b,
//                 r_prime_0 (r_aa/r_bb only when the set has >= 2 particles;
//                 p_b = 0 in the N_b = 1 reduction)
//   two body:     P0, R0
struct Solution {
  double energy = 0;
  std::map<std::string, double> means;
  double residual_norm = 0;
  int iterations = 0;
  Method method = Method::compact_identical;
  // Several distinct roots were bracketed; the lowest-energy one is returned.
  bool ambiguous_root = false;

  double mean(const std::string& name) const;
};

// Auxiliary masses and spring strengths of the oscillator Hamiltonian that
// envelopes the true one. Entries that are pinned by a degenerate law or
// unused for single-particle sets still carry their (pinned/placeholder)
// values.
struct AuxiliaryParameters {
  double mu_a = 1;
  double mu_b = 1;
  double rho_aa = 1;
  double rho_bb = 1;
  double rho_ab = 1;
};

struct SolverConfig {
  double tol = 1e-10;          // scaled residual / gradient target
  int max_iter = 200;
  double bracket_growth = 2.0; // geometric bracket expansion factor
  double damping = 1.0;        // initial Newton step fraction

  void validate() const;
};

}  // namespace et
