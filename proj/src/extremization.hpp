#pragma once

#include <utility>

#include "model.hpp"

namespace et::extremization {

struct AuxiliaryEnergyBreakdown {
  double e_ho = 0;   // oscillator eigenvalue at the given parameters
  double b = 0;      // law-dependent offset
  double total = 0;  // e_ho + b
};

// Oscillator eigenvalue of the enveloping Hamiltonian,
//   Q(N_a) w_a + Q(N_b) w_b + Q(2) w_rel,
// with w_a = sqrt((2/mu_a)(N_a rho_aa + N_b rho_ab)), the b-analogue, and
// w_rel = sqrt((2/mu) N_a N_b rho_ab), mu the reduced mass of the two sets.
// Pure evaluation; parameters are not validated beyond positivity of the
// combinations under the square roots.
double harmonic_eigenvalue(const AuxiliaryParameters& params,
                           const TwoSpeciesSystemSpec& spec);

// Offset sum N_a [T_a(G_a) - G_a^2/(2 mu_a)] + pair terms
// C2 [V(J) - rho J^2]; identically zero for the degenerate (quadratic) laws
// at their pinned parameters.
double b_function(const AuxiliaryParameters& params,
                  const TwoSpeciesSystemSpec& spec);

AuxiliaryEnergyBreakdown auxiliary_energy(const AuxiliaryParameters& params,
                                          const TwoSpeciesSystemSpec& spec);

// Locate the stationary point of the auxiliary energy over the free
// parameters (degenerate laws pin theirs; single-particle sets drop their
// in-set strength), then rebuild the physical means from the oscillator
// eigenstate. Independent of the compact route: seeded by self-consistent
// iteration, not by a compact solution.
std::pair<Solution, AuxiliaryParameters> extremize(
    const TwoSpeciesSystemSpec& spec, const SolverConfig& cfg = {});

// Same route for identical particles (one mass, one strength).
std::pair<Solution, AuxiliaryParameters> extremize(
    const IdenticalSystemSpec& spec, const SolverConfig& cfg = {});

}  // namespace et::extremization
