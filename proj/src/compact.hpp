#pragma once

#include <vector>

#include "model.hpp"

namespace et::compact {

// Identical particles. The three compact equations
//   E            = N T(p0) + C2 V(rho0)
//   N T'(p0) p0  = C2 V'(rho0) rho0
//   Q            = sqrt(C2) p0 rho0
// are reduced to one equation in p0 by eliminating rho0 through the
// quantization rule, then solved by bracketing.
Solution solve_identical(const IdenticalSystemSpec& spec,
                         const SolverConfig& cfg = {});

// N_a, N_b >= 2. The three virial equations are solved in (p_a, p_b, P0) by
// damped Newton after eliminating r_aa, r_bb, R0 through the quantization
// rules; seeds come from the two decoupled single-set problems.
Solution solve_two_species(const TwoSpeciesSystemSpec& spec,
                           const SolverConfig& cfg = {});

// N_b = 1, N_a >= 2: the five-equation reduction, solved in (p_a, P0).
// The lone particle has p_b = 0 and p'_b = P0.
Solution solve_na_plus_one(const TwoSpeciesSystemSpec& spec,
                           const SolverConfig& cfg = {});

// N_a = N_b = 1: the two-body equations
//   E = T_a(P0) + T_b(P0) + V(R0),
//   [T_a' + T_b'](P0) P0 = V'(R0) R0,   Q(2) = P0 R0.
Solution solve_two_body(const TwoSpeciesSystemSpec& spec,
                        const SolverConfig& cfg = {});

// Dispatch on the particle counts (1+1 -> two-body, one singleton ->
// N_a + 1 with roles swapped as needed, otherwise the full system).
Solution solve(const TwoSpeciesSystemSpec& spec, const SolverConfig& cfg = {});
Solution solve(const IdenticalSystemSpec& spec, const SolverConfig& cfg = {});

// Raw left-minus-right values of every equation of the applicable set, at
// the candidate energy and means carried by `sol`. Order:
//   identical:   [energy, virial, quantization]
//   two species: [energy, virial_a, virial_b, virial_rel,
//                 quant_a, quant_b, quant_rel]
//   N_a + 1:     [energy, virial_a, virial_rel, quant_a, quant_rel]
//   two body:    [energy, virial, quantization]
// For N_a = 1 inputs the two sets are exchanged before evaluation.
std::vector<double> residuals(const IdenticalSystemSpec& spec,
                              const Solution& sol);
std::vector<double> residuals(const TwoSpeciesSystemSpec& spec,
                              const Solution& sol);

}  // namespace et::compact
