#include <cmath>

#include "compact.hpp"
#include "doctest.h"

using namespace et;

namespace {

const auto nr1 = KineticLaw::nonrelativistic(1.0);
const auto harmonic_half = PotentialLaw::power(0.5, 2.0);
const auto coulomb = PotentialLaw::power(-1.0, -1.0);
const auto linear = PotentialLaw::power(1.0, 1.0);

double rel(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

}  // namespace

TEST_CASE("identical particles: oscillator is reproduced exactly") {
  IdenticalSystemSpec s{3, 3, nr1, harmonic_half, 3.0};
  const auto sol = compact::solve_identical(s);
  CHECK(rel(sol.energy, 3.0 * std::sqrt(3.0)) <= 1e-12);
  CHECK(sol.method == Method::compact_identical);
  CHECK(sol.mean("p0") > 0);
  CHECK(sol.mean("rho0") > 0);
  CHECK(sol.residual_norm <= 1e-10);
}

TEST_CASE("identical particles: two-body closed forms") {
  // Coulomb pair: E = -m alpha^2 / (4 Q^2)
  IdenticalSystemSpec c{2, 3, nr1, coulomb, 1.5};
  CHECK(std::abs(compact::solve_identical(c).energy - (-1.0 / 9.0)) <= 1e-12);

  // Linear pair: p0^3 = Q/2, E = 3 p0^2
  IdenticalSystemSpec l{2, 3, nr1, linear, 1.5};
  const double expect = 3.0 * std::pow(0.75, 2.0 / 3.0);
  CHECK(std::abs(compact::solve_identical(l).energy - expect) <= 1e-12);
}

TEST_CASE("two species: oscillator system hits the exact level") {
  TwoSpeciesSystemSpec ts{2,
                          3,
                          3,
                          KineticLaw::nonrelativistic(1.0),
                          KineticLaw::nonrelativistic(2.0),
                          PotentialLaw::power(1.0, 2.0),
                          PotentialLaw::power(2.0, 2.0),
                          PotentialLaw::power(3.0, 2.0),
                          1.5,
                          3.0,
                          1.5};
  // Exact level: Q_a sqrt((2/m_a)(N_a k_aa + N_b k_ab))
  //            + Q_b sqrt((2/m_b)(N_b k_bb + N_a k_ab))
  //            + Q_2 sqrt((2/mu) N_a N_b k_ab), mu = M_a M_b/(M_a + M_b).
  const double mu = (2.0 * 1.0) * (3.0 * 2.0) / (2.0 * 1.0 + 3.0 * 2.0);
  const double expect = 1.5 * std::sqrt(2.0 / 1.0 * (2 * 1.0 + 3 * 3.0)) +
                        3.0 * std::sqrt(2.0 / 2.0 * (3 * 2.0 + 2 * 3.0)) +
                        1.5 * std::sqrt(2.0 / mu * 6 * 3.0);
  CHECK(expect == doctest::Approx(24.77639771349794).epsilon(1e-12));

  const auto sol = compact::solve_two_species(ts);
  CHECK(rel(sol.energy, expect) <= 1e-10);
  CHECK(sol.method == Method::compact_two_species);

  // The energy equation evaluated at the returned means reproduces the
  // returned energy identically.
  const auto res = compact::residuals(ts, sol);
  CHECK(res.size() == 7);
  CHECK(std::abs(res[0]) <= 1e-12 * std::abs(sol.energy));
}

TEST_CASE("symmetric two-species input recovers the one-set equations") {
  const auto kin = KineticLaw::relativistic(1.0);
  TwoSpeciesSystemSpec ts{2, 2, 3, kin, kin, linear, linear, linear,
                          1.5, 1.5, 1.5};
  const auto two = compact::solve_two_species(ts);
  IdenticalSystemSpec idn{4, 3, kin, linear, 4.5};
  const auto one = compact::solve_identical(idn);

  CHECK(rel(two.energy, one.energy) <= 1e-10);
  CHECK(rel(two.mean("p_prime_a"), two.mean("p_prime_b")) <= 1e-10);
  CHECK(rel(two.mean("r_aa"), two.mean("r_bb")) <= 1e-10);
  CHECK(rel(two.mean("r_aa"), two.mean("r_prime_0")) <= 1e-10);
  CHECK(rel(two.mean("p_prime_a"), one.mean("p0")) <= 1e-10);
  CHECK(rel(two.mean("r_prime_0"), one.mean("rho0")) <= 1e-10);
}

TEST_CASE("one lone particle: reduced system and dispatch agree") {
  TwoSpeciesSystemSpec np1{2, 1, 3, nr1, nr1, harmonic_half, harmonic_half,
                           harmonic_half, 1.5, 0.0, 1.5};
  const auto red = compact::solve_na_plus_one(np1);
  // identical three-particle oscillator in disguise
  CHECK(rel(red.energy, 3.0 * std::sqrt(3.0)) <= 1e-10);
  CHECK(red.mean("p_b") == 0.0);
  CHECK(red.mean("p_prime_b") == red.mean("P0"));

  const auto via_dispatch = compact::solve(np1);
  CHECK(via_dispatch.method == Method::compact_na_plus_1);
  CHECK(rel(via_dispatch.energy, red.energy) <= 1e-12);

  // the mirrored system routes through the same reduction
  const auto mirrored = compact::solve(np1.swapped());
  CHECK(rel(mirrored.energy, red.energy) <= 1e-12);
  CHECK(mirrored.mean("p_a") == 0.0);
  CHECK(mirrored.mean("r_bb") == doctest::Approx(red.mean("r_aa")));
}

TEST_CASE("two-body reductions") {
  // equal nonrelativistic masses + Coulomb matches the identical N=2 solve
  TwoSpeciesSystemSpec tb{1, 1, 3, nr1, nr1, harmonic_half, harmonic_half,
                          coulomb, 0.0, 0.0, 1.5};
  const auto sol = compact::solve_two_body(tb);
  CHECK(std::abs(sol.energy - (-1.0 / 9.0)) <= 1e-12);
  CHECK(compact::solve(tb).method == Method::compact_two_body);

  // ultrarelativistic pair in a linear potential: P0 = sqrt(Q/2), E = 4 P0
  const auto ur = KineticLaw::ultrarelativistic();
  TwoSpeciesSystemSpec urtb{1, 1, 3, ur, ur, harmonic_half, harmonic_half,
                            linear, 0.0, 0.0, 1.5};
  const auto usol = compact::solve_two_body(urtb);
  CHECK(rel(usol.energy, 4.0 * std::sqrt(0.75)) <= 1e-12);
  CHECK(rel(usol.mean("P0"), std::sqrt(0.75)) <= 1e-12);

  // a massless relativistic law is the same thing
  const auto rel0 = KineticLaw::relativistic(0.0);
  TwoSpeciesSystemSpec rtb{1, 1, 3, rel0, rel0, harmonic_half, harmonic_half,
                           linear, 0.0, 0.0, 1.5};
  CHECK(rel(compact::solve_two_body(rtb).energy, usol.energy) <= 1e-12);
}

TEST_CASE("residual vector at and around an exact solution") {
  IdenticalSystemSpec s{3, 3, nr1, harmonic_half, 3.0};
  const auto sol = compact::solve_identical(s);
  auto res = compact::residuals(s, sol);
  REQUIRE(res.size() == 3);
  for (double r : res) CHECK(std::abs(r) <= 1e-12);

  // Scale p0 by 1.1, re-impose the quantization rule and the energy
  // definition: only the equation of motion can be violated.
  Solution prodded = sol;
  const double p = sol.mean("p0") * 1.1;
  const double rho = s.q / (std::sqrt(3.0) * p);
  prodded.means["p0"] = p;
  prodded.means["rho0"] = rho;
  prodded.energy = 3 * s.kinetic.value(p) + 3 * s.potential.value(rho);
  res = compact::residuals(s, prodded);
  CHECK(std::abs(res[0]) <= 1e-12);
  CHECK(std::abs(res[1]) > 1e-3);
  CHECK(std::abs(res[2]) <= 1e-12);
}

TEST_CASE("residuals of the two-body closed form") {
  TwoSpeciesSystemSpec tb{1, 1, 3, nr1, nr1, harmonic_half, harmonic_half,
                          coulomb, 0.0, 0.0, 1.5};
  // P0 = alpha m / (2 Q) with the pair reduced mass folded in; from the
  // closed form E = -1/9 at Q = 3/2: P0 = 1/3, R0 = Q/P0 = 4.5.
  Solution hand;
  hand.energy = -1.0 / 9.0;
  hand.means = {{"P0", 1.0 / 3.0}, {"R0", 4.5}};
  for (double r : compact::residuals(tb, hand)) CHECK(std::abs(r) <= 1e-12);
}

TEST_CASE("quantization rules hold at machine precision") {
  TwoSpeciesSystemSpec ts{3,
                          4,
                          3,
                          KineticLaw::relativistic(0.8),
                          KineticLaw::nonrelativistic(2.0),
                          linear,
                          PotentialLaw::power(0.6, 1.0),
                          PotentialLaw::sum({{0.5, 1.0}, {-0.2, -1.0}}),
                          3.0,
                          4.5,
                          1.5};
  const auto sol = compact::solve(ts);
  const double sqa = std::sqrt(3.0), sqb = std::sqrt(6.0);
  CHECK(std::abs(ts.q_a - sqa * sol.mean("p_a") * sol.mean("r_aa")) <=
        1e-12 * ts.q_a);
  CHECK(std::abs(ts.q_b - sqb * sol.mean("p_b") * sol.mean("r_bb")) <=
        1e-12 * ts.q_b);
  CHECK(std::abs(ts.q_rel - sol.mean("P0") * sol.mean("R0")) <=
        1e-12 * ts.q_rel);

  // derived means satisfy their defining combinations
  CHECK(rel(sol.mean("p_prime_a"),
            std::hypot(sol.mean("p_a"), sol.mean("P0") / 3.0)) <= 1e-12);
  const double rp0 = std::sqrt(
      (3 - 1) / (2.0 * 3) * sol.mean("r_aa") * sol.mean("r_aa") +
      (4 - 1) / (2.0 * 4) * sol.mean("r_bb") * sol.mean("r_bb") +
      sol.mean("R0") * sol.mean("R0"));
  CHECK(rel(sol.mean("r_prime_0"), rp0) <= 1e-12);

  // summed virial identity
  const double ppa = sol.mean("p_prime_a"), ppb = sol.mean("p_prime_b");
  const double lhs = 3 * ts.kinetic_a.derivative(ppa) * ppa +
                     4 * ts.kinetic_b.derivative(ppb) * ppb;
  const double rhs =
      3 * ts.v_aa.derivative(sol.mean("r_aa")) * sol.mean("r_aa") +
      6 * ts.v_bb.derivative(sol.mean("r_bb")) * sol.mean("r_bb") +
      12 * ts.v_ab.derivative(sol.mean("r_prime_0")) * sol.mean("r_prime_0");
  CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(lhs)));
}

TEST_CASE("energy grows with the band number for confining potentials") {
  for (const auto& pot : {linear, harmonic_half}) {
    double prev = -1.0;
    for (int k = 0; k <= 2; ++k) {
      IdenticalSystemSpec s{4, 3, nr1, pot, 4.5 + k};
      const double e = compact::solve_identical(s).energy;
      CHECK(e > prev);
      prev = e;
    }
  }
}

TEST_CASE("error paths") {
  // massless kinematics with a Coulomb tail have no positive virial root
  const auto ur = KineticLaw::ultrarelativistic();
  TwoSpeciesSystemSpec bad{1, 1, 3, ur, ur, harmonic_half, harmonic_half,
                           coulomb, 0.0, 0.0, 1.5};
  CHECK_THROWS_AS(compact::solve_two_body(bad), NoBinding);

  // an unreachable tolerance reports the best residual instead of lying
  // (the oscillator root leaves a small but nonzero rounding residual)
  IdenticalSystemSpec s{3, 3, nr1, harmonic_half, 3.0};
  SolverConfig strict;
  strict.tol = 1e-30;
  CHECK_THROWS_AS(compact::solve_identical(s, strict), NoConvergence);
  try {
    compact::solve_identical(s, strict);
  } catch (const NoConvergence& e) {
    CHECK(e.best_residual > 0);
    CHECK(e.best_residual < 1e-10);
  }

  // dispatch validates counts
  TwoSpeciesSystemSpec np{3, 1, 3, nr1, nr1, linear, linear, linear,
                          3.0, 0.0, 1.5};
  CHECK_THROWS_AS(compact::solve_two_species(np), InvalidInput);
  CHECK_THROWS_AS(compact::solve_two_body(np), InvalidInput);
}
