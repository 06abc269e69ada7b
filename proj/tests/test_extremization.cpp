#include <cmath>

#include "compact.hpp"
#include "doctest.h"
#include "extremization.hpp"

using namespace et;
using extremization::auxiliary_energy;
using extremization::b_function;
using extremization::extremize;
using extremization::harmonic_eigenvalue;

namespace {

const auto nr1 = KineticLaw::nonrelativistic(1.0);
const auto harm1 = PotentialLaw::power(1.0, 2.0);

double rel(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

}  // namespace

TEST_CASE("oscillator eigenvalue of the enveloping Hamiltonian") {
  // two heavy singlets bound by a unit spring: only the relative term
  TwoSpeciesSystemSpec s{1, 1, 3, nr1, nr1, harm1, harm1, harm1,
                         0.0, 0.0, 1.5};
  AuxiliaryParameters ap{2.0, 2.0, 1.0, 1.0, 1.0};
  CHECK(harmonic_eigenvalue(ap, s) ==
        doctest::Approx(1.5 * std::sqrt(2.0)).epsilon(1e-14));

  AuxiliaryParameters zero{2.0, 2.0, 0.0, 0.0, 0.0};
  CHECK(harmonic_eigenvalue(zero, s) == 0.0);

  // mirrors the compact-module oscillator example when pinned
  TwoSpeciesSystemSpec ho{2,
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
  AuxiliaryParameters pinned{1.0, 2.0, 1.0, 2.0, 3.0};
  CHECK(harmonic_eigenvalue(pinned, ho) ==
        doctest::Approx(24.77639771349794).epsilon(1e-12));
}

TEST_CASE("offset function") {
  // fully quadratic system at pinned parameters: the envelope is exact
  TwoSpeciesSystemSpec ho{2, 2, 3, nr1, nr1, harm1, harm1, harm1,
                          1.5, 1.5, 1.5};
  AuxiliaryParameters pinned{1.0, 1.0, 1.0, 1.0, 1.0};
  CHECK(b_function(pinned, ho) == 0.0);

  // single linear pair: V(J) - rho J^2 = 1/(4 rho)
  TwoSpeciesSystemSpec lin{1, 1, 3, nr1, nr1, harm1, harm1,
                           PotentialLaw::power(1.0, 1.0), 0.0, 0.0, 1.5};
  AuxiliaryParameters ap{1.0, 1.0, 1.0, 1.0, 0.5};
  CHECK(b_function(ap, lin) == doctest::Approx(0.5).epsilon(1e-14));

  // massive relativistic term: sqrt(G^2+m^2) - G^2/(2 mu), G = sqrt(mu^2-m^2)
  TwoSpeciesSystemSpec rel_sys{1, 1, 3, KineticLaw::relativistic(3.0), nr1,
                               harm1, harm1, harm1, 0.0, 0.0, 1.5};
  AuxiliaryParameters ap2{5.0, 1.0, 1.0, 1.0, 1.0};
  CHECK(b_function(ap2, rel_sys) == doctest::Approx(3.4).epsilon(1e-14));

  const auto full = auxiliary_energy(ap2, rel_sys);
  CHECK(full.total == full.e_ho + full.b);
}

TEST_CASE("pure oscillator systems extremize at the pinned parameters") {
  TwoSpeciesSystemSpec ho{2,
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
  const auto [sol, ap] = extremize(ho);
  CHECK(sol.iterations == 0);
  CHECK(ap.mu_a == 1.0);
  CHECK(ap.mu_b == 2.0);
  CHECK(ap.rho_ab == 3.0);
  CHECK(rel(sol.energy, harmonic_eigenvalue(ap, ho)) <= 1e-14);
  CHECK(sol.method == Method::extremization);
}

TEST_CASE("stationarity route reproduces the compact solutions") {
  // two-body Coulomb closed form
  TwoSpeciesSystemSpec cou{1, 1, 3, nr1, nr1, harm1, harm1,
                           PotentialLaw::power(-1.0, -1.0), 0.0, 0.0, 1.5};
  const auto [sol, ap] = extremize(cou);
  CHECK(std::abs(sol.energy - (-1.0 / 9.0)) <= 1e-10);
  CHECK(rel(sol.energy, compact::solve(cou).energy) <= 1e-10);

  // mixed kinematics and a linear+Coulomb tail
  TwoSpeciesSystemSpec mixed{2,
                             3,
                             3,
                             KineticLaw::relativistic(1.0),
                             KineticLaw::nonrelativistic(1.5),
                             PotentialLaw::power(0.8, 1.0),
                             PotentialLaw::power(0.5, 2.0),
                             PotentialLaw::sum({{1.0, 1.0}, {-0.3, -1.0}}),
                             1.5,
                             3.0,
                             1.5};
  const auto c = compact::solve(mixed);
  const auto e = extremize(mixed).first;
  CHECK(rel(c.energy, e.energy) <= 1e-8);

  // the reconstructed means agree with the compact ones as well
  for (const char* name : {"p_prime_a", "p_prime_b", "r_aa", "r_prime_0"})
    CHECK(rel(c.mean(name), e.mean(name)) <= 1e-6);
}

TEST_CASE("identical-particle stationarity route") {
  IdenticalSystemSpec s{5, 3, KineticLaw::relativistic(0.3),
                        PotentialLaw::power(0.9, 1.0), 6.0};
  const auto c = compact::solve(s);
  const auto [e, ap] = extremize(s);
  CHECK(rel(c.energy, e.energy) <= 1e-8);
  CHECK(rel(c.mean("p0"), e.mean("p0")) <= 1e-7);
  CHECK(rel(c.mean("rho0"), e.mean("rho0")) <= 1e-7);
  CHECK(ap.mu_a > 0);
  CHECK(ap.rho_aa > 0);

  // oscillator: exact at the pinned point, zero iterations
  IdenticalSystemSpec ho{3, 3, nr1, PotentialLaw::power(0.5, 2.0), 3.0};
  const auto [esol, hop] = extremize(ho);
  CHECK(esol.iterations == 0);
  CHECK(rel(esol.energy, 3 * std::sqrt(3.0)) <= 1e-14);
}

TEST_CASE("gradient vanishes at the reported parameters") {
  TwoSpeciesSystemSpec sys{2,
                           2,
                           3,
                           KineticLaw::relativistic(1.0),
                           KineticLaw::relativistic(0.8),
                           PotentialLaw::power(0.5, 2.0),
                           PotentialLaw::power(0.7, 2.0),
                           PotentialLaw::power(0.6, 1.0),
                           1.5,
                           1.5,
                           1.5};
  const auto [sol, ap] = extremize(sys);
  const double scale = 1e-7 * std::max(1.0, std::abs(sol.energy));

  auto fd = [&](double AuxiliaryParameters::* field) {
    AuxiliaryParameters lo = ap, hi = ap;
    const double h = 1e-6 * std::abs(ap.*field);
    lo.*field -= h;
    hi.*field += h;
    return (auxiliary_energy(hi, sys).total - auxiliary_energy(lo, sys).total) /
           (2 * h);
  };
  CHECK(std::abs(fd(&AuxiliaryParameters::mu_a)) <= scale);
  CHECK(std::abs(fd(&AuxiliaryParameters::mu_b)) <= scale);
  CHECK(std::abs(fd(&AuxiliaryParameters::rho_ab)) <= scale);

  // mean reconstruction through the inverse laws
  const double ga = sys.kinetic_a.aux_inverse(ap.mu_a);
  CHECK(rel(ga * ga, sol.mean("p_prime_a") * sol.mean("p_prime_a")) <= 1e-8);
  const double j = sys.v_ab.aux_inverse(ap.rho_ab);
  CHECK(rel(j * j, sol.mean("r_prime_0") * sol.mean("r_prime_0")) <= 1e-8);
}

TEST_CASE("quantization is built into the reconstructed means") {
  TwoSpeciesSystemSpec sys{3,
                           1,
                           3,
                           KineticLaw::nonrelativistic(1.5),
                           KineticLaw::nonrelativistic(10.0),
                           PotentialLaw::power(1.0, 1.0),
                           harm1,
                           PotentialLaw::power(1.0, 1.0),
                           3.0,
                           0.0,
                           1.5};
  const auto [sol, ap] = extremize(sys);
  CHECK(std::abs(sys.q_a - std::sqrt(3.0) * sol.mean("p_a") *
                               sol.mean("r_aa")) <= 1e-10 * sys.q_a);
  CHECK(std::abs(sys.q_rel - sol.mean("P0") * sol.mean("R0")) <=
        1e-10 * sys.q_rel);
  CHECK(sol.mean("p_b") == 0.0);  // lone particle
  CHECK(rel(sol.energy, compact::solve(sys).energy) <= 1e-8);
}
