#include <cmath>

#include "doctest.h"
#include "extremization.hpp"
#include "oracle.hpp"

using namespace et;
using oracle::exact_ho_energy;
using oracle::radial_two_body;

namespace {

const auto nr1 = KineticLaw::nonrelativistic(1.0);
const auto coulomb = PotentialLaw::power(-1.0, -1.0);
const auto linear = PotentialLaw::power(1.0, 1.0);
const auto harm_half = PotentialLaw::power(0.5, 2.0);

double rdiff(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("exact oscillator references") {
  IdenticalSystemSpec s{3, 3, nr1, harm_half, 3.0};
  const auto r = exact_ho_energy(s);
  CHECK(r.energy == doctest::Approx(3 * std::sqrt(3.0)).epsilon(1e-14));
  CHECK(r.method == oracle::OracleMethod::exact_ho);
  CHECK(r.est_accuracy == 0.0);

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
  AuxiliaryParameters pinned{1.0, 2.0, 1.0, 2.0, 3.0};
  CHECK(exact_ho_energy(ts).energy ==
        doctest::Approx(extremization::harmonic_eigenvalue(pinned, ts))
            .epsilon(1e-14));

  IdenticalSystemSpec wrong{3, 3, nr1, linear, 3.0};
  CHECK_THROWS_AS(exact_ho_energy(wrong), InvalidInput);
  IdenticalSystemSpec wrong2{3, 3, KineticLaw::relativistic(1.0), harm_half,
                             3.0};
  CHECK_THROWS_AS(exact_ho_energy(wrong2), InvalidInput);
}

TEST_CASE("closed-form helpers") {
  CHECK(oracle::coulomb_two_body(0.5, 1.0, 0, 0).energy ==
        doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(oracle::coulomb_two_body(0.5, 1.0, 1, 0).energy ==
        doctest::Approx(-0.0625).epsilon(1e-14));
  CHECK(oracle::linear_two_body_s(0.5, 1.0, 0).energy ==
        doctest::Approx(2.338107410459767).epsilon(1e-14));
  CHECK_THROWS_AS(oracle::linear_two_body_s(0.5, 1.0, 9), InvalidInput);
}

TEST_CASE("radial solver against closed forms") {
  const auto hyd = radial_two_body(0.5, coulomb, 3, 0, 0, 1e-8);
  CHECK(rdiff(hyd.energy, -0.25) <= 1e-6);
  CHECK(hyd.method == oracle::OracleMethod::radial_numeric);
  CHECK(hyd.est_accuracy <= 1e-8);
  CHECK(hyd.est_accuracy > 0);

  const auto airy = radial_two_body(0.5, linear, 3, 0, 0, 1e-8);
  CHECK(rdiff(airy.energy, 2.338107410459767) <= 1e-6);

  const auto ho = radial_two_body(0.5, harm_half, 3, 0, 0, 1e-9);
  CHECK(rdiff(ho.energy, 1.5 * std::sqrt(2.0)) <= 1e-8);
}

TEST_CASE("radial solver selects states by node count") {
  const auto h1 = radial_two_body(0.5, coulomb, 3, 1, 0, 1e-8);
  CHECK(rdiff(h1.energy, -0.0625) <= 1e-6);
  const auto hp = radial_two_body(0.5, coulomb, 3, 0, 1, 1e-8);
  CHECK(rdiff(hp.energy, -0.0625) <= 1e-6);

  const auto a1 = radial_two_body(0.5, linear, 3, 1, 0, 1e-8);
  CHECK(rdiff(a1.energy, 4.087949444130971) <= 1e-6);
  CHECK(a1.energy > radial_two_body(0.5, linear, 3, 0, 0, 1e-8).energy);

  // oscillator ladder: E = (2n + l + 3/2) sqrt(2)
  const auto e01 = radial_two_body(0.5, harm_half, 3, 0, 1, 1e-8);
  CHECK(rdiff(e01.energy, 2.5 * std::sqrt(2.0)) <= 1e-7);
  const auto e10 = radial_two_body(0.5, harm_half, 3, 1, 0, 1e-8);
  CHECK(rdiff(e10.energy, 3.5 * std::sqrt(2.0)) <= 1e-7);
}

TEST_CASE("one-dimensional parity states") {
  // V = x^2/2, mu = 1: levels (k + 1/2) with parity (-1)^k
  CHECK(rdiff(radial_two_body(1.0, harm_half, 1, 0, 0, 1e-8).energy, 0.5) <=
        1e-7);
  CHECK(rdiff(radial_two_body(1.0, harm_half, 1, 0, 1, 1e-8).energy, 1.5) <=
        1e-7);
  CHECK(rdiff(radial_two_body(1.0, harm_half, 1, 1, 0, 1e-8).energy, 2.5) <=
        1e-7);
  CHECK_THROWS_AS(radial_two_body(1.0, harm_half, 1, 0, 2, 1e-8),
                  InvalidInput);
  // even-parity start needs a finite potential at the origin
  CHECK_THROWS_AS(radial_two_body(1.0, coulomb, 1, 0, 0, 1e-8), InvalidInput);
}

TEST_CASE("two-dimensional states with angular momentum") {
  // E = (2n + |l| + 1) w, w = sqrt(2k/mu) = sqrt(2)
  CHECK(rdiff(radial_two_body(0.5, harm_half, 2, 0, 1, 1e-8).energy,
              2.0 * std::sqrt(2.0)) <= 1e-7);
  // the log-degenerate s-wave is rejected
  CHECK_THROWS_AS(radial_two_body(0.5, harm_half, 2, 0, 0, 1e-8),
                  InvalidInput);
}

TEST_CASE("grid refinement governs the accuracy estimate") {
  const auto coarse = radial_two_body(0.5, linear, 3, 0, 0, 1e-6);
  const auto fine = radial_two_body(0.5, linear, 3, 0, 0,
                                    std::max(coarse.est_accuracy / 4, 1e-12));
  CHECK(rdiff(coarse.energy, fine.energy) <= coarse.est_accuracy * 1.05);
}

TEST_CASE("radial solver input validation") {
  CHECK_THROWS_AS(radial_two_body(-0.5, linear, 3, 0, 0, 1e-8), InvalidInput);
  CHECK_THROWS_AS(radial_two_body(0.5, linear, 4, 0, 0, 1e-8), InvalidInput);
  CHECK_THROWS_AS(radial_two_body(0.5, linear, 3, -1, 0, 1e-8), InvalidInput);
  CHECK_THROWS_AS(radial_two_body(0.5, linear, 3, 0, 0, 0.0), InvalidInput);
}
