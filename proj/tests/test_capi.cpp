#include <cmath>
#include <cstring>
#include <string>

#include "doctest.h"
#include "envelope/envelope.h"

namespace {

struct Kin {
  et_kinetic* h;
  explicit Kin(et_kinetic* k) : h(k) {}
  ~Kin() { et_kinetic_free(h); }
};
struct Pot {
  et_potential* h;
  explicit Pot(et_potential* p) : h(p) {}
  ~Pot() { et_potential_free(h); }
};
struct Sys {
  et_system* h;
  explicit Sys(et_system* s) : h(s) {}
  ~Sys() { et_system_free(h); }
};
struct Res {
  et_result* h = nullptr;
  ~Res() { et_result_free(h); }
};

}  // namespace

TEST_CASE("law construction and evaluation through the C surface") {
  Kin k{et_kinetic_relativistic(3.0)};
  REQUIRE(k.h != nullptr);
  double v = 0;
  CHECK(et_kinetic_value(k.h, 4.0, &v) == ET_OK);
  CHECK(v == doctest::Approx(5.0));
  CHECK(et_kinetic_derivative(k.h, 4.0, &v) == ET_OK);
  CHECK(v == doctest::Approx(0.8));
  CHECK(et_kinetic_aux_inverse(k.h, 5.0, &v) == ET_OK);
  CHECK(v == doctest::Approx(4.0));
  CHECK(et_kinetic_aux_inverse(k.h, 1.0, &v) == ET_ERR_DOMAIN);

  CHECK(et_kinetic_nonrelativistic(-1.0) == nullptr);
  CHECK(std::string(et_last_error()).find("mass") != std::string::npos);

  Kin nr{et_kinetic_nonrelativistic(1.0)};
  CHECK(et_kinetic_aux_inverse(nr.h, 1.0, &v) == ET_ERR_DEGENERATE_LAW);

  Pot p{et_potential_power(-1.0, -1.0)};
  REQUIRE(p.h != nullptr);
  CHECK(et_potential_value(p.h, 2.0, &v) == ET_OK);
  CHECK(v == doctest::Approx(-0.5));
  CHECK(et_potential_aux_inverse(p.h, 0.5, &v) == ET_OK);
  CHECK(v == doctest::Approx(1.0));

  CHECK(et_potential_power(1.0, -1.0) == nullptr);  // repulsive

  const double cs[] = {1.0, -1.0};
  const double es[] = {1.0, -1.0};
  Pot sum{et_potential_sum(cs, es, 2)};
  REQUIRE(sum.h != nullptr);
  CHECK(et_potential_aux_inverse(sum.h, 0.3, &v) == ET_OK);
  CHECK(v == doctest::Approx(2.0595764973379342).epsilon(1e-12));
}

TEST_CASE("quantum-number helpers") {
  int64_t pairs = 0;
  CHECK(et_pair_count(5, &pairs) == ET_OK);
  CHECK(pairs == 10);
  CHECK(et_pair_count(0, &pairs) == ET_ERR_INVALID_INPUT);

  double q = 0;
  CHECK(et_boson_ground_q(3, 3, &q) == ET_OK);
  CHECK(q == 3.0);
  CHECK(et_boson_ground_q(2, 1, &q) == ET_OK);
  CHECK(q == 0.5);

  const int64_t n[] = {1};
  const int64_t l[] = {2};
  CHECK(et_global_quantum_number(n, l, 1, 3, &q) == ET_OK);
  CHECK(q == 5.5);
  CHECK(et_global_quantum_number(n, l, 1, 1, &q) == ET_ERR_INVALID_INPUT);
}

TEST_CASE("solve an identical-particle system") {
  Kin k{et_kinetic_nonrelativistic(1.0)};
  Pot p{et_potential_power(0.5, 2.0)};
  Sys s{et_system_identical(3, 3, k.h, p.h, 3.0)};
  REQUIRE(s.h != nullptr);

  et_options opt;
  et_options_init(&opt);
  CHECK(opt.tol == 1e-10);
  CHECK(opt.max_iter == 200);

  Res r;
  REQUIRE(et_solve(s.h, &opt, &r.h) == ET_OK);
  CHECK(et_result_energy(r.h) ==
        doctest::Approx(3 * std::sqrt(3.0)).epsilon(1e-12));
  CHECK(std::string(et_result_method(r.h)) == "compact-identical");
  CHECK(et_result_iterations(r.h) > 0);
  CHECK(et_result_ambiguous(r.h) == 0);
  CHECK(et_result_mean_count(r.h) == 2);

  double p0 = 0;
  CHECK(et_result_mean(r.h, "p0", &p0) == ET_OK);
  CHECK(p0 > 0);
  CHECK(et_result_mean(r.h, "bogus", &p0) == ET_ERR_INVALID_INPUT);
  CHECK(std::string(et_last_error()).find("bogus") != std::string::npos);

  size_t count = 0;
  double res[8] = {};
  CHECK(et_residuals(s.h, r.h, res, 8, &count) == ET_OK);
  CHECK(count == 3);
  for (size_t i = 0; i < count; ++i) CHECK(std::abs(res[i]) <= 1e-12);

  // invalid construction surfaces as a null handle plus a message
  CHECK(et_system_identical(1, 3, k.h, p.h, 0.0) == nullptr);
  CHECK(et_system_identical(3, 3, k.h, p.h, 0.1) == nullptr);
}

TEST_CASE("two-species solve, stationarity route and oscillator oracle") {
  Kin ka{et_kinetic_nonrelativistic(1.0)};
  Kin kb{et_kinetic_nonrelativistic(2.0)};
  Pot vaa{et_potential_power(1.0, 2.0)};
  Pot vbb{et_potential_power(2.0, 2.0)};
  Pot vab{et_potential_power(3.0, 2.0)};
  Sys s{et_system_two_species(2, 3, 3, ka.h, kb.h, vaa.h, vbb.h, vab.h, 1.5,
                              3.0, 1.5)};
  REQUIRE(s.h != nullptr);

  double exact = 0;
  REQUIRE(et_oracle_exact_ho(s.h, &exact) == ET_OK);
  CHECK(exact == doctest::Approx(24.77639771349794).epsilon(1e-12));

  Res solved, extr;
  REQUIRE(et_solve(s.h, nullptr, &solved.h) == ET_OK);
  REQUIRE(et_extremize(s.h, nullptr, &extr.h) == ET_OK);
  CHECK(et_result_energy(solved.h) == doctest::Approx(exact).epsilon(1e-10));
  CHECK(et_result_energy(extr.h) == doctest::Approx(exact).epsilon(1e-10));
  CHECK(std::string(et_result_method(extr.h)) == "extremization");

  double mu_a = 0;
  CHECK(et_result_aux(extr.h, "mu_a", &mu_a) == ET_OK);
  CHECK(mu_a == doctest::Approx(1.0));
  CHECK(et_result_aux(solved.h, "mu_a", &mu_a) == ET_ERR_INVALID_INPUT);

  // lone-particle sets may omit their in-set potential
  Sys s2{et_system_two_species(1, 1, 3, ka.h, kb.h, nullptr, nullptr, vab.h,
                               0.0, 0.0, 1.5)};
  CHECK(s2.h != nullptr);
  CHECK(et_system_two_species(2, 1, 3, ka.h, kb.h, nullptr, nullptr, vab.h,
                              1.5, 0.0, 1.5) == nullptr);
}

TEST_CASE("radial oracle through the C surface") {
  Pot coul{et_potential_power(-1.0, -1.0)};
  double e = 0, acc = 0;
  REQUIRE(et_oracle_radial_two_body(0.5, coul.h, 3, 0, 0, 0, &e, &acc) ==
          ET_OK);
  CHECK(std::abs(e + 0.25) <= 1e-6);
  CHECK(acc > 0);
  CHECK(acc <= 1e-8);

  CHECK(et_oracle_radial_two_body(0.5, coul.h, 4, 0, 0, 0, &e, &acc) ==
        ET_ERR_INVALID_INPUT);
}

TEST_CASE("error paths over the boundary") {
  CHECK(et_solve(nullptr, nullptr, nullptr) == ET_ERR_INVALID_INPUT);

  Kin ur{et_kinetic_ultrarelativistic()};
  Pot coul{et_potential_power(-1.0, -1.0)};
  Sys bad{et_system_two_species(1, 1, 3, ur.h, ur.h, nullptr, nullptr, coul.h,
                                0.0, 0.0, 1.5)};
  REQUIRE(bad.h != nullptr);
  Res r;
  CHECK(et_solve(bad.h, nullptr, &r.h) == ET_ERR_NO_BINDING);
  CHECK(std::strlen(et_last_error()) > 0);
  CHECK(std::string(et_status_name(ET_ERR_NO_BINDING)) == "no binding");
}
