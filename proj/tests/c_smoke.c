/* The public header must stay consumable from plain C. Solves a small
 * oscillator system end to end through the C surface. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>

#include "envelope/envelope.h"

static void require(int cond, const char* what) {
  if (!cond) {
    fprintf(stderr, "FAIL: %s (%s)\n", what, et_last_error());
    exit(1);
  }
}

int main(void) {
  et_kinetic* kin = et_kinetic_nonrelativistic(1.0);
  et_potential* pot = et_potential_power(0.5, 2.0);
  require(kin && pot, "law construction");

  double q = 0;
  require(et_boson_ground_q(3, 3, &q) == ET_OK && q == 3.0, "ground q");

  et_system* sys = et_system_identical(3, 3, kin, pot, q);
  require(sys != NULL, "system construction");

  et_options opt;
  et_options_init(&opt);

  et_result* res = NULL;
  require(et_solve(sys, &opt, &res) == ET_OK, "solve");
  require(fabs(et_result_energy(res) - 3.0 * sqrt(3.0)) < 1e-10,
          "oscillator energy");
  require(et_result_mean_count(res) == 2, "mean count");

  double p0 = 0;
  require(et_result_mean(res, "p0", &p0) == ET_OK && p0 > 0, "mean lookup");

  double residuals[3];
  size_t count = 0;
  require(et_residuals(sys, res, residuals, 3, &count) == ET_OK && count == 3,
          "residuals");

  et_result_free(res);
  et_system_free(sys);
  et_potential_free(pot);
  et_kinetic_free(kin);
  printf("c smoke test passed\n");
  return 0;
}
