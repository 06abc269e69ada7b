#include "model.hpp"

#include <cmath>

#include "errors.hpp"

namespace et {

long long pair_count(long long n) {
  if (n < 1) throw InvalidInput("particle count must be >= 1");
  if (n > kMaxParticleCount) throw InvalidInput("particle count too large");
  return n * (n - 1) / 2;
}

double global_quantum_number(std::span<const QuantumPair> pairs, int dim) {
  if (dim < 1) throw InvalidInput("space dimension must be >= 1");
  double q = 0;
  for (const auto& p : pairs) {
    if (p.n < 0 || p.l < 0)
      throw InvalidInput("quantum numbers must be nonnegative");
    if (dim == 1) {
      if (p.l != 0)
        throw InvalidInput("angular quantum number must be 0 when D = 1");
      q += static_cast<double>(p.n) + 0.5;
    } else {
      q += 2.0 * static_cast<double>(p.n) + static_cast<double>(p.l) +
           0.5 * dim;
    }
  }
  return q;
}

double boson_ground_q(long long n, int dim) {
  if (n < 1) throw InvalidInput("particle count must be >= 1");
  if (dim < 1) throw InvalidInput("space dimension must be >= 1");
  const double internal = static_cast<double>(n - 1);
  return dim == 1 ? internal * 0.5 : internal * dim * 0.5;
}

namespace {

void check_q(double q, long long n, int dim, const char* label) {
  if (!std::isfinite(q)) throw InvalidInput(std::string(label) + " not finite");
  const double floor_q = boson_ground_q(n, dim);
  if (q < floor_q - 1e-12 * std::max(1.0, floor_q))
    throw InvalidInput(std::string(label) +
                       " below the minimum admissible value for this system");
}

}  // namespace

void IdenticalSystemSpec::validate() const {
  if (n < 2) throw InvalidInput("identical-particle system requires N >= 2");
  if (n > kMaxParticleCount) throw InvalidInput("particle count too large");
  if (dim < 1) throw InvalidInput("space dimension must be >= 1");
  check_q(q, n, dim, "quantum number Q(N)");
}

void TwoSpeciesSystemSpec::validate() const {
  if (n_a < 1 || n_b < 1)
    throw InvalidInput("each set needs at least one particle");
  if (n_a > kMaxParticleCount || n_b > kMaxParticleCount)
    throw InvalidInput("particle count too large");
  if (dim < 1) throw InvalidInput("space dimension must be >= 1");
  check_q(q_a, n_a, dim, "quantum number Q(N_a)");
  check_q(q_b, n_b, dim, "quantum number Q(N_b)");
  check_q(q_rel, 2, dim, "relative quantum number Q(2)");
  if (n_a == 1 && q_a != 0)
    throw InvalidInput("Q(N_a) must be 0 for a single-particle set");
  if (n_b == 1 && q_b != 0)
    throw InvalidInput("Q(N_b) must be 0 for a single-particle set");
}

TwoSpeciesSystemSpec TwoSpeciesSystemSpec::swapped() const {
  return {n_b, n_a, dim, kinetic_b, kinetic_a, v_bb, v_aa, v_ab, q_b, q_a,
          q_rel};
}

const char* method_name(Method m) {
  switch (m) {
    case Method::compact_identical:
      return "compact-identical";
    case Method::compact_two_species:
      return "compact-two-species";
    case Method::compact_na_plus_1:
      return "compact-na-plus-1";
    case Method::compact_two_body:
      return "compact-two-body";
    case Method::extremization:
      return "extremization";
  }
  return "?";
}

double Solution::mean(const std::string& name) const {
  auto it = means.find(name);
  if (it == means.end())
    throw InvalidInput("solution has no mean named '" + name + "'");
  return it->second;
}

void SolverConfig::validate() const {
  if (!(tol > 0)) throw InvalidInput("solver tolerance must be > 0");
  if (max_iter < 1) throw InvalidInput("max_iter must be >= 1");
  if (!(bracket_growth > 1)) throw InvalidInput("bracket_growth must be > 1");
  if (!(damping > 0) || damping > 1)
    throw InvalidInput("damping must lie in (0, 1]");
}

}  // namespace et
