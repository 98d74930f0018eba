#pragma once

#include <cstdint>
#include <random>

#include "qecsym/statekit.hpp"

namespace qecsym {

/// splitmix64 finalizer; the documented seed-stream function is
/// derived_seed(base, i) = splitmix64(base XOR (i + 1)).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derived_seed(std::uint64_t base_seed, std::uint64_t trial_index) {
  return splitmix64(base_seed ^ (trial_index + 1));
}

/// Haar-ish random unitary from the QR factorization of a complex
/// Gaussian matrix, with the R diagonal phase fixed.
Matrix random_unitary(Eigen::Index dim, std::mt19937_64& rng);

/// Random normalized state vector.
Vector random_state(Eigen::Index dim, std::mt19937_64& rng);

/// Random qubit amplitudes (alpha, beta) with |alpha|^2+|beta|^2 = 1.
std::pair<Complex, Complex> random_qubit(std::mt19937_64& rng);

}  // namespace qecsym
