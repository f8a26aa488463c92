#pragma once

#include <cstdint>
#include <random>

#include "corrkit/types.hpp"

namespace corrkit {

/// Mixes a master seed with a stream index (splitmix64 finalizer). Used for
/// per-trial and per-restart seeds so results do not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Seeded generator with distribution code written out explicitly, so that
/// the same seed gives the same numbers on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1).
  double uniform();
  /// Uniform integer in [lo, hi] (inclusive).
  int uniform_int(int lo, int hi);
  /// Standard normal via Box-Muller.
  double normal();
  /// Complex Gaussian with E|z|^2 = 1.
  Complex complex_normal();

  Matrix ginibre(int rows, int cols);
  /// Haar-distributed isometry with `rows >= cols` (QR of a Gaussian matrix
  /// with the phase of R's diagonal absorbed into Q).
  Matrix haar_isometry(int rows, int cols);
  Matrix haar_unitary(int d) { return haar_isometry(d, d); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace corrkit
