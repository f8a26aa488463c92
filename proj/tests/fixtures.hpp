#pragma once

#include <cmath>
#include <vector>

#include "corrkit/bell.hpp"
#include "corrkit/constructions.hpp"
#include "corrkit/rng.hpp"
#include "corrkit/sampling.hpp"
#include "corrkit/state.hpp"

namespace fixtures {

using namespace corrkit;

inline PureState ket(std::vector<int> dims, std::vector<Complex> amplitudes) {
  Vector v(static_cast<Eigen::Index>(amplitudes.size()));
  for (std::size_t i = 0; i < amplitudes.size(); ++i) v(i) = amplitudes[i];
  return PureState(HilbertFactorization(std::move(dims)), v.normalized());
}

inline DensityOperator bell_state() { return DensityOperator(build_npartite_max({2, 2})); }

/// |0…0⟩ on the given dims.
inline DensityOperator zero_state(const std::vector<int>& dims) {
  HilbertFactorization f(dims);
  Vector v = Vector::Zero(f.total());
  v(0) = 1.0;
  return DensityOperator(PureState(f, v));
}

/// √(1−ε)|00⟩ + √ε|11⟩.
inline DensityOperator psi_eps(double eps) {
  return DensityOperator(pure_schmidt_state({1.0 - eps, eps}));
}

/// CHSH plus α⟨A_0⟩. Its quantum maximum √(8 + 2α²) (for α < 2) is reached
/// only on partially entangled states; the maximally entangled state gives
/// max(2√2, 2 + α), the second by fixing A_0 = I.
inline BellFunctional tilted_chsh(double alpha) {
  const auto chsh = BellFunctional::chsh();
  std::vector<double> beta(16);
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
          double b = chsh.coefficient(s, t, x, y);
          if (x == 0) b += 0.5 * alpha * (s == 0 ? 1.0 : -1.0);
          beta[((s * 2 + t) * 2 + x) * 2 + y] = b;
        }
  return BellFunctional(2, 2, 2, 2, beta, 2.0 + alpha, "tilted-CHSH");
}

inline double frobenius(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

}  // namespace fixtures

namespace fixtures {

/// A random state and measurement for dilation round trips: local dims up to
/// 3, up to 3 outcomes, up to 2 Kraus terms per outcome.
struct MeasurementCase {
  DensityOperator state;
  LocalMeasurement measurement;
};

inline MeasurementCase random_measurement_case(std::uint64_t seed) {
  Rng rng(seed);
  const int sites = rng.uniform_int(1, 2);
  std::vector<int> dims;
  for (int s = 0; s < sites; ++s) dims.push_back(rng.uniform_int(1, 3));
  const HilbertFactorization f(dims);
  const int site = rng.uniform_int(1, sites);
  const int dn = f.dim(site);
  const int outcomes = rng.uniform_int(1, 3);
  std::vector<int> terms(outcomes), out_dims(outcomes);
  int rows = 0;
  for (int q = 0; q < outcomes; ++q) {
    terms[q] = rng.uniform_int(1, 2);
    out_dims[q] = rng.uniform_int(1, 3);
    rows += terms[q] * out_dims[q];
  }
  for (int q = 0; rows < dn; q = (q + 1) % outcomes) {
    ++out_dims[q];
    rows += terms[q];
  }
  auto rho = sample_state(f, rng.uniform_int(1, f.total()), rng);
  auto m = sample_local_measurement(f, site, terms, out_dims, rng);
  return {std::move(rho), std::move(m)};
}

}  // namespace fixtures
