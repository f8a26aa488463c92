#pragma once

#include <cstdint>
#include <vector>

#include "corrkit/rng.hpp"
#include "corrkit/state.hpp"

namespace corrkit {

/// Normalized G G† with G a d×rank complex Gaussian matrix.
DensityOperator sample_state(const HilbertFactorization& f, int rank, Rng& rng);
DensityOperator sample_state(const HilbertFactorization& f, int rank, std::uint64_t seed);

PureState sample_pure_state(const HilbertFactorization& f, Rng& rng);

/// Kraus operators are consecutive d'_n-row blocks of a Haar isometry, so
/// completeness holds by construction. Needs out_dim * n_kraus >= d_n.
LocalChannel sample_local_channel(const HilbertFactorization& f, int site, int out_dim,
                                  int n_kraus, Rng& rng);
LocalChannel sample_local_channel(const HilbertFactorization& f, int site, int out_dim,
                                  int n_kraus, std::uint64_t seed);

/// Outcome q gets terms[q] Kraus operators of output dim out_dims[q], all
/// cut from one Haar isometry. Needs Σ terms[q]·out_dims[q] >= d_n.
LocalMeasurement sample_local_measurement(const HilbertFactorization& f, int site,
                                          const std::vector<int>& terms,
                                          const std::vector<int>& out_dims, Rng& rng);
/// Uniform t_q and output dimension d_n for every outcome.
LocalMeasurement sample_local_measurement(const HilbertFactorization& f, int site,
                                          int n_outcomes, int terms_per_outcome,
                                          std::uint64_t seed);

LocalChannel sample_local_unitary(const HilbertFactorization& f, int site, Rng& rng);

}  // namespace corrkit
