#pragma once

#include <optional>
#include <vector>

#include "corrkit/state.hpp"

namespace corrkit {

/// Mixture of orthogonally supported maximally entangled states on
/// [d1, d2]. Block q of site 2 occupies basis states q·d1 .. q·d1 + d1 − 1.
struct MpsSpec {
  int d1 = 2;
  int d2 = 2;
  int blocks = 1;
  std::vector<double> p{1.0};

  /// Throws InvalidArgument unless 1 <= d1 <= d2, blocks >= 1,
  /// blocks·d1 <= d2 and p is a probability vector of length `blocks`.
  void validate() const;
};

/// Σ_q p_q |q̃⟩⟨q̃| with |q̃⟩ = Σ_i |i⟩ ⊗ |q,i⟩ / √d1.
DensityOperator build_mps(const MpsSpec& spec);
/// Same block structure with Schmidt weights `schmidt` (length d1) in place
/// of the uniform 1/d1.
DensityOperator build_mps_weighted(const MpsSpec& spec, const std::vector<double>& schmidt);

/// Site-2 channel folding every block onto block 0, plus the projector onto
/// the unused remainder when blocks·d1 < d2. Maps build_mps(spec) to |0̃⟩⟨0̃|.
LocalChannel collapse_channel(const MpsSpec& spec);

/// Efficient site-1 measurement with Kraus operators
/// K_q = Σ_i √λ_i |i⟩⟨(i + q) mod d1|, q = 0..d1−1.
LocalMeasurement cyclic_filter(int d1, const std::vector<double>& lambda);

struct Dilation {
  /// Deterministic operation with Kraus operators |q⟩ ⊗ K'_{q,s}; the flag
  /// is the leading factor of the site, K' is K zero-padded to padded_dim.
  LocalChannel flagged;
  /// Efficient projective measurement of the flag.
  LocalMeasurement readout;
  int padded_dim = 0;
};

Dilation dilate_measurement(const LocalMeasurement& m);

/// Maps a readout post-state for `outcome` back onto the original outcome's
/// output space by dropping the flag and the zero padding.
DensityOperator undo_dilation(const DensityOperator& post, const LocalMeasurement& original,
                              const Dilation& dilation, int outcome);

/// Σ_i |i_1⟩…|i_{N−1}⟩ ⊗ |i_1…i_{N−1}⟩_N / √d with d = Π_{n<N} d_n.
/// Needs N >= 2 and d_N >= d.
PureState build_npartite_max(const std::vector<int>& dims);

/// Σ_k |k…k⟩ / √m with m the smallest local dimension.
PureState ghz_state(const std::vector<int>& dims);

/// Σ_i √λ_i |i⟩|i⟩ on [r, r] with r = lambda.size().
PureState pure_schmidt_state(const std::vector<double>& lambda);

struct ReductionCheck {
  SiteSet sites;
  int dim = 1;
  double deviation = 0.0;  // Frobenius distance to I/dim
  bool pass = false;
};

struct ReductionReport {
  int total_dim = 1;
  /// Every nonempty subset whose dimension is at most √d, in bitmask order.
  std::vector<ReductionCheck> subsets;
  int max_subset_dim = 1;
  /// max subset dimension > √(d/2): a maximal state would have to be pure.
  bool purity_forced = false;
  bool is_pure = false;
  bool satisfied = false;
  std::optional<SiteSet> first_failure;
  std::string failure_reason;
};

/// Necessary conditions on maximally correlated states: every small
/// reduction maximally mixed (tolerance 1e-8) and purity when forced.
ReductionReport check_reductions(const DensityOperator& rho, double tolerance = 1e-8);

/// Moves ρ onto local spaces of the given dimensions with a deterministic
/// local isometry per site: plain embedding when the target is at least as
/// large, otherwise compression onto the support of the site marginal.
DensityOperator relabel_embed(const DensityOperator& rho, const std::vector<int>& target_dims);

}  // namespace corrkit
