#pragma once

#include <optional>
#include <vector>

#include "corrkit/types.hpp"

namespace corrkit {

/// Sites are 1-based throughout the public API.
using SiteSet = std::vector<int>;

/// Ordered local dimensions d_1..d_N of a tensor-product space.
class HilbertFactorization {
 public:
  explicit HilbertFactorization(std::vector<int> dims);

  const std::vector<int>& dims() const { return dims_; }
  int sites() const { return static_cast<int>(dims_.size()); }
  int total() const { return total_; }
  int dim(int site) const;
  /// Product of the dimensions before / after `site`.
  int left_of(int site) const;
  int right_of(int site) const;

  void check_site(int site) const;
  /// Sorted, deduplicated copy of `sites`; throws on out-of-range entries.
  SiteSet normalize(const SiteSet& sites) const;
  SiteSet complement(const SiteSet& sites) const;
  int dim_of(const SiteSet& sites) const;

  HilbertFactorization with_dim(int site, int new_dim) const;
  HilbertFactorization restricted(const SiteSet& sites) const;
  HilbertFactorization concat(const HilbertFactorization& other) const;

  bool operator==(const HilbertFactorization&) const = default;

 private:
  std::vector<int> dims_;
  int total_ = 1;
};

class PureState {
 public:
  /// Validates the length and unit norm (within 1e-10).
  PureState(HilbertFactorization f, Vector amplitudes);

  const HilbertFactorization& factorization() const { return factorization_; }
  const Vector& vector() const { return amplitudes_; }

 private:
  HilbertFactorization factorization_;
  Vector amplitudes_;
};

/// Hermitian, unit-trace, positive matrix on a factorized space.
class DensityOperator {
 public:
  /// Validates hermiticity, trace and positivity; throws InvalidState.
  DensityOperator(HilbertFactorization f, Matrix m);
  explicit DensityOperator(const PureState& psi);

  /// For matrices produced by the library's own trace-preserving maps:
  /// hermitizes and renormalizes the trace, skipping the eigenvalue check.
  static DensityOperator from_trusted(HilbertFactorization f, Matrix m);
  static DensityOperator maximally_mixed(HilbertFactorization f);

  const HilbertFactorization& factorization() const { return factorization_; }
  const Matrix& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

  /// Eigenvalues in ascending order.
  RealVector eigenvalues() const;

 private:
  struct Trusted {};
  DensityOperator(Trusted, HilbertFactorization f, Matrix m);

  HilbertFactorization factorization_;
  Matrix matrix_;
};

/// Deterministic operation on one site: Kraus operators K_q with a common
/// output dimension, embedded as I ⊗ K_q ⊗ I.
class LocalChannel {
 public:
  /// Validates shapes and completeness Σ K†K = I (Frobenius, 1e-10).
  LocalChannel(int site, std::vector<Matrix> kraus);

  int site() const { return site_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  int input_dim() const { return static_cast<int>(kraus_.front().cols()); }
  int output_dim() const { return static_cast<int>(kraus_.front().rows()); }

 private:
  int site_;
  std::vector<Matrix> kraus_;
};

/// Instrument on one site. Outcome q holds t_q Kraus terms sharing an
/// output dimension; output dimensions may differ between outcomes.
class LocalMeasurement {
 public:
  /// Validates t_q >= 1, shapes, and joint completeness (1e-10).
  LocalMeasurement(int site, std::vector<std::vector<Matrix>> outcomes);

  int site() const { return site_; }
  const std::vector<std::vector<Matrix>>& outcomes() const { return outcomes_; }
  int outcome_count() const { return static_cast<int>(outcomes_.size()); }
  int input_dim() const { return static_cast<int>(outcomes_.front().front().cols()); }
  int output_dim(int outcome) const {
    return static_cast<int>(outcomes_.at(outcome).front().rows());
  }
  int terms(int outcome) const { return static_cast<int>(outcomes_.at(outcome).size()); }
  /// True iff every outcome has exactly one Kraus term.
  bool efficient() const;

 private:
  int site_;
  std::vector<std::vector<Matrix>> outcomes_;
};

struct MeasurementOutcome {
  double probability = 0.0;
  /// Empty when probability < 1e-12: the post-state is undefined there.
  std::optional<DensityOperator> state;
};

/// Frobenius norm of Σ K†K − I.
double completeness_residual(const std::vector<Matrix>& kraus);

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);
PureState tensor(const PureState& a, const PureState& b);

/// Reduced state on `keep` (nonempty); kept sites stay in original order.
DensityOperator partial_trace(const DensityOperator& rho, const SiteSet& keep);

/// Eigenvalues with noise clipping: entries in [−1e-10, 0) become 0 and the
/// vector is renormalized. Throws InvalidState below −1e-10.
RealVector clipped_spectrum(const Matrix& hermitian);
/// −Σ λ ln λ of a (clipped) probability vector, in nats.
double shannon_entropy(const RealVector& probabilities);
double von_neumann_entropy(const DensityOperator& rho);

/// K̃ ρ K̃† for a single operator acting on `site`; no normalization.
Matrix apply_local_operator(const DensityOperator& rho, int site, const Matrix& k);

DensityOperator apply_channel(const DensityOperator& rho, const LocalChannel& ch);
std::vector<MeasurementOutcome> measure(const DensityOperator& rho,
                                        const LocalMeasurement& m);

/// Σ_p √μ_p |p⟩ ⊗ |p'⟩ with the ancilla appended as a new last site of
/// dimension rank(ρ).
PureState purify(const DensityOperator& rho);

/// The dominant eigenvector when ρ is pure (λ_max ≥ 1 − 1e-10).
std::optional<PureState> as_pure(const DensityOperator& rho);

/// Places `sites` first (in the given order) and merges each side into one
/// factor, returning the matrix on [d_cut, d_rest].
DensityOperator as_bipartite(const DensityOperator& rho, const SiteSet& cut);

}  // namespace corrkit
