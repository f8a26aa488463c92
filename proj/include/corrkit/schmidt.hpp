#pragma once

#include <string_view>
#include <vector>

#include "corrkit/state.hpp"

namespace corrkit {

/// Descending probability vector with every entry above 1e-12.
class SchmidtVector {
 public:
  /// Sorts, drops entries <= 1e-12 and renormalizes. Throws InvalidArgument
  /// when the input does not sum to 1 within 1e-10 or has negative entries.
  explicit SchmidtVector(std::vector<double> coeffs);

  const std::vector<double>& coeffs() const { return coeffs_; }
  int rank() const { return static_cast<int>(coeffs_.size()); }
  double operator[](int i) const { return coeffs_[i]; }

 private:
  std::vector<double> coeffs_;
};

struct SchmidtDecomposition {
  SchmidtVector coefficients;
  /// Columns are the Schmidt vectors on the cut side / on the complement.
  Matrix left;
  Matrix right;
};

/// SVD of the amplitude matrix reshaped as [cut | complement].
SchmidtDecomposition schmidt_decompose(const PureState& psi, const SiteSet& cut);

/// Σ √λ_i left_i ⊗ right_i, in [cut | complement] site order.
Vector reconstruct(const SchmidtDecomposition& s);

/// Every partial sum of `a` is at least the matching one of `b` (minus
/// 1e-10); shorter vectors are zero-padded.
bool majorizes(const SchmidtVector& a, const SchmidtVector& b);

/// Rényi entropy of order q >= 0 in nats; q = 1 is Shannon, q = 0 is ln r,
/// q = +inf is the min-entropy. Within 1e-4 of q = 1 the first-order series
/// is used so the family stays continuous there.
double entropy_family(const SchmidtVector& v, double q);

/// Deterministic LOCC conversion of pure states: source → target is
/// possible iff the source vector is majorized by the target vector.
bool pure_convertible_locc(const SchmidtVector& source, const SchmidtVector& target);

/// Ordering by all correlation monotones, for pure states of equal Schmidt
/// rank. Unequal ranks have no known classification and map to Undetermined.
enum class Prec1Relation { EquallyCorrelated, Incomparable, Undetermined };

Prec1Relation classify_prec1_pure(const SchmidtVector& a, const SchmidtVector& b);
std::string_view to_string(Prec1Relation r);

}  // namespace corrkit
