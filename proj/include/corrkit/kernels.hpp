#pragma once

#include <span>
#include <vector>

#include "corrkit/types.hpp"

// Index kernels behind the state operations. Basis states are ordered
// row-major over sites: site 1 is the most significant digit, matching the
// Kronecker product convention. Each OpenMP kernel has a serial reference
// twin computed by a different route; the tests hold them equal and the
// benchmark compares their timings.
namespace corrkit::kernels {

/// Reduced matrix on the sites listed in `keep` (0-based, ascending).
Matrix partial_trace(const Matrix& m, std::span<const int> dims,
                     std::span<const int> keep);
Matrix partial_trace_reference(const Matrix& m, std::span<const int> dims,
                               std::span<const int> keep);

/// (I_left ⊗ k ⊗ I_right) * m, where k maps a `k.cols()`-dim factor to a
/// `k.rows()`-dim one.
Matrix apply_left(const Matrix& k, const Matrix& m, int left, int right);
Matrix apply_left_reference(const Matrix& k, const Matrix& m, int left,
                            int right);

/// K̃ m K̃† for K̃ = I_left ⊗ k ⊗ I_right.
Matrix conjugate_local(const Matrix& k, const Matrix& m, int left, int right);

/// Index map for reordering sites: output site j is input site order[j].
/// Entry i of the result is the input basis index of output basis index i.
std::vector<int> permutation_map(std::span<const int> dims,
                                 std::span<const int> order);
Matrix permute_sites(const Matrix& m, std::span<const int> dims,
                     std::span<const int> order);
Vector permute_sites(const Vector& v, std::span<const int> dims,
                     std::span<const int> order);

Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace corrkit::kernels
