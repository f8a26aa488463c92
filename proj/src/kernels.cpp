#include "corrkit/kernels.hpp"

#include <algorithm>

#include <unsupported/Eigen/KroneckerProduct>

namespace corrkit::kernels {
namespace {

std::vector<int> strides_of(std::span<const int> dims) {
  std::vector<int> strides(dims.size(), 1);
  for (int n = static_cast<int>(dims.size()) - 2; n >= 0; --n)
    strides[n] = strides[n + 1] * dims[n + 1];
  return strides;
}

// Full-space offsets of every multi-index over the given subset of sites.
std::vector<int> subset_offsets(std::span<const int> dims,
                                std::span<const int> strides,
                                std::span<const int> sites) {
  std::vector<int> offsets{0};
  for (int site : sites) {
    std::vector<int> next;
    next.reserve(offsets.size() * dims[site]);
    for (int base : offsets)
      for (int i = 0; i < dims[site]; ++i) next.push_back(base + i * strides[site]);
    offsets = std::move(next);
  }
  return offsets;
}

}  // namespace

Matrix partial_trace(const Matrix& m, std::span<const int> dims,
                     std::span<const int> keep) {
  const auto strides = strides_of(dims);
  std::vector<int> traced;
  for (int n = 0; n < static_cast<int>(dims.size()); ++n)
    if (std::find(keep.begin(), keep.end(), n) == keep.end()) traced.push_back(n);
  const auto kept_off = subset_offsets(dims, strides, keep);
  const auto traced_off = subset_offsets(dims, strides, traced);
  const int dk = static_cast<int>(kept_off.size());
  const int dt = static_cast<int>(traced_off.size());

  Matrix out(dk, dk);
#pragma omp parallel for schedule(static)
  for (int r = 0; r < dk; ++r) {
    for (int c = 0; c < dk; ++c) {
      Complex acc = 0.0;
      for (int t = 0; t < dt; ++t) acc += m(kept_off[r] + traced_off[t], kept_off[c] + traced_off[t]);
      out(r, c) = acc;
    }
  }
  return out;
}

Matrix partial_trace_reference(const Matrix& m, std::span<const int> dims,
                               std::span<const int> keep) {
  const int n_sites = static_cast<int>(dims.size());
  const int total = static_cast<int>(m.rows());
  std::vector<bool> kept(n_sites, false);
  for (int s : keep) kept[s] = true;
  int dk = 1;
  for (int s : keep) dk *= dims[s];

  auto digits = [&](int index) {
    std::vector<int> d(n_sites);
    for (int n = n_sites - 1; n >= 0; --n) {
      d[n] = index % dims[n];
      index /= dims[n];
    }
    return d;
  };
  auto kept_index = [&](const std::vector<int>& d) {
    int idx = 0;
    for (int n = 0; n < n_sites; ++n)
      if (kept[n]) idx = idx * dims[n] + d[n];
    return idx;
  };

  Matrix out = Matrix::Zero(dk, dk);
  for (int i = 0; i < total; ++i) {
    const auto di = digits(i);
    for (int j = 0; j < total; ++j) {
      const auto dj = digits(j);
      bool diagonal = true;
      for (int n = 0; n < n_sites && diagonal; ++n)
        if (!kept[n] && di[n] != dj[n]) diagonal = false;
      if (diagonal) out(kept_index(di), kept_index(dj)) += m(i, j);
    }
  }
  return out;
}

Matrix apply_left(const Matrix& k, const Matrix& m, int left, int right) {
  const int din = static_cast<int>(k.cols());
  const int dout = static_cast<int>(k.rows());
  const int cols = static_cast<int>(m.cols());
  const int rows_out = left * dout * right;
  Matrix out(rows_out, cols);
#pragma omp parallel for schedule(static)
  for (int row = 0; row < rows_out; ++row) {
    const int r = row % right;
    const int a_out = (row / right) % dout;
    const int l = row / (right * dout);
    const int in_base = l * din * right + r;
    for (int c = 0; c < cols; ++c) {
      Complex acc = 0.0;
      for (int a = 0; a < din; ++a) acc += k(a_out, a) * m(in_base + a * right, c);
      out(row, c) = acc;
    }
  }
  return out;
}

Matrix apply_left_reference(const Matrix& k, const Matrix& m, int left,
                            int right) {
  const Matrix full =
      kron(kron(Matrix::Identity(left, left), k), Matrix::Identity(right, right));
  return full * m;
}

Matrix conjugate_local(const Matrix& k, const Matrix& m, int left, int right) {
  const Matrix half = apply_left(k, m, left, right);
  return apply_left(k, half.adjoint(), left, right).adjoint();
}

std::vector<int> permutation_map(std::span<const int> dims,
                                 std::span<const int> order) {
  const auto in_strides = strides_of(dims);
  std::vector<int> out_dims;
  for (int s : order) out_dims.push_back(dims[s]);
  // Enumerate output multi-indices in row-major order, accumulating the
  // matching input offset.
  std::vector<int> map{0};
  for (std::size_t j = 0; j < order.size(); ++j) {
    std::vector<int> next;
    next.reserve(map.size() * out_dims[j]);
    for (int base : map)
      for (int i = 0; i < out_dims[j]; ++i) next.push_back(base + i * in_strides[order[j]]);
    map = std::move(next);
  }
  return map;
}

Matrix permute_sites(const Matrix& m, std::span<const int> dims,
                     std::span<const int> order) {
  const auto map = permutation_map(dims, order);
  const int d = static_cast<int>(map.size());
  Matrix out(d, d);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out(i, j) = m(map[i], map[j]);
  return out;
}

Vector permute_sites(const Vector& v, std::span<const int> dims,
                     std::span<const int> order) {
  const auto map = permutation_map(dims, order);
  Vector out(static_cast<Eigen::Index>(map.size()));
  for (std::size_t i = 0; i < map.size(); ++i) out(static_cast<Eigen::Index>(i)) = v(map[i]);
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

}  // namespace corrkit::kernels
