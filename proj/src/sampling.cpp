#include "corrkit/sampling.hpp"

#include <numeric>
#include <string>

namespace corrkit {
namespace {

std::vector<Matrix> split_rows(const Matrix& isometry, int block_rows, int count, int offset) {
  std::vector<Matrix> blocks;
  blocks.reserve(count);
  for (int q = 0; q < count; ++q)
    blocks.push_back(isometry.middleRows(offset + q * block_rows, block_rows));
  return blocks;
}

}  // namespace

DensityOperator sample_state(const HilbertFactorization& f, int rank, Rng& rng) {
  const int d = f.total();
  if (rank < 1 || rank > d)
    throw InvalidArgument("sample_state: rank must lie in 1.." + std::to_string(d));
  const Matrix g = rng.ginibre(d, rank);
  Matrix rho = g * g.adjoint();
  return DensityOperator::from_trusted(f, std::move(rho));
}

DensityOperator sample_state(const HilbertFactorization& f, int rank, std::uint64_t seed) {
  Rng rng(seed);
  return sample_state(f, rank, rng);
}

PureState sample_pure_state(const HilbertFactorization& f, Rng& rng) {
  Vector v = rng.ginibre(f.total(), 1).col(0);
  v.normalize();
  return PureState(f, std::move(v));
}

LocalChannel sample_local_channel(const HilbertFactorization& f, int site, int out_dim,
                                  int n_kraus, Rng& rng) {
  const int din = f.dim(site);
  if (n_kraus < 1) throw InvalidArgument("sample_local_channel: n_kraus must be >= 1");
  if (out_dim < 1) throw InvalidArgument("sample_local_channel: out_dim must be >= 1");
  if (out_dim * n_kraus < din)
    throw InvalidArgument("sample_local_channel: out_dim * n_kraus must be >= input dimension");
  const Matrix v = rng.haar_isometry(out_dim * n_kraus, din);
  return LocalChannel(site, split_rows(v, out_dim, n_kraus, 0));
}

LocalChannel sample_local_channel(const HilbertFactorization& f, int site, int out_dim,
                                  int n_kraus, std::uint64_t seed) {
  Rng rng(seed);
  return sample_local_channel(f, site, out_dim, n_kraus, rng);
}

LocalMeasurement sample_local_measurement(const HilbertFactorization& f, int site,
                                          const std::vector<int>& terms,
                                          const std::vector<int>& out_dims, Rng& rng) {
  const int din = f.dim(site);
  if (terms.empty() || terms.size() != out_dims.size())
    throw InvalidArgument("sample_local_measurement: terms/out_dims must be nonempty and equal length");
  int rows = 0;
  for (std::size_t q = 0; q < terms.size(); ++q) {
    if (terms[q] < 1 || out_dims[q] < 1)
      throw InvalidArgument("sample_local_measurement: terms and out_dims must be >= 1");
    rows += terms[q] * out_dims[q];
  }
  if (rows < din)
    throw InvalidArgument("sample_local_measurement: too few Kraus rows for a complete set");
  const Matrix v = rng.haar_isometry(rows, din);
  std::vector<std::vector<Matrix>> outcomes;
  int offset = 0;
  for (std::size_t q = 0; q < terms.size(); ++q) {
    outcomes.push_back(split_rows(v, out_dims[q], terms[q], offset));
    offset += terms[q] * out_dims[q];
  }
  return LocalMeasurement(site, std::move(outcomes));
}

LocalMeasurement sample_local_measurement(const HilbertFactorization& f, int site,
                                          int n_outcomes, int terms_per_outcome,
                                          std::uint64_t seed) {
  if (n_outcomes < 1) throw InvalidArgument("sample_local_measurement: n_outcomes must be >= 1");
  Rng rng(seed);
  const int din = f.dim(site);
  return sample_local_measurement(f, site, std::vector<int>(n_outcomes, terms_per_outcome),
                                  std::vector<int>(n_outcomes, din), rng);
}

LocalChannel sample_local_unitary(const HilbertFactorization& f, int site, Rng& rng) {
  return LocalChannel(site, {rng.haar_unitary(f.dim(site))});
}

}  // namespace corrkit
