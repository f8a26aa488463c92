#include <gtest/gtest.h>

#include <numeric>

#include <omp.h>

#include "corrkit/kernels.hpp"
#include "corrkit/rng.hpp"
#include "oracles.hpp"

using namespace corrkit;

namespace {

struct Case {
  std::vector<int> dims;
  std::vector<int> keep;  // 0-based
};

int product(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 1, std::multiplies<>()); }

}  // namespace

TEST(Kernels, PartialTraceParallelMatchesReference) {
  const std::vector<Case> cases{{{2, 3}, {0}},       {{2, 3}, {1}},    {{2, 3, 2}, {0, 2}},
                                {{3, 2, 2, 2}, {1, 3}}, {{4, 1, 3}, {0, 1}}, {{2, 2, 2}, {0, 1, 2}}};
  Rng rng(1);
  for (const auto& c : cases) {
    const int d = product(c.dims);
    const Matrix m = rng.ginibre(d, d);
    const Matrix fast = kernels::partial_trace(m, c.dims, c.keep);
    const Matrix ref = kernels::partial_trace_reference(m, c.dims, c.keep);
    std::vector<int> keep1;
    for (int s : c.keep) keep1.push_back(s + 1);
    EXPECT_LT((fast - ref).norm(), 1e-12);
    EXPECT_LT((fast - oracle::partial_trace(m, c.dims, keep1)).norm(), 1e-12);
  }
}

TEST(Kernels, ApplyLeftParallelMatchesReference) {
  Rng rng(2);
  for (int left : {1, 2, 3})
    for (int right : {1, 2, 4})
      for (int in : {1, 2, 3})
        for (int out : {1, 2, 4}) {
          const Matrix k = rng.ginibre(out, in);
          const Matrix m = rng.ginibre(left * in * right, 3);
          const Matrix fast = kernels::apply_left(k, m, left, right);
          const Matrix ref = kernels::apply_left_reference(k, m, left, right);
          ASSERT_EQ(fast.rows(), left * out * right);
          EXPECT_LT((fast - ref).norm(), 1e-12);
        }
}

TEST(Kernels, ConjugateLocalMatchesKronecker) {
  Rng rng(3);
  const Matrix k = rng.ginibre(3, 2);
  const Matrix m = rng.ginibre(2 * 2 * 3, 2 * 2 * 3);
  const Matrix big = oracle::kron(oracle::kron(Matrix::Identity(2, 2), k), Matrix::Identity(3, 3));
  EXPECT_LT((kernels::conjugate_local(k, m, 2, 3) - big * m * big.adjoint()).norm(), 1e-12);
}

TEST(Kernels, KronMatchesOracle) {
  Rng rng(4);
  const Matrix a = rng.ginibre(2, 3), b = rng.ginibre(3, 2);
  EXPECT_LT((kernels::kron(a, b) - oracle::kron(a, b)).norm(), 1e-14);
}

TEST(Kernels, PermuteSitesRoundTrip) {
  Rng rng(5);
  const std::vector<int> dims{2, 3, 4};
  const std::vector<int> order{2, 0, 1};
  const Matrix m = rng.ginibre(24, 24);
  const Matrix p = kernels::permute_sites(m, dims, order);
  // Inverse order on the permuted dims.
  const std::vector<int> permuted_dims{4, 2, 3};
  const std::vector<int> inverse{1, 2, 0};
  EXPECT_LT((kernels::permute_sites(p, permuted_dims, inverse) - m).norm(), 1e-15);
  // Swapping the factors of a Kronecker product swaps the product.
  const Matrix a = rng.ginibre(2, 2), b = rng.ginibre(3, 3);
  const std::vector<int> ab{2, 3}, swap{1, 0};
  EXPECT_LT((kernels::permute_sites(oracle::kron(a, b), ab, swap) - oracle::kron(b, a)).norm(), 1e-14);
}

TEST(Kernels, ResultsIndependentOfThreadCount) {
  Rng rng(6);
  const std::vector<int> dims{3, 4, 3};
  const std::vector<int> keep{0, 2};
  const Matrix m = rng.ginibre(36, 36);
  const Matrix k = rng.ginibre(5, 4);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const Matrix pt1 = kernels::partial_trace(m, dims, keep);
  const Matrix al1 = kernels::apply_left(k, m, 3, 3);
  omp_set_num_threads(4);
  const Matrix pt4 = kernels::partial_trace(m, dims, keep);
  const Matrix al4 = kernels::apply_left(k, m, 3, 3);
  omp_set_num_threads(saved);
  EXPECT_TRUE(pt1 == pt4);
  EXPECT_TRUE(al1 == al4);
}
