#include "corrkit/monotones.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "corrkit/kernels.hpp"

namespace corrkit {
namespace {

double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p);
  return h;
}

Matrix matrix_sqrt_psd(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const RealVector roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

DensityOperator swapped(const DensityOperator& bipartite) {
  const std::array<int, 2> order{1, 0};
  const auto& dims = bipartite.factorization().dims();
  return DensityOperator::from_trusted(HilbertFactorization({dims[1], dims[0]}),
                                       kernels::permute_sites(bipartite.matrix(), dims, order));
}

}  // namespace

std::string_view to_string(EfRegime r) {
  switch (r) {
    case EfRegime::TrivialSide: return "trivial_side";
    case EfRegime::Pure: return "pure";
    case EfRegime::Product: return "product";
    case EfRegime::TwoQubit: return "two_qubit";
    case EfRegime::MaximallyEntangled: return "maximally_entangled";
  }
  return "unknown";
}

double total_mutual_information(const DensityOperator& rho) {
  const int n = rho.factorization().sites();
  if (n < 2) throw InvalidArgument("total mutual information needs at least two sites");
  double sum = 0.0;
  for (int site = 1; site <= n; ++site) sum += von_neumann_entropy(partial_trace(rho, {site}));
  return sum - von_neumann_entropy(rho);
}

double concurrence(const DensityOperator& rho) {
  const auto& dims = rho.factorization().dims();
  if (rho.factorization().total() != 4 || dims.size() != 2 || dims[0] != 2)
    throw InvalidArgument("concurrence needs a state on [2,2]");
  Matrix yy = Matrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Matrix flipped = yy * rho.matrix().conjugate() * yy;
  const Matrix root = matrix_sqrt_psd(rho.matrix());
  Eigen::SelfAdjointEigenSolver<Matrix> es(root * flipped * root, Eigen::EigenvaluesOnly);
  RealVector l = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::sort(l.data(), l.data() + l.size(), std::greater<>());
  return std::max(0.0, l(0) - l(1) - l(2) - l(3));
}

bool is_maximally_entangled_mixture(const DensityOperator& bipartite, double tolerance) {
  const auto& dims = bipartite.factorization().dims();
  if (dims.size() != 2) throw InvalidArgument("expected a bipartite state");
  if (dims[0] > dims[1]) return is_maximally_entangled_mixture(swapped(bipartite), tolerance);
  const int da = dims[0];
  const int db = dims[1];
  Eigen::SelfAdjointEigenSolver<Matrix> es(bipartite.matrix());
  std::vector<Matrix> blocks;
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    if (es.eigenvalues()(k) <= tol::clip) continue;
    Matrix w(da, db);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < db; ++j) w(i, j) = es.eigenvectors()(i * db + j, k);
    blocks.push_back(std::move(w));
  }
  if (blocks.size() * static_cast<std::size_t>(da) > static_cast<std::size_t>(db)) return false;
  const Matrix target = Matrix::Identity(da, da) / static_cast<double>(da);
  for (std::size_t a = 0; a < blocks.size(); ++a)
    for (std::size_t b = a; b < blocks.size(); ++b) {
      const Matrix overlap = blocks[a] * blocks[b].adjoint();
      const double dev = (a == b) ? (overlap - target).cwiseAbs().maxCoeff()
                                  : overlap.cwiseAbs().maxCoeff();
      if (dev > tolerance) return false;
    }
  return true;
}

EfResult entanglement_of_formation_detailed(const DensityOperator& rho, const SiteSet& cut) {
  const DensityOperator bi = as_bipartite(rho, cut);
  const int da = bi.factorization().dims()[0];
  const int db = bi.factorization().dims()[1];
  if (std::min(da, db) == 1) return {0.0, EfRegime::TrivialSide};

  if (auto psi = as_pure(bi)) {
    Matrix amp(da, db);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < db; ++j) amp(i, j) = psi->vector()(i * db + j);
    const Matrix reduced = amp * amp.adjoint();
    return {shannon_entropy(clipped_spectrum(reduced)), EfRegime::Pure};
  }

  const Matrix ra = partial_trace(bi, {1}).matrix();
  const Matrix rb = partial_trace(bi, {2}).matrix();
  if ((bi.matrix() - kernels::kron(ra, rb)).norm() <= 1e-10) return {0.0, EfRegime::Product};

  if (da == 2 && db == 2) {
    const double c = concurrence(bi);
    const double x = (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))) / 2.0;
    return {binary_entropy(x), EfRegime::TwoQubit};
  }

  if (is_maximally_entangled_mixture(bi))
    return {std::log(static_cast<double>(std::min(da, db))), EfRegime::MaximallyEntangled};

  throw Unsupported("entanglement of formation: mixed state on [" + std::to_string(da) + "," +
                    std::to_string(db) + "] is outside the exactly computable regimes");
}

double entanglement_of_formation(const DensityOperator& rho, const SiteSet& cut) {
  return entanglement_of_formation_detailed(rho, cut).value;
}

double pairwise_monotone(const DensityOperator& rho, int x, int y) {
  if (x == y) throw InvalidArgument("pairwise monotone needs two distinct sites");
  const DensityOperator pair = partial_trace(rho, {x, y});
  return entanglement_of_formation(pair, {1});
}

double bipartition_monotone(const DensityOperator& rho, const SiteSet& part) {
  return entanglement_of_formation(rho, part);
}

}  // namespace corrkit
