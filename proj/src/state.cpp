#include "corrkit/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "corrkit/kernels.hpp"

namespace corrkit {
namespace {

std::vector<int> zero_based(const SiteSet& sites) {
  std::vector<int> out;
  out.reserve(sites.size());
  for (int s : sites) out.push_back(s - 1);
  return out;
}

Matrix hermitized(const Matrix& m) { return (m + m.adjoint()) * 0.5; }

}  // namespace

// ---------------------------------------------------------------------------
// HilbertFactorization

HilbertFactorization::HilbertFactorization(std::vector<int> dims)
    : dims_(std::move(dims)) {
  if (dims_.empty()) throw InvalidArgument("factorization needs at least one site");
  long long total = 1;
  for (int d : dims_) {
    if (d < 1) throw InvalidArgument("local dimension must be >= 1, got " + std::to_string(d));
    total *= d;
    if (total > max_total_dimension)
      throw InvalidArgument("total dimension exceeds " + std::to_string(max_total_dimension));
  }
  total_ = static_cast<int>(total);
}

void HilbertFactorization::check_site(int site) const {
  if (site < 1 || site > sites())
    throw InvalidArgument("site " + std::to_string(site) + " out of range 1.." +
                          std::to_string(sites()));
}

int HilbertFactorization::dim(int site) const {
  check_site(site);
  return dims_[site - 1];
}

int HilbertFactorization::left_of(int site) const {
  check_site(site);
  return std::accumulate(dims_.begin(), dims_.begin() + (site - 1), 1, std::multiplies<>());
}

int HilbertFactorization::right_of(int site) const {
  check_site(site);
  return std::accumulate(dims_.begin() + site, dims_.end(), 1, std::multiplies<>());
}

SiteSet HilbertFactorization::normalize(const SiteSet& sites) const {
  SiteSet out = sites;
  for (int s : out) check_site(s);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SiteSet HilbertFactorization::complement(const SiteSet& sites) const {
  const SiteSet norm = normalize(sites);
  SiteSet out;
  for (int s = 1; s <= this->sites(); ++s)
    if (!std::binary_search(norm.begin(), norm.end(), s)) out.push_back(s);
  return out;
}

int HilbertFactorization::dim_of(const SiteSet& sites) const {
  int d = 1;
  for (int s : normalize(sites)) d *= dims_[s - 1];
  return d;
}

HilbertFactorization HilbertFactorization::with_dim(int site, int new_dim) const {
  check_site(site);
  auto dims = dims_;
  dims[site - 1] = new_dim;
  return HilbertFactorization(std::move(dims));
}

HilbertFactorization HilbertFactorization::restricted(const SiteSet& sites) const {
  std::vector<int> dims;
  for (int s : normalize(sites)) dims.push_back(dims_[s - 1]);
  return HilbertFactorization(std::move(dims));
}

HilbertFactorization HilbertFactorization::concat(const HilbertFactorization& other) const {
  auto dims = dims_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  return HilbertFactorization(std::move(dims));
}

// ---------------------------------------------------------------------------
// States

PureState::PureState(HilbertFactorization f, Vector amplitudes)
    : factorization_(std::move(f)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != factorization_.total())
    throw DimensionMismatch("state vector length " + std::to_string(amplitudes_.size()) +
                            " does not match total dimension " +
                            std::to_string(factorization_.total()));
  if (std::abs(amplitudes_.norm() - 1.0) > tol::norm)
    throw InvalidState("state vector is not normalized");
}

DensityOperator::DensityOperator(HilbertFactorization f, Matrix m)
    : factorization_(std::move(f)), matrix_(std::move(m)) {
  const int d = factorization_.total();
  if (matrix_.rows() != d || matrix_.cols() != d)
    throw DimensionMismatch("density matrix shape does not match factorization");
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > tol::hermitian)
    throw InvalidState("density matrix is not Hermitian");
  const Complex tr = matrix_.trace();
  if (std::abs(tr - Complex(1.0)) > tol::trace) throw InvalidState("density matrix trace is not 1");
  // Store the exactly Hermitian part so the eigensolver sees clean input.
  matrix_ = hermitized(matrix_);
  if (eigenvalues().minCoeff() < tol::min_eigenvalue)
    throw InvalidState("density matrix has a negative eigenvalue");
}

DensityOperator::DensityOperator(const PureState& psi)
    : factorization_(psi.factorization()), matrix_(psi.vector() * psi.vector().adjoint()) {}

DensityOperator::DensityOperator(Trusted, HilbertFactorization f, Matrix m)
    : factorization_(std::move(f)), matrix_(std::move(m)) {}

DensityOperator DensityOperator::from_trusted(HilbertFactorization f, Matrix m) {
  if (m.rows() != f.total() || m.cols() != f.total())
    throw DimensionMismatch("density matrix shape does not match factorization");
  Matrix h = hermitized(m);
  const double tr = h.trace().real();
  if (!(tr > 0.0)) throw InvalidState("matrix has non-positive trace");
  h /= tr;
  return DensityOperator(Trusted{}, std::move(f), std::move(h));
}

DensityOperator DensityOperator::maximally_mixed(HilbertFactorization f) {
  const int d = f.total();
  return DensityOperator(Trusted{}, std::move(f), Matrix::Identity(d, d) / static_cast<double>(d));
}

RealVector DensityOperator::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// ---------------------------------------------------------------------------
// Operations

double completeness_residual(const std::vector<Matrix>& kraus) {
  if (kraus.empty()) return INFINITY;
  const auto din = kraus.front().cols();
  Matrix sum = Matrix::Zero(din, din);
  for (const auto& k : kraus) sum += k.adjoint() * k;
  return (sum - Matrix::Identity(din, din)).norm();
}

LocalChannel::LocalChannel(int site, std::vector<Matrix> kraus)
    : site_(site), kraus_(std::move(kraus)) {
  if (site_ < 1) throw InvalidArgument("channel site must be >= 1");
  if (kraus_.empty()) throw InvalidArgument("channel needs at least one Kraus operator");
  for (const auto& k : kraus_)
    if (k.rows() != kraus_.front().rows() || k.cols() != kraus_.front().cols() || k.size() == 0)
      throw DimensionMismatch("channel Kraus operators must share one shape");
  if (completeness_residual(kraus_) > tol::completeness)
    throw InvalidState("channel Kraus operators are not complete");
}

LocalMeasurement::LocalMeasurement(int site, std::vector<std::vector<Matrix>> outcomes)
    : site_(site), outcomes_(std::move(outcomes)) {
  if (site_ < 1) throw InvalidArgument("measurement site must be >= 1");
  if (outcomes_.empty()) throw InvalidArgument("measurement needs at least one outcome");
  const auto din = outcomes_.front().empty() ? 0 : outcomes_.front().front().cols();
  std::vector<Matrix> all;
  for (const auto& group : outcomes_) {
    if (group.empty()) throw InvalidArgument("every outcome needs at least one Kraus term");
    for (const auto& k : group) {
      if (k.cols() != din || k.rows() != group.front().rows() || k.size() == 0)
        throw DimensionMismatch("measurement Kraus shapes are inconsistent");
      all.push_back(k);
    }
  }
  if (completeness_residual(all) > tol::completeness)
    throw InvalidState("measurement Kraus operators are not complete");
}

bool LocalMeasurement::efficient() const {
  return std::all_of(outcomes_.begin(), outcomes_.end(),
                     [](const auto& g) { return g.size() == 1; });
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator::from_trusted(a.factorization().concat(b.factorization()),
                                       kernels::kron(a.matrix(), b.matrix()));
}

PureState tensor(const PureState& a, const PureState& b) {
  Vector v = kernels::kron(a.vector(), b.vector());
  v.normalize();
  return PureState(a.factorization().concat(b.factorization()), std::move(v));
}

DensityOperator partial_trace(const DensityOperator& rho, const SiteSet& keep) {
  if (keep.empty()) throw InvalidArgument("partial_trace: keep set is empty");
  const auto& f = rho.factorization();
  const SiteSet kept = f.normalize(keep);
  const auto keep0 = zero_based(kept);
  return DensityOperator::from_trusted(f.restricted(kept),
                                       kernels::partial_trace(rho.matrix(), f.dims(), keep0));
}

RealVector clipped_spectrum(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian, Eigen::EigenvaluesOnly);
  RealVector ev = es.eigenvalues();
  if (ev.minCoeff() < tol::min_eigenvalue)
    throw InvalidState("spectrum has an eigenvalue below -1e-10");
  ev = ev.cwiseMax(0.0);
  ev /= ev.sum();
  return ev;
}

double shannon_entropy(const RealVector& probabilities) {
  double s = 0.0;
  for (double p : probabilities)
    if (p > 0.0) s -= p * std::log(p);
  return s;
}

double von_neumann_entropy(const DensityOperator& rho) {
  return shannon_entropy(clipped_spectrum(rho.matrix()));
}

Matrix apply_local_operator(const DensityOperator& rho, int site, const Matrix& k) {
  const auto& f = rho.factorization();
  if (k.cols() != f.dim(site))
    throw DimensionMismatch("operator input dimension " + std::to_string(k.cols()) +
                            " does not match site " + std::to_string(site) + " dimension " +
                            std::to_string(f.dim(site)));
  return kernels::conjugate_local(k, rho.matrix(), f.left_of(site), f.right_of(site));
}

DensityOperator apply_channel(const DensityOperator& rho, const LocalChannel& ch) {
  const auto& f = rho.factorization();
  f.check_site(ch.site());
  Matrix out;
  for (const auto& k : ch.kraus()) {
    Matrix term = apply_local_operator(rho, ch.site(), k);
    if (out.size() == 0)
      out = std::move(term);
    else
      out += term;
  }
  return DensityOperator::from_trusted(f.with_dim(ch.site(), ch.output_dim()), std::move(out));
}

std::vector<MeasurementOutcome> measure(const DensityOperator& rho, const LocalMeasurement& m) {
  const auto& f = rho.factorization();
  f.check_site(m.site());
  std::vector<MeasurementOutcome> result;
  result.reserve(m.outcomes().size());
  for (int q = 0; q < m.outcome_count(); ++q) {
    Matrix unnormalized;
    for (const auto& k : m.outcomes()[q]) {
      Matrix term = apply_local_operator(rho, m.site(), k);
      if (unnormalized.size() == 0)
        unnormalized = std::move(term);
      else
        unnormalized += term;
    }
    MeasurementOutcome outcome;
    outcome.probability = std::max(0.0, unnormalized.trace().real());
    if (outcome.probability >= tol::probability_floor)
      outcome.state = DensityOperator::from_trusted(f.with_dim(m.site(), m.output_dim(q)),
                                                    std::move(unnormalized));
    result.push_back(std::move(outcome));
  }
  return result;
}

PureState purify(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  const RealVector& ev = es.eigenvalues();
  if (ev.minCoeff() < tol::min_eigenvalue) throw InvalidState("cannot purify: negative eigenvalue");
  std::vector<int> support;
  double total = 0.0;
  // Descending order so the dominant eigenvector pairs with ancilla |0⟩.
  for (int p = static_cast<int>(ev.size()) - 1; p >= 0; --p)
    if (ev(p) > tol::clip) {
      support.push_back(p);
      total += ev(p);
    }
  const int rank = static_cast<int>(support.size());
  const int d = rho.dim();
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(d) * rank);
  for (int a = 0; a < rank; ++a) {
    const double w = std::sqrt(ev(support[a]) / total);
    for (int i = 0; i < d; ++i) psi(i * rank + a) = w * es.eigenvectors()(i, support[a]);
  }
  psi.normalize();
  return PureState(rho.factorization().concat(HilbertFactorization({rank})), std::move(psi));
}

std::optional<PureState> as_pure(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  const auto top = es.eigenvalues().size() - 1;
  if (es.eigenvalues()(top) < 1.0 - 1e-10) return std::nullopt;
  Vector v = es.eigenvectors().col(top);
  v.normalize();
  return PureState(rho.factorization(), std::move(v));
}

DensityOperator as_bipartite(const DensityOperator& rho, const SiteSet& cut) {
  const auto& f = rho.factorization();
  const SiteSet a = f.normalize(cut);
  const SiteSet b = f.complement(a);
  if (a.empty() || b.empty()) throw InvalidArgument("cut must be a nonempty strict subset of sites");
  std::vector<int> order = zero_based(a);
  for (int s : b) order.push_back(s - 1);
  Matrix permuted = kernels::permute_sites(rho.matrix(), f.dims(), order);
  return DensityOperator::from_trusted(HilbertFactorization({f.dim_of(a), f.dim_of(b)}),
                                       std::move(permuted));
}

}  // namespace corrkit
