#include "corrkit/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace corrkit {
namespace {

void check_probabilities(const std::vector<double>& p, const char* what) {
  double sum = 0.0;
  for (double x : p) {
    if (!std::isfinite(x) || x < 0.0) throw InvalidArgument(std::string(what) + ": entries must be >= 0");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-10) throw InvalidArgument(std::string(what) + ": entries must sum to 1");
}

Vector block_state(const MpsSpec& spec, int q, const std::vector<double>& weights) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(spec.d1) * spec.d2);
  for (int i = 0; i < spec.d1; ++i) v(i * spec.d2 + q * spec.d1 + i) = std::sqrt(weights[i]);
  return v;
}

}  // namespace

void MpsSpec::validate() const {
  if (d1 < 1 || d2 < 1) throw InvalidArgument("MpsSpec: dimensions must be >= 1");
  if (d1 > d2) throw InvalidArgument("MpsSpec: d1 must not exceed d2");
  if (blocks < 1) throw InvalidArgument("MpsSpec: Q must be >= 1");
  if (blocks * d1 > d2)
    throw InvalidArgument("MpsSpec: Q·d1 = " + std::to_string(blocks * d1) + " exceeds d2 = " +
                          std::to_string(d2));
  if (p.size() != static_cast<std::size_t>(blocks))
    throw InvalidArgument("MpsSpec: p must have Q entries");
  check_probabilities(p, "MpsSpec p");
}

DensityOperator build_mps(const MpsSpec& spec) {
  spec.validate();
  return build_mps_weighted(spec, std::vector<double>(spec.d1, 1.0 / spec.d1));
}

DensityOperator build_mps_weighted(const MpsSpec& spec, const std::vector<double>& schmidt) {
  spec.validate();
  if (schmidt.size() != static_cast<std::size_t>(spec.d1))
    throw InvalidArgument("build_mps_weighted: need d1 Schmidt weights");
  check_probabilities(schmidt, "build_mps_weighted weights");
  const int d = spec.d1 * spec.d2;
  Matrix rho = Matrix::Zero(d, d);
  for (int q = 0; q < spec.blocks; ++q) {
    const Vector v = block_state(spec, q, schmidt);
    rho += spec.p[q] * v * v.adjoint();
  }
  return DensityOperator::from_trusted(HilbertFactorization({spec.d1, spec.d2}), std::move(rho));
}

LocalChannel collapse_channel(const MpsSpec& spec) {
  spec.validate();
  std::vector<Matrix> kraus;
  Matrix remainder = Matrix::Identity(spec.d2, spec.d2);
  for (int q = 0; q < spec.blocks; ++q) {
    Matrix k = Matrix::Zero(spec.d2, spec.d2);
    for (int i = 0; i < spec.d1; ++i) {
      k(i, q * spec.d1 + i) = 1.0;
      remainder(q * spec.d1 + i, q * spec.d1 + i) = 0.0;
    }
    kraus.push_back(std::move(k));
  }
  if (spec.blocks * spec.d1 < spec.d2) kraus.push_back(std::move(remainder));
  return LocalChannel(2, std::move(kraus));
}

LocalMeasurement cyclic_filter(int d1, const std::vector<double>& lambda) {
  if (d1 < 1) throw InvalidArgument("cyclic_filter: d1 must be >= 1");
  if (lambda.size() != static_cast<std::size_t>(d1))
    throw InvalidArgument("cyclic_filter: lambda must have d1 entries");
  check_probabilities(lambda, "cyclic_filter lambda");
  std::vector<std::vector<Matrix>> outcomes;
  for (int q = 0; q < d1; ++q) {
    Matrix k = Matrix::Zero(d1, d1);
    for (int i = 0; i < d1; ++i) k(i, (i + q) % d1) = std::sqrt(lambda[i]);
    outcomes.push_back({std::move(k)});
  }
  return LocalMeasurement(1, std::move(outcomes));
}

Dilation dilate_measurement(const LocalMeasurement& m) {
  const int n_out = m.outcome_count();
  const int din = m.input_dim();
  int padded = 0;
  for (int q = 0; q < n_out; ++q) padded = std::max(padded, m.output_dim(q));
  const int dout = n_out * padded;

  std::vector<Matrix> kraus;
  std::vector<std::vector<Matrix>> readout;
  for (int q = 0; q < n_out; ++q) {
    for (const auto& k : m.outcomes()[q]) {
      Matrix flagged = Matrix::Zero(dout, din);
      flagged.middleRows(q * padded, k.rows()) = k;
      kraus.push_back(std::move(flagged));
    }
    Matrix projector = Matrix::Zero(dout, dout);
    projector.block(q * padded, q * padded, padded, padded).setIdentity();
    readout.push_back({std::move(projector)});
  }
  return {LocalChannel(m.site(), std::move(kraus)), LocalMeasurement(m.site(), std::move(readout)),
          padded};
}

DensityOperator undo_dilation(const DensityOperator& post, const LocalMeasurement& original,
                              const Dilation& dilation, int outcome) {
  const int dq = original.output_dim(outcome);
  const int dout = original.outcome_count() * dilation.padded_dim;
  Matrix extract = Matrix::Zero(dq, dout);
  extract.middleCols(outcome * dilation.padded_dim, dq).setIdentity();
  Matrix reduced = apply_local_operator(post, original.site(), extract);
  return DensityOperator::from_trusted(post.factorization().with_dim(original.site(), dq),
                                       std::move(reduced));
}

PureState build_npartite_max(const std::vector<int>& dims) {
  if (dims.size() < 2) throw InvalidArgument("build_npartite_max needs at least two sites");
  HilbertFactorization f(dims);
  const int d = std::accumulate(dims.begin(), dims.end() - 1, 1, std::multiplies<>());
  const int last = dims.back();
  if (last < d)
    throw InvalidArgument("build_npartite_max: last dimension " + std::to_string(last) +
                          " is smaller than the product " + std::to_string(d) + " of the others");
  Vector v = Vector::Zero(f.total());
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) v(i * last + i) = amp;
  return PureState(std::move(f), std::move(v));
}

PureState ghz_state(const std::vector<int>& dims) {
  HilbertFactorization f(dims);
  const int m = *std::min_element(dims.begin(), dims.end());
  Vector v = Vector::Zero(f.total());
  for (int k = 0; k < m; ++k) {
    int index = 0;
    for (int d : dims) index = index * d + k;
    v(index) = 1.0 / std::sqrt(static_cast<double>(m));
  }
  return PureState(std::move(f), std::move(v));
}

PureState pure_schmidt_state(const std::vector<double>& lambda) {
  if (lambda.empty()) throw InvalidArgument("pure_schmidt_state: lambda is empty");
  check_probabilities(lambda, "pure_schmidt_state lambda");
  const int r = static_cast<int>(lambda.size());
  Vector v = Vector::Zero(static_cast<Eigen::Index>(r) * r);
  for (int i = 0; i < r; ++i) v(i * r + i) = std::sqrt(lambda[i]);
  v.normalize();
  return PureState(HilbertFactorization({r, r}), std::move(v));
}

ReductionReport check_reductions(const DensityOperator& rho, double tolerance) {
  const auto& f = rho.factorization();
  const int n = f.sites();
  if (n > 20) throw InvalidArgument("check_reductions: too many sites to enumerate subsets");
  ReductionReport report;
  report.total_dim = f.total();
  const long long d = f.total();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    SiteSet sites;
    long long dim = 1;
    for (int s = 0; s < n; ++s)
      if (mask & (1u << s)) {
        sites.push_back(s + 1);
        dim *= f.dims()[s];
      }
    if (dim * dim > d) continue;
    const DensityOperator reduced = partial_trace(rho, sites);
    const int di = static_cast<int>(dim);
    ReductionCheck check;
    check.sites = sites;
    check.dim = di;
    check.deviation =
        (reduced.matrix() - Matrix::Identity(di, di) / static_cast<double>(di)).norm();
    check.pass = check.deviation <= tolerance;
    report.max_subset_dim = std::max(report.max_subset_dim, di);
    if (!check.pass && !report.first_failure) {
      report.first_failure = sites;
      report.failure_reason = "reduction is not maximally mixed";
    }
    report.subsets.push_back(std::move(check));
  }
  const long long m = report.max_subset_dim;
  report.purity_forced = 2 * m * m > d;
  report.is_pure = rho.eigenvalues().maxCoeff() >= 1.0 - 1e-10;
  report.satisfied = !report.first_failure.has_value();
  if (report.satisfied && report.purity_forced && !report.is_pure) {
    report.satisfied = false;
    report.failure_reason = "state must be pure for these dimensions but is mixed";
  }
  return report;
}

DensityOperator relabel_embed(const DensityOperator& rho, const std::vector<int>& target_dims) {
  const auto& f = rho.factorization();
  if (target_dims.size() != static_cast<std::size_t>(f.sites()))
    throw InvalidArgument("relabel_embed: need one target dimension per site");
  DensityOperator current = rho;
  for (int site = 1; site <= f.sites(); ++site) {
    const int din = f.dim(site);
    const int target = target_dims[site - 1];
    if (target < 1) throw InvalidArgument("relabel_embed: target dimensions must be >= 1");
    if (target == din) continue;
    std::vector<Matrix> kraus;
    if (target > din) {
      Matrix k = Matrix::Zero(target, din);
      k.topRows(din).setIdentity();
      kraus.push_back(std::move(k));
    } else {
      Eigen::SelfAdjointEigenSolver<Matrix> es(partial_trace(current, {site}).matrix());
      std::vector<int> support, kernel;
      for (int k = din - 1; k >= 0; --k) (es.eigenvalues()(k) > tol::clip ? support : kernel).push_back(k);
      if (static_cast<int>(support.size()) > target)
        throw InvalidArgument("relabel_embed: target dimension " + std::to_string(target) +
                              " at site " + std::to_string(site) +
                              " is smaller than the local support rank " +
                              std::to_string(support.size()));
      Matrix k0 = Matrix::Zero(target, din);
      for (std::size_t j = 0; j < support.size(); ++j)
        k0.row(static_cast<int>(j)) = es.eigenvectors().col(support[j]).adjoint();
      kraus.push_back(std::move(k0));
      // Kernel directions carry no weight; they complete the Kraus set.
      for (int k : kernel) {
        Matrix kk = Matrix::Zero(target, din);
        kk.row(0) = es.eigenvectors().col(k).adjoint();
        kraus.push_back(std::move(kk));
      }
    }
    current = apply_channel(current, LocalChannel(site, std::move(kraus)));
  }
  return current;
}

}  // namespace corrkit
