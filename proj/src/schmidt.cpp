#include "corrkit/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "corrkit/kernels.hpp"

namespace corrkit {

SchmidtVector::SchmidtVector(std::vector<double> coeffs) {
  double sum = 0.0;
  for (double c : coeffs) {
    if (!std::isfinite(c) || c < -tol::schmidt_cutoff)
      throw InvalidArgument("Schmidt coefficients must be finite and nonnegative");
    sum += c;
  }
  if (std::abs(sum - 1.0) > tol::majorization)
    throw InvalidArgument("Schmidt coefficients must sum to 1");
  std::erase_if(coeffs, [](double c) { return c <= tol::schmidt_cutoff; });
  if (coeffs.empty()) throw InvalidArgument("Schmidt vector is empty after cutoff");
  std::sort(coeffs.begin(), coeffs.end(), std::greater<>());
  const double kept = std::accumulate(coeffs.begin(), coeffs.end(), 0.0);
  for (double& c : coeffs) c /= kept;
  coeffs_ = std::move(coeffs);
}

SchmidtDecomposition schmidt_decompose(const PureState& psi, const SiteSet& cut) {
  const auto& f = psi.factorization();
  const SiteSet a = f.normalize(cut);
  const SiteSet b = f.complement(a);
  if (a.empty() || b.empty())
    throw InvalidArgument("Schmidt cut must be a nonempty strict subset of sites");
  std::vector<int> order;
  for (int s : a) order.push_back(s - 1);
  for (int s : b) order.push_back(s - 1);
  const Vector v = kernels::permute_sites(psi.vector(), f.dims(), order);
  const int da = f.dim_of(a);
  const int db = f.dim_of(b);
  Matrix amp(da, db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) amp(i, j) = v(i * db + j);

  Eigen::JacobiSVD<Matrix> svd(amp, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sv = svd.singularValues();
  std::vector<double> coeffs;
  std::vector<int> kept;
  double total = 0.0;
  for (int k = 0; k < sv.size(); ++k) {
    total += sv(k) * sv(k);
    if (sv(k) * sv(k) > tol::schmidt_cutoff) {
      coeffs.push_back(sv(k) * sv(k));
      kept.push_back(k);
    }
  }
  for (double& c : coeffs) c /= total;
  Matrix left(da, static_cast<int>(kept.size()));
  Matrix right(db, static_cast<int>(kept.size()));
  for (std::size_t k = 0; k < kept.size(); ++k) {
    left.col(static_cast<int>(k)) = svd.matrixU().col(kept[k]);
    right.col(static_cast<int>(k)) = svd.matrixV().col(kept[k]).conjugate();
  }
  return {SchmidtVector(std::move(coeffs)), std::move(left), std::move(right)};
}

Vector reconstruct(const SchmidtDecomposition& s) {
  Vector out = Vector::Zero(s.left.rows() * s.right.rows());
  for (int k = 0; k < s.coefficients.rank(); ++k)
    out += std::sqrt(s.coefficients[k]) *
           kernels::kron(s.left.col(k), s.right.col(k)).col(0);
  return out;
}

bool majorizes(const SchmidtVector& a, const SchmidtVector& b) {
  const int n = std::max(a.rank(), b.rank());
  double sa = 0.0;
  double sb = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i < a.rank()) sa += a[i];
    if (i < b.rank()) sb += b[i];
    if (sa < sb - tol::majorization) return false;
  }
  return true;
}

double entropy_family(const SchmidtVector& v, double q) {
  if (std::isnan(q) || q < 0.0) throw InvalidArgument("entropy order must be >= 0");
  const auto& c = v.coeffs();
  if (q == 0.0) return std::log(static_cast<double>(v.rank()));
  if (std::isinf(q)) return -std::log(c.front());
  if (std::abs(q - 1.0) < 1e-4) {
    // H_q = H − (q − 1)/2 · Var(ln λ) + O((q − 1)²)
    double mean = 0.0;
    double second = 0.0;
    for (double x : c) {
      const double l = std::log(x);
      mean += x * l;
      second += x * l * l;
    }
    const double shannon = -mean;
    return shannon - 0.5 * (q - 1.0) * (second - mean * mean);
  }
  // ln Σ λ^q evaluated relative to the largest entry to avoid underflow.
  const double lmax = std::log(c.front());
  double acc = 0.0;
  for (double x : c) acc += std::exp(q * (std::log(x) - lmax));
  return (q * lmax + std::log(acc)) / (1.0 - q);
}

bool pure_convertible_locc(const SchmidtVector& source, const SchmidtVector& target) {
  return majorizes(target, source);
}

Prec1Relation classify_prec1_pure(const SchmidtVector& a, const SchmidtVector& b) {
  if (a.rank() != b.rank()) return Prec1Relation::Undetermined;
  for (int i = 0; i < a.rank(); ++i)
    if (std::abs(a[i] - b[i]) > 1e-9) return Prec1Relation::Incomparable;
  return Prec1Relation::EquallyCorrelated;
}

std::string_view to_string(Prec1Relation r) {
  switch (r) {
    case Prec1Relation::EquallyCorrelated: return "equally_correlated";
    case Prec1Relation::Incomparable: return "incomparable";
    case Prec1Relation::Undetermined: return "undetermined";
  }
  return "undetermined";
}

}  // namespace corrkit
