#include "corrkit/bell.hpp"

#include <cmath>
#include <exception>
#include <numbers>
#include <string>

#include <omp.h>

#include "corrkit/rng.hpp"

namespace corrkit {
namespace {

// tr_B[ρ (I ⊗ F)] on a [da, db] state.
Matrix condition_on_b(const Matrix& rho, const Matrix& f, int da, int db) {
  Matrix out = Matrix::Zero(da, da);
  for (int a = 0; a < da; ++a)
    for (int ap = 0; ap < da; ++ap) {
      Complex acc = 0.0;
      for (int b = 0; b < db; ++b)
        for (int bp = 0; bp < db; ++bp) acc += rho(a * db + b, ap * db + bp) * f(bp, b);
      out(a, ap) = acc;
    }
  return out;
}

// tr_A[ρ (F ⊗ I)] on a [da, db] state.
Matrix condition_on_a(const Matrix& rho, const Matrix& f, int da, int db) {
  Matrix out = Matrix::Zero(db, db);
  for (int b = 0; b < db; ++b)
    for (int bp = 0; bp < db; ++bp) {
      Complex acc = 0.0;
      for (int a = 0; a < da; ++a)
        for (int ap = 0; ap < da; ++ap) acc += rho(a * db + b, ap * db + bp) * f(ap, a);
      out(b, bp) = acc;
    }
  return out;
}

// Best two-outcome POVM for Σ_s tr(F_s G_s): F_0 projects onto the positive
// eigenspace of G_0 − G_1.
Povm best_response(const Matrix& g0, const Matrix& g1) {
  const Matrix h = (g0 - g1 + (g0 - g1).adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const int d = static_cast<int>(h.rows());
  Matrix p0 = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k)
    if (es.eigenvalues()(k) > 0.0) p0 += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
  return {p0, Matrix::Identity(d, d) - p0};
}

PovmSet random_projective(int settings, int d, Rng& rng) {
  PovmSet out;
  for (int x = 0; x < settings; ++x) {
    const Matrix u = rng.haar_unitary(d);
    Matrix p0 = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k)
      if (rng.uniform() < 0.5) p0 += u.col(k) * u.col(k).adjoint();
    out.push_back({p0, Matrix::Identity(d, d) - p0});
  }
  return out;
}

struct RestartResult {
  double value = -INFINITY;
  PovmSet alice, bob;
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;
};

class SeeSaw {
 public:
  SeeSaw(const DensityOperator& rho, const BellFunctional& f)
      : rho_(rho.matrix()),
        f_(f),
        da_(rho.factorization().dims()[0]),
        db_(rho.factorization().dims()[1]) {}

  PovmSet optimize_alice(const PovmSet& bob) const {
    // Conditional operators tr_B[ρ(I⊗G_{t|y})], reused across (s, x).
    std::vector<std::vector<Matrix>> cond(f_.settings_b());
    for (int y = 0; y < f_.settings_b(); ++y)
      for (int t = 0; t < f_.outcomes_b(); ++t) cond[y].push_back(condition_on_b(rho_, bob[y][t], da_, db_));
    PovmSet alice;
    for (int x = 0; x < f_.settings_a(); ++x) {
      std::vector<Matrix> g(2, Matrix::Zero(da_, da_));
      for (int s = 0; s < 2; ++s)
        for (int y = 0; y < f_.settings_b(); ++y)
          for (int t = 0; t < f_.outcomes_b(); ++t) g[s] += f_.coefficient(s, t, x, y) * cond[y][t];
      alice.push_back(best_response(g[0], g[1]));
    }
    return alice;
  }

  PovmSet optimize_bob(const PovmSet& alice) const {
    std::vector<std::vector<Matrix>> cond(f_.settings_a());
    for (int x = 0; x < f_.settings_a(); ++x)
      for (int s = 0; s < f_.outcomes_a(); ++s) cond[x].push_back(condition_on_a(rho_, alice[x][s], da_, db_));
    PovmSet bob;
    for (int y = 0; y < f_.settings_b(); ++y) {
      std::vector<Matrix> g(2, Matrix::Zero(db_, db_));
      for (int t = 0; t < 2; ++t)
        for (int x = 0; x < f_.settings_a(); ++x)
          for (int s = 0; s < f_.outcomes_a(); ++s) g[t] += f_.coefficient(s, t, x, y) * cond[x][s];
      bob.push_back(best_response(g[0], g[1]));
    }
    return bob;
  }

  RestartResult run(std::uint64_t seed, const BellOptions& options, const DensityOperator& rho) const {
    Rng rng(seed);
    RestartResult r;
    r.bob = random_projective(f_.settings_b(), db_, rng);
    double previous = -INFINITY;
    for (int it = 0; it < options.max_iterations; ++it) {
      r.alice = optimize_alice(r.bob);
      r.bob = optimize_bob(r.alice);
      const double value = bell_expectation(rho, f_, r.alice, r.bob);
      r.history.push_back(value);
      r.iterations = it + 1;
      r.value = value;
      if (value - previous < options.tolerance) {
        r.converged = true;
        break;
      }
      previous = value;
    }
    return r;
  }

 private:
  const Matrix& rho_;
  const BellFunctional& f_;
  int da_, db_;
};

}  // namespace

BellFunctional::BellFunctional(int settings_a, int settings_b, int outcomes_a, int outcomes_b,
                               std::vector<double> beta, std::optional<double> local_bound,
                               std::string name)
    : x_(settings_a),
      y_(settings_b),
      s_(outcomes_a),
      t_(outcomes_b),
      beta_(std::move(beta)),
      local_bound_(local_bound),
      name_(std::move(name)) {
  if (x_ < 1 || y_ < 1 || s_ < 1 || t_ < 1)
    throw InvalidArgument("Bell functional: setting and outcome counts must be >= 1");
  if (beta_.size() != static_cast<std::size_t>(x_ * y_ * s_ * t_))
    throw InvalidArgument("Bell functional: beta has " + std::to_string(beta_.size()) +
                          " entries, expected " + std::to_string(x_ * y_ * s_ * t_));
  bool nonzero = false;
  for (double b : beta_) {
    if (!std::isfinite(b)) throw InvalidArgument("Bell functional: coefficients must be finite");
    nonzero = nonzero || b != 0.0;
  }
  if (!nonzero) throw InvalidArgument("Bell functional: all coefficients are zero");
}

BellFunctional BellFunctional::chsh() {
  std::vector<double> beta(16);
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
          const double parity = (s == t) ? 1.0 : -1.0;
          const double sign = (x == 1 && y == 1) ? -1.0 : 1.0;
          beta[((s * 2 + t) * 2 + x) * 2 + y] = parity * sign;
        }
  return BellFunctional(2, 2, 2, 2, std::move(beta), 2.0, "CHSH");
}

double BellFunctional::abs_sum() const {
  double s = 0.0;
  for (double b : beta_) s += std::abs(b);
  return s;
}

double bell_expectation(const DensityOperator& rho, const BellFunctional& f,
                        const PovmSet& alice, const PovmSet& bob) {
  const int da = rho.factorization().dims()[0];
  const int db = rho.factorization().dims()[1];
  double total = 0.0;
  for (int x = 0; x < f.settings_a(); ++x)
    for (int y = 0; y < f.settings_b(); ++y)
      for (int t = 0; t < f.outcomes_b(); ++t) {
        const Matrix cond = condition_on_b(rho.matrix(), bob[y][t], da, db);
        for (int s = 0; s < f.outcomes_a(); ++s) {
          const double beta = f.coefficient(s, t, x, y);
          if (beta != 0.0) total += beta * (alice[x][s] * cond).trace().real();
        }
      }
  return total;
}

BellResult bell_value(const DensityOperator& rho, const BellFunctional& f,
                      const BellOptions& options) {
  if (rho.factorization().sites() != 2)
    throw InvalidArgument("bell_value needs a bipartite state");
  if (f.outcomes_a() != 2 || f.outcomes_b() != 2)
    throw InvalidArgument("bell_value: the exact see-saw step supports two outcomes per setting");
  if (options.restarts < 1 || options.max_iterations < 1)
    throw InvalidArgument("bell_value: restarts and max_iterations must be >= 1");

  const SeeSaw seesaw(rho, f);
  std::vector<RestartResult> runs(options.restarts);
  std::vector<std::exception_ptr> errors(options.restarts);
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (options.parallel)
  for (int r = 0; r < options.restarts; ++r) {
    try {
      runs[r] = seesaw.run(derive_seed(options.seed, static_cast<std::uint64_t>(r)), options, rho);
    } catch (...) {
      errors[r] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  BellResult result;
  double incumbent = -INFINITY;
  for (int r = 0; r < options.restarts; ++r) {
    result.restart_values.push_back(runs[r].value);
    if (runs[r].value > incumbent) {
      if (r == options.restarts - 1 && r > 0 && runs[r].value > incumbent + options.tolerance)
        result.possibly_not_converged = true;
      incumbent = runs[r].value;
      result.best_restart = r;
    }
  }
  RestartResult& best = runs[result.best_restart];
  result.value = best.value;
  result.alice = std::move(best.alice);
  result.bob = std::move(best.bob);
  result.iterations = best.iterations;
  result.converged = best.converged;
  result.history = std::move(best.history);
  return result;
}

}  // namespace corrkit
