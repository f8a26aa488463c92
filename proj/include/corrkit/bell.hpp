#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corrkit/state.hpp"

namespace corrkit {

/// Coefficients β[s,t,x,y] of Σ β p(s,t|x,y) ≤ b. Stored flattened with
/// index ((s·T + t)·X + x)·Y + y.
class BellFunctional {
 public:
  BellFunctional(int settings_a, int settings_b, int outcomes_a, int outcomes_b,
                 std::vector<double> beta, std::optional<double> local_bound = std::nullopt,
                 std::string name = "custom");

  /// β = ±1 with the sign flipped on (x,y) = (1,1); local bound 2.
  static BellFunctional chsh();

  int settings_a() const { return x_; }
  int settings_b() const { return y_; }
  int outcomes_a() const { return s_; }
  int outcomes_b() const { return t_; }
  double coefficient(int s, int t, int x, int y) const {
    return beta_[((s * t_ + t) * x_ + x) * y_ + y];
  }
  const std::vector<double>& beta() const { return beta_; }
  const std::optional<double>& local_bound() const { return local_bound_; }
  const std::string& name() const { return name_; }
  double abs_sum() const;

 private:
  int x_, y_, s_, t_;
  std::vector<double> beta_;
  std::optional<double> local_bound_;
  std::string name_;
};

/// One POVM per setting; each POVM lists its effects by outcome.
using Povm = std::vector<Matrix>;
using PovmSet = std::vector<Povm>;

struct BellOptions {
  int restarts = 20;
  int max_iterations = 500;
  double tolerance = 1e-9;
  std::uint64_t seed = 0x5eedULL;
  bool parallel = true;
  int threads = 0;  // 0: OpenMP default
};

struct BellResult {
  /// Lower bound on B(ρ): the best value reached over all restarts.
  double value = 0.0;
  PovmSet alice;
  PovmSet bob;
  int best_restart = 0;
  int iterations = 0;
  bool converged = false;
  /// Set when the final restart still improved on every earlier one.
  bool possibly_not_converged = false;
  std::vector<double> restart_values;
  /// Value after each see-saw iteration of the best restart.
  std::vector<double> history;
};

/// Σ β tr(ρ F_{s|x} ⊗ G_{t|y}) for fixed measurements.
double bell_expectation(const DensityOperator& rho, const BellFunctional& f,
                        const PovmSet& alice, const PovmSet& bob);

/// See-saw lower bound on max over local POVMs of the Bell expression.
/// Each half-step is the exact optimum for two-outcome measurements
/// (projector onto the positive part of the conditional operator), so the
/// value is nondecreasing across iterations. Restarts draw Haar-random
/// projective initial measurements and are reduced in restart order.
BellResult bell_value(const DensityOperator& rho, const BellFunctional& f,
                      const BellOptions& options = {});

}  // namespace corrkit
