#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "corrkit/io.hpp"
#include "corrkit/registry.hpp"
#include "corrkit/state.hpp"

namespace corrkit {

enum class Condition {
  Deterministic,   // C(Λρ) ≤ C(ρ)
  Average,         // Σ p_q C(ρ_q) ≤ C(ρ)
  ProbabilityOne,  // min_q C(ρ_q) ≤ C(ρ)
  OneWayLocc,      // C(Σ_q Λ^(q)(K_q ρ K_q†)) ≤ C(ρ)
};
std::string_view to_string(Condition c);
/// Accepts "1", "2", "3", "oneway".
Condition parse_condition(std::string_view text);

enum class Verdict { Pass, Fail, Inconclusive, Advisory };
std::string_view to_string(Verdict v);

/// Site-1 efficient measurement followed by an outcome-conditioned
/// deterministic operation on site 2.
struct OneWayProtocol {
  LocalMeasurement measurement;
  std::vector<LocalChannel> corrections;
};

using TrialOperation = std::variant<LocalChannel, LocalMeasurement, OneWayProtocol>;

struct TrialInput {
  DensityOperator state;
  TrialOperation operation;
};

struct SuiteOptions {
  double tolerance = tol::violation;
  /// Margin allowance for optimizer-backed measures, whose values are
  /// lower bounds. Their exceedances are reported as advisory only.
  double optimizer_allowance = tol::optimizer_allowance;
  /// Rank of sampled states; 0 draws it uniformly from 1..d per trial.
  int state_rank = 0;
  /// Restrict sampled measurements to one Kraus term per outcome.
  bool efficient_only = false;
  bool parallel = true;
  int threads = 0;
};

struct Witness {
  int trial = 0;
  std::uint64_t trial_seed = 0;
  double margin = 0.0;
  TrialInput input;
};

struct MonotoneReport {
  std::string monotone;
  Condition condition = Condition::Deterministic;
  std::vector<int> dims;
  int trials = 0;
  std::uint64_t seed = 0;
  int evaluated = 0;
  int skipped = 0;
  /// Largest left-minus-right margin over evaluated trials.
  std::optional<double> worst_margin;
  /// Trials whose margin exceeded the threshold.
  int exceedances = 0;
  double threshold = 0.0;
  bool optimizer_backed = false;
  std::optional<Witness> witness;
  Verdict verdict = Verdict::Inconclusive;
};

/// The trial drawn for (master seed, trial index); independent of schedule.
TrialInput generate_trial(Condition condition, const HilbertFactorization& f,
                          std::uint64_t trial_seed, const SuiteOptions& options);

/// Left-minus-right side of the condition; throws Unsupported when the
/// measure cannot evaluate one of the states involved.
double condition_margin(const MonotoneHandle& h, Condition condition, const TrialInput& input);

MonotoneReport check_condition(const MonotoneHandle& h, Condition condition,
                               const std::vector<int>& dims, int trials, std::uint64_t seed,
                               const SuiteOptions& options = {});
MonotoneReport check_condition1(const MonotoneHandle& h, const std::vector<int>& dims, int trials,
                                std::uint64_t seed, const SuiteOptions& options = {});
MonotoneReport check_condition2(const MonotoneHandle& h, const std::vector<int>& dims, int trials,
                                std::uint64_t seed, const SuiteOptions& options = {});
MonotoneReport check_condition3(const MonotoneHandle& h, const std::vector<int>& dims, int trials,
                                std::uint64_t seed, const SuiteOptions& options = {});
MonotoneReport check_oneway_locc(const MonotoneHandle& h, const std::vector<int>& dims, int trials,
                                 std::uint64_t seed, const SuiteOptions& options = {});

/// Re-evaluates a stored witness.
double replay_margin(const MonotoneHandle& h, Condition condition, const Witness& w);

struct ScanReport {
  std::string monotone;
  std::vector<int> dims;
  int trials = 0;
  std::uint64_t seed = 0;
  double candidate_value = 0.0;
  std::optional<double> max_sampled;
  int evaluated = 0;
  int skipped = 0;
  int exceeding = 0;
  double threshold = 0.0;
  /// Sampled state with the largest value, kept only when it exceeds the
  /// candidate by more than the threshold.
  std::optional<DensityOperator> witness;
  std::optional<double> witness_value;
};

/// Samples states on the candidate's space looking for C > C(candidate).
ScanReport maximality_scan(const MonotoneHandle& h, const DensityOperator& candidate, int trials,
                           std::uint64_t seed, const SuiteOptions& options = {});

struct FilterOutcome {
  double probability = 0.0;
  std::optional<double> value;
};

struct FilteringReport {
  std::string monotone;
  int d1 = 0;
  std::vector<double> lambda;
  double initial_value = 0.0;
  std::vector<FilterOutcome> outcomes;
  /// min_q C(ρ_q) − C(ρ); positive means every outcome raised the measure.
  double min_margin = 0.0;
  double threshold = 0.0;
  bool condition3_respected = true;
  /// Set for Schmidt-vector functionals: all outcome values agree (1e-9).
  std::optional<bool> outcomes_equal;
};

/// Applies the cyclic filter to the maximally entangled state on [d1, d1]
/// and evaluates the measure before and after, outcome by outcome.
FilteringReport filtering_demo(const MonotoneHandle& h, int d1, const std::vector<double>& lambda,
                               const SuiteOptions& options = {});

io::Json to_json(const TrialInput& input);
TrialInput trial_input_from_json(const io::Json& j);
io::Json to_json(const MonotoneReport& r);
io::Json to_json(const ScanReport& r);
io::Json to_json(const FilteringReport& r);
/// Witness section of a report JSON parsed back for replay.
Witness witness_from_json(const io::Json& j);

/// Header plus one summary row per report.
std::string to_csv(const std::vector<MonotoneReport>& reports);

}  // namespace corrkit
