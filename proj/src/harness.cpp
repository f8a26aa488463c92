#include "corrkit/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <sstream>

#include <omp.h>

#include "corrkit/constructions.hpp"
#include "corrkit/rng.hpp"
#include "corrkit/sampling.hpp"

namespace corrkit {
namespace {

// Runs fn(t) for every trial. The parallel path spreads trials over OpenMP
// threads; the serial path is the reference the tests compare against.
// Results are written by trial index, so both produce identical output.
template <typename Fn>
void for_each_trial(int trials, const SuiteOptions& options, Fn&& fn) {
  if (!options.parallel) {
    for (int t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::vector<std::exception_ptr> errors(trials);
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int t = 0; t < trials; ++t) {
    try {
      fn(t);
    } catch (...) {
      errors[t] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

LocalChannel sample_trial_channel(const HilbertFactorization& f, int site, Rng& rng) {
  const int dn = f.dim(site);
  const int out = rng.uniform_int(1, dn + 2);
  const int min_kraus = ceil_div(dn, out);
  const int n_kraus = rng.uniform_int(min_kraus, std::max(min_kraus, dn * dn));
  return sample_local_channel(f, site, out, n_kraus, rng);
}

LocalMeasurement sample_trial_measurement(const HilbertFactorization& f, int site,
                                          bool efficient_only, Rng& rng) {
  const int dn = f.dim(site);
  const int total_terms = rng.uniform_int(1, dn * dn);
  const int n_outcomes = efficient_only ? total_terms : rng.uniform_int(1, total_terms);
  std::vector<int> terms(n_outcomes, 1);
  for (int extra = 0; extra < total_terms - n_outcomes; ++extra)
    ++terms[rng.uniform_int(0, n_outcomes - 1)];
  std::vector<int> out_dims(n_outcomes);
  int rows = 0;
  for (int q = 0; q < n_outcomes; ++q) {
    out_dims[q] = rng.uniform_int(1, dn + 2);
    rows += terms[q] * out_dims[q];
  }
  // Grow output dimensions round-robin until the Kraus set can be complete.
  for (int q = 0; rows < dn; q = (q + 1) % n_outcomes) {
    ++out_dims[q];
    rows += terms[q];
  }
  return sample_local_measurement(f, site, terms, out_dims, rng);
}

OneWayProtocol sample_oneway(const HilbertFactorization& f, Rng& rng) {
  if (f.sites() < 2) throw InvalidArgument("one-way LOCC check needs at least two sites");
  const int d1 = f.dim(1);
  const int n_outcomes = rng.uniform_int(1, d1 * d1);
  int out1 = rng.uniform_int(1, d1 + 2);
  while (n_outcomes * out1 < d1) ++out1;
  LocalMeasurement m = sample_local_measurement(f, 1, std::vector<int>(n_outcomes, 1),
                                                std::vector<int>(n_outcomes, out1), rng);
  const HilbertFactorization after = f.with_dim(1, out1);
  const int d2 = after.dim(2);
  const int out2 = rng.uniform_int(1, d2 + 2);
  const int min_kraus = ceil_div(d2, out2);
  std::vector<LocalChannel> corrections;
  for (int q = 0; q < n_outcomes; ++q) {
    const int n_kraus = rng.uniform_int(min_kraus, std::max(min_kraus, d2 * d2));
    corrections.push_back(sample_local_channel(after, 2, out2, n_kraus, rng));
  }
  return {std::move(m), std::move(corrections)};
}

std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::Deterministic: return "1";
    case Condition::Average: return "2";
    case Condition::ProbabilityOne: return "3";
    case Condition::OneWayLocc: return "oneway";
  }
  return "?";
}

Condition parse_condition(std::string_view text) {
  if (text == "1") return Condition::Deterministic;
  if (text == "2") return Condition::Average;
  if (text == "3") return Condition::ProbabilityOne;
  if (text == "oneway") return Condition::OneWayLocc;
  throw InvalidArgument("unknown condition '" + std::string(text) + "' (expected 1, 2, 3 or oneway)");
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::Advisory: return "advisory";
  }
  return "?";
}

TrialInput generate_trial(Condition condition, const HilbertFactorization& f,
                          std::uint64_t trial_seed, const SuiteOptions& options) {
  Rng rng(trial_seed);
  const int d = f.total();
  const int rank = options.state_rank > 0 ? std::min(options.state_rank, d) : rng.uniform_int(1, d);
  DensityOperator state = sample_state(f, rank, rng);
  switch (condition) {
    case Condition::Deterministic: {
      const int site = rng.uniform_int(1, f.sites());
      return {std::move(state), sample_trial_channel(f, site, rng)};
    }
    case Condition::Average:
    case Condition::ProbabilityOne: {
      const int site = rng.uniform_int(1, f.sites());
      return {std::move(state), sample_trial_measurement(f, site, options.efficient_only, rng)};
    }
    case Condition::OneWayLocc:
      return {std::move(state), sample_oneway(f, rng)};
  }
  throw InvalidArgument("unknown condition");
}

double condition_margin(const MonotoneHandle& h, Condition condition, const TrialInput& input) {
  const double before = h.evaluate(input.state);
  switch (condition) {
    case Condition::Deterministic: {
      const auto& ch = std::get<LocalChannel>(input.operation);
      return h.evaluate(apply_channel(input.state, ch)) - before;
    }
    case Condition::Average: {
      const auto& m = std::get<LocalMeasurement>(input.operation);
      double average = 0.0;
      for (const auto& o : measure(input.state, m))
        if (o.state) average += o.probability * h.evaluate(*o.state);
      return average - before;
    }
    case Condition::ProbabilityOne: {
      const auto& m = std::get<LocalMeasurement>(input.operation);
      double lowest = std::numeric_limits<double>::infinity();
      for (const auto& o : measure(input.state, m))
        if (o.state) lowest = std::min(lowest, h.evaluate(*o.state));
      return lowest - before;
    }
    case Condition::OneWayLocc: {
      const auto& protocol = std::get<OneWayProtocol>(input.operation);
      const auto outcomes = measure(input.state, protocol.measurement);
      Matrix mixed;
      std::optional<HilbertFactorization> f;
      for (std::size_t q = 0; q < outcomes.size(); ++q) {
        if (!outcomes[q].state) continue;
        const DensityOperator corrected = apply_channel(*outcomes[q].state, protocol.corrections.at(q));
        if (mixed.size() == 0) {
          mixed = outcomes[q].probability * corrected.matrix();
          f = corrected.factorization();
        } else {
          mixed += outcomes[q].probability * corrected.matrix();
        }
      }
      return h.evaluate(DensityOperator::from_trusted(*f, std::move(mixed))) - before;
    }
  }
  throw InvalidArgument("unknown condition");
}

MonotoneReport check_condition(const MonotoneHandle& h, Condition condition,
                               const std::vector<int>& dims, int trials, std::uint64_t seed,
                               const SuiteOptions& options) {
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  const HilbertFactorization f(dims);
  if (condition == Condition::OneWayLocc && f.sites() < 2)
    throw InvalidArgument("one-way LOCC check needs at least two sites");

  struct TrialResult {
    bool skipped = false;
    double margin = 0.0;
  };
  std::vector<TrialResult> results(trials);
  for_each_trial(trials, options, [&](int t) {
    const TrialInput input = generate_trial(condition, f, derive_seed(seed, t), options);
    try {
      results[t].margin = condition_margin(h, condition, input);
    } catch (const Unsupported&) {
      results[t].skipped = true;
    }
  });

  MonotoneReport report;
  report.monotone = h.name;
  report.condition = condition;
  report.dims = dims;
  report.trials = trials;
  report.seed = seed;
  report.optimizer_backed = h.optimizer_backed;
  report.threshold = h.optimizer_backed ? options.optimizer_allowance : options.tolerance;
  int worst_trial = -1;
  for (int t = 0; t < trials; ++t) {
    if (results[t].skipped) {
      ++report.skipped;
      continue;
    }
    ++report.evaluated;
    if (results[t].margin > report.threshold) ++report.exceedances;
    if (worst_trial < 0 || results[t].margin > results[worst_trial].margin) worst_trial = t;
  }
  if (worst_trial >= 0) {
    const std::uint64_t trial_seed = derive_seed(seed, worst_trial);
    report.worst_margin = results[worst_trial].margin;
    report.witness = Witness{worst_trial, trial_seed, results[worst_trial].margin,
                             generate_trial(condition, f, trial_seed, options)};
  }
  if (!h.optimizer_backed && report.exceedances > 0)
    report.verdict = Verdict::Fail;
  else if (report.evaluated == 0 || 2 * report.skipped > trials)
    report.verdict = Verdict::Inconclusive;
  else if (report.exceedances > 0)
    report.verdict = Verdict::Advisory;
  else
    report.verdict = Verdict::Pass;
  return report;
}

MonotoneReport check_condition1(const MonotoneHandle& h, const std::vector<int>& dims, int trials,
                                std::uint64_t seed, const SuiteOptions& options) {
  return check_condition(h, Condition::Deterministic, dims, trials, seed, options);
}

MonotoneReport check_condition2(const MonotoneHandle& h, const std::vector<int>& dims, int trials,
                                std::uint64_t seed, const SuiteOptions& options) {
  return check_condition(h, Condition::Average, dims, trials, seed, options);
}

MonotoneReport check_condition3(const MonotoneHandle& h, const std::vector<int>& dims, int trials,
                                std::uint64_t seed, const SuiteOptions& options) {
  return check_condition(h, Condition::ProbabilityOne, dims, trials, seed, options);
}

MonotoneReport check_oneway_locc(const MonotoneHandle& h, const std::vector<int>& dims, int trials,
                                 std::uint64_t seed, const SuiteOptions& options) {
  return check_condition(h, Condition::OneWayLocc, dims, trials, seed, options);
}

double replay_margin(const MonotoneHandle& h, Condition condition, const Witness& w) {
  return condition_margin(h, condition, w.input);
}

ScanReport maximality_scan(const MonotoneHandle& h, const DensityOperator& candidate, int trials,
                           std::uint64_t seed, const SuiteOptions& options) {
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  const HilbertFactorization& f = candidate.factorization();
  ScanReport report;
  report.monotone = h.name;
  report.dims = f.dims();
  report.trials = trials;
  report.seed = seed;
  report.candidate_value = h.evaluate(candidate);
  report.threshold = h.optimizer_backed ? options.optimizer_allowance : options.tolerance;

  struct Sample {
    bool skipped = false;
    double value = 0.0;
  };
  std::vector<Sample> samples(trials);
  auto draw = [&](int t) {
    Rng rng(derive_seed(seed, t));
    const int rank = options.state_rank > 0 ? std::min(options.state_rank, f.total())
                                            : rng.uniform_int(1, f.total());
    return sample_state(f, rank, rng);
  };
  for_each_trial(trials, options, [&](int t) {
    try {
      samples[t].value = h.evaluate(draw(t));
    } catch (const Unsupported&) {
      samples[t].skipped = true;
    }
  });

  int best = -1;
  for (int t = 0; t < trials; ++t) {
    if (samples[t].skipped) {
      ++report.skipped;
      continue;
    }
    ++report.evaluated;
    if (samples[t].value > report.candidate_value + report.threshold) ++report.exceeding;
    if (best < 0 || samples[t].value > samples[best].value) best = t;
  }
  if (best >= 0) {
    report.max_sampled = samples[best].value;
    if (samples[best].value > report.candidate_value + report.threshold) {
      report.witness = draw(best);
      report.witness_value = samples[best].value;
    }
  }
  return report;
}

FilteringReport filtering_demo(const MonotoneHandle& h, int d1, const std::vector<double>& lambda,
                               const SuiteOptions& options) {
  const DensityOperator rho(build_npartite_max({d1, d1}));
  const LocalMeasurement filter = cyclic_filter(d1, lambda);
  FilteringReport report;
  report.monotone = h.name;
  report.d1 = d1;
  report.lambda = lambda;
  report.threshold = h.optimizer_backed ? options.optimizer_allowance : options.tolerance;
  report.initial_value = h.evaluate(rho);

  double lowest = std::numeric_limits<double>::infinity();
  double highest = -std::numeric_limits<double>::infinity();
  for (const auto& o : measure(rho, filter)) {
    FilterOutcome out;
    out.probability = o.probability;
    if (o.state) {
      try {
        out.value = h.evaluate(*o.state);
        lowest = std::min(lowest, *out.value);
        highest = std::max(highest, *out.value);
      } catch (const Unsupported&) {
      }
    }
    report.outcomes.push_back(out);
  }
  if (!std::isfinite(lowest)) throw Unsupported("measure could not evaluate any filtered outcome");
  report.min_margin = lowest - report.initial_value;
  report.condition3_respected = report.min_margin <= report.threshold;
  if (h.schmidt_functional) report.outcomes_equal = (highest - lowest) <= 1e-9;
  return report;
}

// ---------------------------------------------------------------------------
// Serialization

io::Json to_json(const TrialInput& input) {
  io::Json j;
  j["state"] = io::to_json(input.state);
  io::Json op;
  if (const auto* ch = std::get_if<LocalChannel>(&input.operation)) {
    op["kind"] = "channel";
    op["channel"] = io::to_json(*ch);
  } else if (const auto* m = std::get_if<LocalMeasurement>(&input.operation)) {
    op["kind"] = "measurement";
    op["measurement"] = io::to_json(*m);
  } else {
    const auto& p = std::get<OneWayProtocol>(input.operation);
    op["kind"] = "oneway";
    op["measurement"] = io::to_json(p.measurement);
    io::Json corrections = io::Json::array();
    for (const auto& c : p.corrections) corrections.push_back(io::to_json(c));
    op["corrections"] = std::move(corrections);
  }
  j["operation"] = std::move(op);
  return j;
}

TrialInput trial_input_from_json(const io::Json& j) {
  DensityOperator state = io::density_from_json(j.at("state"));
  const io::Json& op = j.at("operation");
  const std::string kind = op.at("kind").get<std::string>();
  if (kind == "channel") return {std::move(state), io::channel_from_json(op.at("channel"))};
  if (kind == "measurement") return {std::move(state), io::measurement_from_json(op.at("measurement"))};
  if (kind == "oneway") {
    std::vector<LocalChannel> corrections;
    for (const auto& c : op.at("corrections")) corrections.push_back(io::channel_from_json(c));
    return {std::move(state),
            OneWayProtocol{io::measurement_from_json(op.at("measurement")), std::move(corrections)}};
  }
  throw InvalidArgument("unknown witness operation kind '" + kind + "'");
}

io::Json to_json(const MonotoneReport& r) {
  io::Json j;
  j["monotone"] = r.monotone;
  j["condition"] = std::string(to_string(r.condition));
  j["dims"] = r.dims;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["threshold"] = r.threshold;
  j["optimizer_backed"] = r.optimizer_backed;
  j["evaluated"] = r.evaluated;
  j["skipped"] = r.skipped;
  j["exceedances"] = r.exceedances;
  j["worst_margin"] = r.worst_margin ? io::Json(*r.worst_margin) : io::Json(nullptr);
  j["verdict"] = std::string(to_string(r.verdict));
  if (r.witness) {
    io::Json w;
    w["trial"] = r.witness->trial;
    w["trial_seed"] = r.witness->trial_seed;
    w["margin"] = r.witness->margin;
    w["input"] = to_json(r.witness->input);
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Witness witness_from_json(const io::Json& j) {
  return Witness{j.at("trial").get<int>(), j.at("trial_seed").get<std::uint64_t>(),
                 j.at("margin").get<double>(), trial_input_from_json(j.at("input"))};
}

io::Json to_json(const ScanReport& r) {
  io::Json j;
  j["monotone"] = r.monotone;
  j["dims"] = r.dims;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["threshold"] = r.threshold;
  j["candidate_value"] = r.candidate_value;
  j["max_sampled"] = r.max_sampled ? io::Json(*r.max_sampled) : io::Json(nullptr);
  j["evaluated"] = r.evaluated;
  j["skipped"] = r.skipped;
  j["exceeding"] = r.exceeding;
  j["witness"] = r.witness ? io::to_json(*r.witness) : io::Json(nullptr);
  j["witness_value"] = r.witness_value ? io::Json(*r.witness_value) : io::Json(nullptr);
  return j;
}

io::Json to_json(const FilteringReport& r) {
  io::Json j;
  j["monotone"] = r.monotone;
  j["d1"] = r.d1;
  j["lambda"] = r.lambda;
  j["threshold"] = r.threshold;
  j["initial_value"] = r.initial_value;
  io::Json outcomes = io::Json::array();
  for (const auto& o : r.outcomes) {
    io::Json e;
    e["probability"] = o.probability;
    e["value"] = o.value ? io::Json(*o.value) : io::Json(nullptr);
    outcomes.push_back(std::move(e));
  }
  j["outcomes"] = std::move(outcomes);
  j["min_margin"] = r.min_margin;
  j["condition3_respected"] = r.condition3_respected;
  j["outcomes_equal"] = r.outcomes_equal ? io::Json(*r.outcomes_equal) : io::Json(nullptr);
  return j;
}

std::string to_csv(const std::vector<MonotoneReport>& reports) {
  std::ostringstream os;
  os << "monotone,condition,dims,trials,seed,evaluated,skipped,exceedances,worst_margin,threshold,verdict\n";
  for (const auto& r : reports) {
    std::string dims;
    for (std::size_t i = 0; i < r.dims.size(); ++i) dims += (i ? "x" : "") + std::to_string(r.dims[i]);
    os << r.monotone << ',' << to_string(r.condition) << ',' << dims << ',' << r.trials << ','
       << r.seed << ',' << r.evaluated << ',' << r.skipped << ',' << r.exceedances << ','
       << (r.worst_margin ? format_double(*r.worst_margin) : "") << ','
       << format_double(r.threshold) << ',' << to_string(r.verdict) << '\n';
  }
  return os.str();
}

}  // namespace corrkit
