#include "corrkit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "corrkit/bell.hpp"
#include "corrkit/constructions.hpp"
#include "corrkit/harness.hpp"
#include "corrkit/io.hpp"
#include "corrkit/registry.hpp"

namespace corrkit::cli {
namespace {

using io::Json;

constexpr double kListSumTolerance = 1e-9;

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.empty()) throw InvalidArgument("empty list");
  return parts;
}

std::vector<int> parse_ints(const std::string& text, const char* what) {
  std::vector<int> values;
  for (const auto& part : split(text)) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size())
      throw InvalidArgument(std::string(what) + ": '" + part + "' is not an integer");
    values.push_back(v);
  }
  return values;
}

std::vector<double> parse_reals(const std::string& text, const char* what) {
  std::vector<double> values;
  for (const auto& part : split(text)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size() || !std::isfinite(v))
      throw InvalidArgument(std::string(what) + ": '" + part + "' is not a number");
    values.push_back(v);
  }
  return values;
}

// Probability list: entries >= 0 summing to 1 within 1e-9, renormalized so
// downstream constructors see an exact distribution.
std::vector<double> parse_probabilities(const std::string& text, const char* what) {
  std::vector<double> p = parse_reals(text, what);
  double sum = 0.0;
  for (double x : p) {
    if (x < 0.0) throw InvalidArgument(std::string(what) + ": entries must be >= 0");
    sum += x;
  }
  if (std::abs(sum - 1.0) > kListSumTolerance)
    throw InvalidArgument(std::string(what) + ": entries must sum to 1");
  for (double& x : p) x /= sum;
  return p;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("CORRKIT_SEED")) {
    const std::string text(env);
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(text, &used, 0);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size())
      throw InvalidArgument("CORRKIT_SEED is not an unsigned integer: '" + text + "'");
    return v;
  }
  throw InvalidArgument("a seed is required: pass --seed or set CORRKIT_SEED");
}

std::string fmt(double x, int precision = 10) {
  std::ostringstream os;
  os << std::setprecision(precision) << x;
  return os.str();
}

std::string join(const std::vector<int>& v, char sep = ',') {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
  return s;
}

void emit(const Json& j, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-")
    out << j.dump(2) << '\n';
  else
    io::write_file(path, j);
}

DensityOperator load_state(const std::string& path) { return io::density_from_json(io::read_file(path)); }

// Input files are validated up front so read failures map to kInvalidInput
// independently of what the command does afterwards.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

DensityOperator load_state_checked(const std::string& path) {
  try {
    return load_state(path);
  } catch (const std::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

struct EvalArgs {
  std::string state;
  std::vector<std::string> monotones;
  std::string out;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const DensityOperator rho = load_state_checked(a.state);
  Json rows = Json::array();
  out << std::left << std::setw(32) << "monotone" << "value\n";
  for (const auto& name : a.monotones) {
    const MonotoneHandle h = resolve_monotone(name);
    const double v = h.evaluate(rho);
    out << std::left << std::setw(32) << name << fmt(v) << '\n';
    rows.push_back(Json{{"monotone", name}, {"value", v}});
  }
  if (!a.out.empty()) {
    Json j;
    j["config"] = Json{{"command", "eval"}, {"state", a.state}, {"monotones", a.monotones}};
    j["values"] = std::move(rows);
    io::write_file(a.out, j);
  }
  return kOk;
}

struct ConstructArgs {
  std::string kind;
  std::string out;
  std::string spec;
  int d1 = 0, d2 = 0, blocks = 0;
  std::string p, dims, lambda;
};

int cmd_construct(const ConstructArgs& a, std::ostream& out) {
  Json state;
  if (a.kind == "mps") {
    MpsSpec spec;
    if (!a.spec.empty()) {
      spec = io::mps_spec_from_json(io::read_file(a.spec));
    } else {
      if (a.d1 < 1 || a.d2 < 1) throw InvalidArgument("mps needs --d1 and --d2 (or --spec)");
      spec.d1 = a.d1;
      spec.d2 = a.d2;
      spec.blocks = a.blocks > 0 ? a.blocks : 1;
      spec.p = a.p.empty() ? std::vector<double>(spec.blocks, 1.0 / spec.blocks)
                           : parse_probabilities(a.p, "--p");
    }
    state = io::to_json(build_mps(spec));
  } else if (a.kind == "npartite_max") {
    if (a.dims.empty()) throw InvalidArgument("npartite_max needs --dims");
    state = io::to_json(build_npartite_max(parse_ints(a.dims, "--dims")));
  } else if (a.kind == "bell") {
    state = io::to_json(build_npartite_max({2, 2}));
  } else if (a.kind == "ghz") {
    state = io::to_json(ghz_state(a.dims.empty() ? std::vector<int>{2, 2, 2} : parse_ints(a.dims, "--dims")));
  } else if (a.kind == "pure_schmidt") {
    if (a.lambda.empty()) throw InvalidArgument("pure_schmidt needs --lambda");
    state = io::to_json(pure_schmidt_state(parse_probabilities(a.lambda, "--lambda")));
  } else {
    throw InvalidArgument("unknown construction '" + a.kind +
                          "' (expected mps, npartite_max, bell, ghz, pure_schmidt)");
  }
  // Round-trip through the validating reader before anything is written.
  io::density_from_json(state);
  emit(state, a.out, out);
  return kOk;
}

struct CheckArgs {
  std::string condition;
  std::string monotone;
  std::string dims = "2,2";
  int trials = 100;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string csv;
  int threads = 0;
  double tolerance = tol::violation;
  double allowance = tol::optimizer_allowance;
  int rank = 0;
  bool pure = false;
  bool efficient = false;
  bool demo_filter = false;
  int d1 = 2;
  std::string lambda;
};

SuiteOptions suite_options(double tolerance, double allowance, int rank, bool efficient, int threads) {
  SuiteOptions o;
  o.tolerance = tolerance;
  o.optimizer_allowance = allowance;
  o.state_rank = rank;
  o.efficient_only = efficient;
  o.threads = threads;
  return o;
}

int cmd_filter_demo(const CheckArgs& a, const MonotoneHandle& h, std::ostream& out) {
  if (a.condition != "3") throw InvalidArgument("--demo-filter runs under condition 3");
  const std::vector<double> lambda = a.lambda.empty() ? std::vector<double>(a.d1, 1.0 / a.d1)
                                                      : parse_probabilities(a.lambda, "--lambda");
  const SuiteOptions o = suite_options(a.tolerance, a.allowance, 0, false, a.threads);
  const FilteringReport r = filtering_demo(h, a.d1, lambda, o);

  out << "filtering " << h.name << " d1=" << a.d1 << "\n";
  out << "initial value  " << fmt(r.initial_value) << "\n";
  out << std::left << std::setw(10) << "outcome" << std::setw(16) << "probability" << "value\n";
  for (std::size_t q = 0; q < r.outcomes.size(); ++q) {
    out << std::left << std::setw(10) << q << std::setw(16) << fmt(r.outcomes[q].probability)
        << (r.outcomes[q].value ? fmt(*r.outcomes[q].value) : std::string("-")) << '\n';
  }
  out << "min margin     " << fmt(r.min_margin) << "\n";
  out << "condition 3    " << (r.condition3_respected ? "respected" : "violated") << "\n";
  if (r.outcomes_equal) out << "outcomes equal " << (*r.outcomes_equal ? "yes" : "no") << "\n";

  if (!a.out.empty()) {
    Json j;
    j["config"] = Json{{"command", "check"},       {"condition", a.condition},
                       {"monotone", a.monotone},   {"demo_filter", true},
                       {"d1", a.d1},               {"lambda", lambda},
                       {"tolerance", a.tolerance}, {"optimizer_allowance", a.allowance}};
    j["report"] = to_json(r);
    io::write_file(a.out, j);
  }
  const bool ok = r.condition3_respected && r.outcomes_equal.value_or(true);
  return ok ? kOk : kViolation;
}

int cmd_check(const CheckArgs& a, std::ostream& out) {
  const MonotoneHandle h = resolve_monotone(a.monotone);
  if (a.demo_filter) return cmd_filter_demo(a, h, out);

  const Condition condition = parse_condition(a.condition);
  const std::vector<int> dims = parse_ints(a.dims, "--dims");
  const std::uint64_t seed = resolve_seed(a.seed);
  const int rank = a.pure ? 1 : a.rank;
  const SuiteOptions o = suite_options(a.tolerance, a.allowance, rank, a.efficient, a.threads);
  const MonotoneReport r = check_condition(h, condition, dims, a.trials, seed, o);

  out << std::left << std::setw(14) << "monotone" << r.monotone << '\n'
      << std::setw(14) << "condition" << to_string(r.condition) << '\n'
      << std::setw(14) << "dims" << join(r.dims) << '\n'
      << std::setw(14) << "trials" << r.trials << " (evaluated " << r.evaluated << ", skipped "
      << r.skipped << ")\n"
      << std::setw(14) << "seed" << r.seed << '\n'
      << std::setw(14) << "worst margin" << (r.worst_margin ? fmt(*r.worst_margin) : "-") << '\n'
      << std::setw(14) << "threshold" << fmt(r.threshold) << '\n'
      << std::setw(14) << "exceedances" << r.exceedances << '\n'
      << std::setw(14) << "verdict" << to_string(r.verdict) << '\n';
  if (r.verdict == Verdict::Fail && r.witness)
    out << "witness: trial " << r.witness->trial << " margin " << fmt(r.witness->margin, 17) << '\n';

  if (!a.out.empty()) {
    Json j;
    j["config"] = Json{{"command", "check"},
                       {"condition", std::string(to_string(condition))},
                       {"monotone", a.monotone},
                       {"dims", dims},
                       {"trials", a.trials},
                       {"seed", seed},
                       {"tolerance", a.tolerance},
                       {"optimizer_allowance", a.allowance},
                       {"state_rank", rank},
                       {"efficient_only", a.efficient}};
    j["report"] = to_json(r);
    io::write_file(a.out, j);
  }
  if (!a.csv.empty()) {
    std::ofstream f(a.csv, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write " + a.csv);
    f << to_csv({r});
  }
  switch (r.verdict) {
    case Verdict::Fail: return kViolation;
    case Verdict::Inconclusive: return kInconclusive;
    default: return kOk;
  }
}

struct ScanArgs {
  std::string monotone;
  std::string candidate;
  int trials = 1000;
  std::optional<std::uint64_t> seed;
  std::string out;
  int threads = 0;
  double tolerance = tol::violation;
  int rank = 0;
  bool pure = false;
};

int cmd_scan(const ScanArgs& a, std::ostream& out) {
  const DensityOperator candidate = load_state_checked(a.candidate);
  const MonotoneHandle h = resolve_monotone(a.monotone);
  const std::uint64_t seed = resolve_seed(a.seed);
  const int rank = a.pure ? 1 : a.rank;
  const SuiteOptions o = suite_options(a.tolerance, tol::optimizer_allowance, rank, false, a.threads);
  const ScanReport r = maximality_scan(h, candidate, a.trials, seed, o);

  out << std::left << std::setw(16) << "monotone" << r.monotone << '\n'
      << std::setw(16) << "dims" << join(r.dims) << '\n'
      << std::setw(16) << "candidate" << fmt(r.candidate_value) << '\n'
      << std::setw(16) << "max sampled" << (r.max_sampled ? fmt(*r.max_sampled) : "-") << '\n'
      << std::setw(16) << "evaluated" << r.evaluated << " (skipped " << r.skipped << ")\n"
      << std::setw(16) << "exceeding" << r.exceeding << '\n';

  if (!a.out.empty()) {
    Json j;
    j["config"] = Json{{"command", "scan"}, {"monotone", a.monotone}, {"candidate", a.candidate},
                       {"trials", a.trials}, {"seed", seed},          {"tolerance", a.tolerance},
                       {"state_rank", rank}};
    j["report"] = to_json(r);
    io::write_file(a.out, j);
  }
  if (r.evaluated == 0 || 2 * r.skipped > r.trials) return kInconclusive;
  return r.witness ? kViolation : kOk;
}

struct BellArgs {
  std::string state;
  std::string functional = "CHSH";
  int restarts = 20;
  int iterations = 500;
  double tolerance = 1e-9;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  std::string out;
};

int cmd_bell(const BellArgs& a, std::ostream& out) {
  const DensityOperator rho = load_state_checked(a.state);
  const BellFunctional f = a.functional == "CHSH"
                               ? BellFunctional::chsh()
                               : io::bell_functional_from_json(io::read_file(a.functional));
  BellOptions o;
  o.restarts = a.restarts;
  o.max_iterations = a.iterations;
  o.tolerance = a.tolerance;
  o.seed = resolve_seed(a.seed);
  o.threads = a.threads;
  const BellResult r = bell_value(rho, f, o);

  out << std::left << std::setw(16) << "functional" << f.name() << '\n'
      << std::setw(16) << "value" << fmt(r.value, 12) << '\n';
  if (f.local_bound()) out << std::setw(16) << "local bound" << fmt(*f.local_bound()) << '\n';
  out << std::setw(16) << "best restart" << r.best_restart << '\n'
      << std::setw(16) << "iterations" << r.iterations << '\n'
      << std::setw(16) << "converged" << (r.converged ? "yes" : "no") << '\n';
  if (r.possibly_not_converged) out << "note: the last restart still improved the best value\n";

  if (!a.out.empty()) {
    Json j;
    j["config"] = Json{{"command", "bell"},         {"state", a.state},
                       {"functional", a.functional}, {"restarts", a.restarts},
                       {"iterations", a.iterations}, {"tolerance", a.tolerance},
                       {"seed", o.seed}};
    j["result"] = Json{{"value", r.value},
                       {"best_restart", r.best_restart},
                       {"iterations", r.iterations},
                       {"converged", r.converged},
                       {"possibly_not_converged", r.possibly_not_converged},
                       {"restart_values", r.restart_values}};
    io::write_file(a.out, j);
  }
  return kOk;
}

struct ReductionArgs {
  std::string state;
  double tolerance = 1e-8;
  std::string out;
};

int cmd_reductions(const ReductionArgs& a, std::ostream& out) {
  const DensityOperator rho = load_state_checked(a.state);
  const ReductionReport r = check_reductions(rho, a.tolerance);
  out << std::left << std::setw(16) << "subset" << std::setw(8) << "dim" << std::setw(16)
      << "deviation" << "result\n";
  for (const auto& c : r.subsets)
    out << std::left << std::setw(16) << join(c.sites) << std::setw(8) << c.dim << std::setw(16)
        << fmt(c.deviation, 4) << (c.pass ? "pass" : "fail") << '\n';
  out << "purity forced  " << (r.purity_forced ? "yes" : "no") << '\n'
      << "pure           " << (r.is_pure ? "yes" : "no") << '\n'
      << "satisfied      " << (r.satisfied ? "yes" : "no") << '\n';
  if (!r.satisfied) out << "reason         " << r.failure_reason << '\n';
  if (!a.out.empty()) {
    Json j;
    j["config"] = Json{{"command", "reductions"}, {"state", a.state}, {"tolerance", a.tolerance}};
    j["report"] = io::to_json(r);
    io::write_file(a.out, j);
  }
  return r.satisfied ? kOk : kViolation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"corrkit: correlation monotones, local operations and property suites"};
  app.require_subcommand(1);

  EvalArgs eval;
  auto* c_eval = app.add_subcommand("eval", "Evaluate monotones on a state file");
  c_eval->add_option("state", eval.state, "State JSON")->required();
  c_eval->add_option("monotones", eval.monotones, "Monotone names")->required();
  c_eval->add_option("--out", eval.out, "Write values as JSON");

  ConstructArgs construct;
  auto* c_construct = app.add_subcommand("construct", "Write a constructed state as JSON");
  c_construct->add_option("kind", construct.kind, "mps | npartite_max | bell | ghz | pure_schmidt")
      ->required();
  c_construct->add_option("--out", construct.out, "Output path (stdout if omitted)");
  c_construct->add_option("--spec", construct.spec, "MpsSpec JSON file");
  c_construct->add_option("--d1", construct.d1);
  c_construct->add_option("--d2", construct.d2);
  c_construct->add_option("--Q", construct.blocks);
  c_construct->add_option("--p", construct.p, "Block weights, comma separated");
  c_construct->add_option("--dims", construct.dims, "Local dimensions, comma separated");
  c_construct->add_option("--lambda", construct.lambda, "Schmidt coefficients, comma separated");

  CheckArgs check;
  auto* c_check = app.add_subcommand("check", "Run a randomized condition suite");
  c_check->add_option("condition", check.condition, "1 | 2 | 3 | oneway")->required();
  c_check->add_option("monotone", check.monotone)->required();
  c_check->add_option("--dims", check.dims, "Local dimensions")->capture_default_str();
  c_check->add_option("--trials", check.trials)->capture_default_str()->check(CLI::PositiveNumber);
  c_check->add_option("--seed", check.seed, "Master seed (falls back to CORRKIT_SEED)");
  c_check->add_option("--out", check.out, "Report JSON path");
  c_check->add_option("--csv", check.csv, "Summary CSV path");
  c_check->add_option("--threads", check.threads, "Cap on worker threads")->check(CLI::NonNegativeNumber);
  c_check->add_option("--tol", check.tolerance, "Violation threshold")->capture_default_str();
  c_check->add_option("--allowance", check.allowance, "Threshold for optimizer-backed measures")
      ->capture_default_str();
  c_check->add_option("--rank", check.rank, "Rank of sampled states (0: random)");
  c_check->add_flag("--pure", check.pure, "Sample pure states");
  c_check->add_flag("--efficient", check.efficient, "One Kraus term per outcome");
  c_check->add_flag("--demo-filter", check.demo_filter, "Cyclic filter on the maximally entangled state");
  c_check->add_option("--d1", check.d1, "Local dimension for --demo-filter");
  c_check->add_option("--lambda", check.lambda, "Filter coefficients for --demo-filter");

  ScanArgs scan;
  auto* c_scan = app.add_subcommand("scan", "Search sampled states for values above a candidate");
  c_scan->add_option("monotone", scan.monotone)->required();
  c_scan->add_option("candidate", scan.candidate, "Candidate state JSON")->required();
  c_scan->add_option("--trials", scan.trials)->capture_default_str()->check(CLI::PositiveNumber);
  c_scan->add_option("--seed", scan.seed);
  c_scan->add_option("--out", scan.out);
  c_scan->add_option("--threads", scan.threads)->check(CLI::NonNegativeNumber);
  c_scan->add_option("--tol", scan.tolerance)->capture_default_str();
  c_scan->add_option("--rank", scan.rank);
  c_scan->add_flag("--pure", scan.pure);

  BellArgs bell;
  auto* c_bell = app.add_subcommand("bell", "See-saw lower bound on a Bell functional");
  c_bell->add_option("state", bell.state)->required();
  c_bell->add_option("--functional", bell.functional, "CHSH or a functional JSON file")
      ->capture_default_str();
  c_bell->add_option("--restarts", bell.restarts)->capture_default_str()->check(CLI::PositiveNumber);
  c_bell->add_option("--iters", bell.iterations)->capture_default_str()->check(CLI::PositiveNumber);
  c_bell->add_option("--tol", bell.tolerance)->capture_default_str();
  c_bell->add_option("--seed", bell.seed);
  c_bell->add_option("--threads", bell.threads)->check(CLI::NonNegativeNumber);
  c_bell->add_option("--out", bell.out);

  ReductionArgs red;
  auto* c_red = app.add_subcommand("reductions", "Check small reductions for maximal mixedness");
  c_red->add_option("state", red.state)->required();
  c_red->add_option("--tol", red.tolerance)->capture_default_str();
  c_red->add_option("--out", red.out);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (c_eval->parsed()) return cmd_eval(eval, out);
    if (c_construct->parsed()) return cmd_construct(construct, out);
    if (c_check->parsed()) return cmd_check(check, out);
    if (c_scan->parsed()) return cmd_scan(scan, out);
    if (c_bell->parsed()) return cmd_bell(bell, out);
    if (c_red->parsed()) return cmd_reductions(red, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const Unsupported& e) {
    err << "unsupported: " << e.what() << '\n';
    return kUnsupported;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace corrkit::cli
