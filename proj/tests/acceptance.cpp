// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "corrkit/bell.hpp"
#include "corrkit/constructions.hpp"
#include "corrkit/harness.hpp"
#include "corrkit/monotones.hpp"
#include "corrkit/registry.hpp"
#include "corrkit/rng.hpp"
#include "corrkit/sampling.hpp"
#include "corrkit/schmidt.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace corrkit;

namespace {

/// Outcome of one criterion. `detail` names the first offending case or the
/// worst deviation seen.
struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string dims_str(const std::vector<int>& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "x" : "") + std::to_string(d[i]);
  return s;
}

Outcome maximal_mutual_information() {
  Outcome o;
  double worst = 0.0;
  for (int d : {2, 3, 4}) {
    const double err = std::abs(total_mutual_information(DensityOperator(build_npartite_max({d, d}))) -
                                2.0 * std::log(static_cast<double>(d)));
    worst = std::max(worst, err);
    if (err > 1e-9) o.fail("d=" + std::to_string(d) + " off by " + num(err));
  }
  const double err = std::abs(total_mutual_information(DensityOperator(build_npartite_max({2, 2, 4}))) -
                              (2.0 * std::log(2.0) + std::log(4.0)));
  worst = std::max(worst, err);
  if (err > 1e-9) o.fail("2x2x4 off by " + num(err));
  if (o.pass) o.detail = "max error " + num(worst);
  return o;
}

Outcome mutual_information_suites() {
  Outcome o;
  const auto h = resolve_monotone("I");
  double worst = -INFINITY;
  for (const auto& dims : {std::vector<int>{2, 2}, std::vector<int>{2, 3}, std::vector<int>{2, 2, 2}})
    for (auto c : {Condition::Deterministic, Condition::Average, Condition::ProbabilityOne}) {
      const auto r = check_condition(h, c, dims, 500, 20240901);
      if (r.worst_margin) worst = std::max(worst, *r.worst_margin);
      if (r.exceedances != 0 || r.evaluated != 500)
        o.fail(std::string("condition ") + std::string(to_string(c)) + " on " + dims_str(dims) + ": " +
               std::to_string(r.exceedances) + " violations");
    }
  if (o.pass) o.detail = "9 suites x 500 trials, worst margin " + num(worst);
  return o;
}

Outcome maximality() {
  Outcome o;
  const auto bell = fixtures::bell_state();
  const auto i_scan = maximality_scan(resolve_monotone("I"), bell, 1000, 8);
  if (i_scan.exceeding != 0) o.fail("I scan found " + std::to_string(i_scan.exceeding) + " states above candidate");
  SuiteOptions pure;
  pure.state_rank = 1;
  const auto ef_scan = maximality_scan(resolve_monotone("ef"), bell, 1000, 8, pure);
  if (ef_scan.exceeding != 0 || ef_scan.evaluated == 0)
    o.fail("E_f scan found " + std::to_string(ef_scan.exceeding) + " states above candidate");
  for (int d2 : {2, 4})
    for (int q = 1; q <= 2; ++q) {
      if (q * 2 > d2) continue;
      MpsSpec spec{2, d2, q, std::vector<double>(q, 1.0 / q)};
      const auto rho = build_mps(spec);
      const double ei = std::abs(total_mutual_information(rho) - i_scan.candidate_value);
      const double ef = std::abs(entanglement_of_formation(rho, {1}) - ef_scan.candidate_value);
      if (ei > 1e-9 || ef > 1e-9) o.fail("mps 2x" + std::to_string(d2) + " Q=" + std::to_string(q) + " misses candidate");
    }
  if (o.pass)
    o.detail = "max sampled I " + num(*i_scan.max_sampled) + ", E_f " + num(*ef_scan.max_sampled);
  return o;
}

Outcome collapse() {
  Outcome o;
  double worst = 0.0;
  int cases = 0;
  for (int d1 = 1; d1 <= 3; ++d1)
    for (int d2 = d1; d2 <= 9; ++d2)
      for (int q = 1; q <= 3 && q * d1 <= d2; ++q) {
        Rng rng(static_cast<std::uint64_t>(100 * d1 + 10 * d2 + q));
        std::vector<double> p(q);
        double total = 0.0;
        for (auto& x : p) total += (x = 0.1 + rng.uniform());
        for (auto& x : p) x /= total;
        const MpsSpec spec{d1, d2, q, p};
        const auto out = apply_channel(build_mps(spec), collapse_channel(spec));
        const auto target = build_mps(MpsSpec{d1, d2, 1, {1.0}});
        const double err = fixtures::frobenius(out.matrix(), target.matrix());
        worst = std::max(worst, err);
        ++cases;
        const auto psi = as_pure(out);
        if (err >= 1e-10 || !psi) {
          o.fail("d1=" + std::to_string(d1) + " d2=" + std::to_string(d2) + " Q=" + std::to_string(q));
          continue;
        }
        const auto schmidt = schmidt_decompose(*psi, {1}).coefficients;
        for (double c : schmidt.coeffs())
          if (std::abs(c - 1.0 / d1) >= 1e-10)
            o.fail("non-uniform Schmidt vector, d1=" + std::to_string(d1) + " d2=" + std::to_string(d2) + " c=" + num(c));
      }
  if (o.pass) o.detail = std::to_string(cases) + " specs, max error " + num(worst);
  return o;
}

Outcome filter() {
  Outcome o;
  double worst = 0.0;
  for (int d1 : {2, 3}) {
    const DensityOperator max_ent(build_npartite_max({d1, d1}));
    Rng rng(static_cast<std::uint64_t>(d1));
    for (int k = 0; k < 20; ++k) {
      std::vector<double> lambda(d1);
      double total = 0.0;
      for (auto& x : lambda) total += (x = rng.uniform() + 1e-3);
      for (auto& x : lambda) x /= total;
      std::vector<double> sorted = lambda;
      std::sort(sorted.rbegin(), sorted.rend());
      for (const auto& out : measure(max_ent, cyclic_filter(d1, lambda))) {
        const double ep = std::abs(out.probability - 1.0 / d1);
        worst = std::max(worst, ep);
        const auto psi = out.state ? as_pure(*out.state) : std::nullopt;
        if (ep >= 1e-10 || !psi) {
          o.fail("d1=" + std::to_string(d1) + " probability off by " + num(ep));
          continue;
        }
        const auto c = schmidt_decompose(*psi, {1}).coefficients;
        for (int i = 0; i < d1; ++i) {
          const double ec = std::abs((i < c.rank() ? c[i] : 0.0) - sorted[i]);
          worst = std::max(worst, ec);
          if (ec >= 1e-10) o.fail("d1=" + std::to_string(d1) + " Schmidt vector off by " + num(ec));
        }
      }
    }
  }
  if (o.pass) o.detail = "40 filters, max error " + num(worst);
  return o;
}

Outcome dilation() {
  Outcome o;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto c = fixtures::random_measurement_case(seed);
    const Dilation dil = dilate_measurement(c.measurement);
    const auto direct = measure(c.state, c.measurement);
    const auto readout = measure(apply_channel(c.state, dil.flagged), dil.readout);
    if (direct.size() != readout.size()) {
      o.fail("seed " + std::to_string(seed) + ": outcome count differs");
      continue;
    }
    for (std::size_t q = 0; q < direct.size(); ++q) {
      const double ep = std::abs(direct[q].probability - readout[q].probability);
      worst = std::max(worst, ep);
      if (ep >= 1e-10 || direct[q].state.has_value() != readout[q].state.has_value()) {
        o.fail("seed " + std::to_string(seed) + ": probability differs");
        continue;
      }
      if (!direct[q].state) continue;
      const auto back = undo_dilation(*readout[q].state, c.measurement, dil, static_cast<int>(q));
      const double es = back.factorization() == direct[q].state->factorization()
                            ? fixtures::frobenius(back.matrix(), direct[q].state->matrix())
                            : INFINITY;
      worst = std::max(worst, es);
      if (es >= 1e-10) o.fail("seed " + std::to_string(seed) + ": post-state differs");
    }
  }
  if (o.pass) o.detail = "100 measurements, max error " + num(worst);
  return o;
}

Outcome majorization() {
  Outcome o;
  Rng rng(77);
  double worst = -INFINITY;
  for (int k = 0; k < 500; ++k) {
    const int d = rng.uniform_int(2, 6);
    std::vector<double> a(d);
    double total = 0.0;
    for (auto& x : a) total += (x = std::pow(rng.uniform(), 3.0));
    for (auto& x : a) x /= total;
    // Random T-transforms move weight towards the mean, so a majorizes b.
    std::vector<double> b = a;
    for (int t = rng.uniform_int(1, 4); t > 0; --t) {
      const int i = rng.uniform_int(0, d - 1), j = rng.uniform_int(0, d - 1);
      const double s = rng.uniform();
      const double bi = b[i], bj = b[j];
      b[i] = s * bi + (1.0 - s) * bj;
      b[j] = s * bj + (1.0 - s) * bi;
    }
    const SchmidtVector la(a), mu(b);
    if (!majorizes(la, mu)) {
      o.fail("pair " + std::to_string(k) + " not recognised as majorizing");
      continue;
    }
    for (double q : {0.0, 0.5, 1.0, 2.0, 64.0}) {
      const double gap = entropy_family(la, q) - entropy_family(mu, q);
      worst = std::max(worst, gap);
      if (gap > 1e-9) o.fail("pair " + std::to_string(k) + " q=" + num(q) + " gap " + num(gap));
    }
  }
  if (o.pass) o.detail = "500 pairs, largest s(l)-s(m) " + num(worst);
  return o;
}

Outcome reductions() {
  Outcome o;
  const auto star = check_reductions(DensityOperator(build_npartite_max({2, 2, 4})));
  if (!star.satisfied) o.fail("2x2x4 maximal state rejected: " + star.failure_reason);
  for (const auto& c : star.subsets)
    if (!c.pass) o.fail("2x2x4 subset fails");
  const auto product = check_reductions(fixtures::zero_state({2, 2, 2, 2}));
  if (product.satisfied) o.fail("2x2x2x2 product state accepted");
  if (o.pass) o.detail = std::to_string(star.subsets.size()) + " subsets pass; product rejected";
  return o;
}

Outcome bell() {
  Outcome o;
  const double tsirelson = 2.0 * std::sqrt(2.0);
  const auto chsh = BellFunctional::chsh();
  const auto bell_state = fixtures::bell_state();
  const auto zero = fixtures::zero_state({2, 2});
  const auto start = std::chrono::steady_clock::now();
  const auto rb = bell_value(bell_state, chsh);
  const auto r0 = bell_value(zero, chsh);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (rb.value < tsirelson - 1e-3 || rb.value > tsirelson + 1e-6) o.fail("Bell state value " + num(rb.value));
  if (std::abs(r0.value - 2.0) > 1e-6) o.fail("|00> value " + num(r0.value));
  // The grid covers the optimal observables exactly for these two states.
  const double gb = oracle::chsh_grid(bell_state.matrix());
  const double g0 = oracle::chsh_grid(zero.matrix());
  if (std::abs(rb.value - gb) > 1e-3 || rb.value < gb - 1e-6) o.fail("Bell state disagrees with grid " + num(gb));
  if (std::abs(r0.value - g0) > 1e-6) o.fail("|00> disagrees with grid " + num(g0));
  if (secs >= 5.0) o.fail("see-saw took " + num(secs) + " s");
  if (o.pass)
    o.detail = "Bell " + std::to_string(rb.value) + ", |00> " + std::to_string(r0.value) + ", 2x20 restarts " +
               num(secs) + " s";
  return o;
}

Outcome invariance() {
  Outcome o;
  Rng rng(2718);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const int a = rng.uniform_int(1, 3), b = rng.uniform_int(1, 4);
    const std::vector<int> target{rng.uniform_int(a, 5), rng.uniform_int(b, 7)};
    const HilbertFactorization f({a, b});
    const bool pure = k % 2 == 0;
    const auto rho = pure ? DensityOperator(sample_pure_state(f, rng))
                          : sample_state(f, rng.uniform_int(1, f.total()), rng);
    const auto moved = relabel_embed(rho, target);
    const double ei = std::abs(total_mutual_information(moved) - total_mutual_information(rho));
    worst = std::max(worst, ei);
    if (ei > 1e-9) o.fail("I changed by " + num(ei) + " embedding into " + dims_str(target));
    if (!pure) continue;
    const auto before = schmidt_decompose(*as_pure(rho), {1}).coefficients;
    const auto after_psi = as_pure(moved);
    if (!after_psi) {
      o.fail("embedded pure state is not pure");
      continue;
    }
    const auto after = schmidt_decompose(*after_psi, {1}).coefficients;
    const int n = std::max(before.rank(), after.rank());
    for (int i = 0; i < n; ++i) {
      const double e = std::abs((i < before.rank() ? before[i] : 0.0) - (i < after.rank() ? after[i] : 0.0));
      worst = std::max(worst, e);
      if (e > 1e-9) o.fail("Schmidt vector changed embedding into " + dims_str(target));
    }
  }
  if (o.pass) o.detail = "100 states, max change " + num(worst);
  return o;
}

Outcome determinism() {
  Outcome o;
  const auto i = resolve_monotone("I");
  SuiteOptions serial;
  serial.parallel = false;
  SuiteOptions threaded;
  threaded.threads = 4;
  const std::vector<std::function<std::string(const SuiteOptions&)>> suites{
      [&](const SuiteOptions& opt) { return to_json(check_condition1(i, {2, 3}, 100, 11, opt)).dump(); },
      [&](const SuiteOptions& opt) { return to_json(check_condition2(i, {2, 2, 2}, 100, 11, opt)).dump(); },
      [&](const SuiteOptions& opt) { return to_json(check_condition3(i, {3, 2}, 100, 11, opt)).dump(); },
      [&](const SuiteOptions& opt) { return to_json(check_oneway_locc(i, {2, 2}, 100, 11, opt)).dump(); },
      [&](const SuiteOptions& opt) {
        return to_json(check_condition1(resolve_monotone("neg-I-fixture"), {2, 2}, 50, 11, opt)).dump();
      },
      [&](const SuiteOptions& opt) {
        return to_json(maximality_scan(i, fixtures::bell_state(), 200, 11, opt)).dump();
      },
  };
  for (std::size_t k = 0; k < suites.size(); ++k) {
    const auto a = suites[k](SuiteOptions{});
    if (a != suites[k](SuiteOptions{}) || a != suites[k](serial) || a != suites[k](threaded))
      o.fail("suite " + std::to_string(k) + " report differs between runs");
  }
  BellOptions b1, b2;
  b2.parallel = false;
  if (bell_value(fixtures::bell_state(), BellFunctional::chsh(), b1).value !=
      bell_value(fixtures::bell_state(), BellFunctional::chsh(), b2).value)
    o.fail("see-saw value depends on schedule");
  if (o.pass) o.detail = std::to_string(suites.size()) + " suites identical over 4 runs each";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"maximal mutual information", maximal_mutual_information},
      {"condition suites for I", mutual_information_suites},
      {"maximality scans", maximality},
      {"block collapse", collapse},
      {"cyclic filter", filter},
      {"measurement dilation", dilation},
      {"majorization and entropies", majorization},
      {"small reductions", reductions},
      {"Bell see-saw", bell},
      {"relabel invariance", invariance},
      {"determinism", determinism},
  };
  const std::vector<double> budget{1.0, 60.0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.fail(std::string("threw: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget[k] > 0 && secs >= budget[k]) o.fail("took " + num(secs) + " s, budget " + num(budget[k]) + " s");
    if (!o.pass) ++failed;
    std::printf("%s  %2zu  %-28s %7.3fs  %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), secs,
                o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed;
}
