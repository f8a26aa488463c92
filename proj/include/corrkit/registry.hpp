#pragma once

#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "corrkit/bell.hpp"
#include "corrkit/state.hpp"

namespace corrkit {

/// A named measure C(ρ) with the conditions it is known to satisfy.
struct MonotoneHandle {
  std::string name;
  std::function<double(const DensityOperator&)> evaluate;
  /// Conditions (1: deterministic local operations, 2: on average under
  /// local measurements, 3: with probability one) the measure satisfies.
  std::set<int> claims;
  /// Value comes from a numerical optimizer and is only a lower bound.
  bool optimizer_backed = false;
  /// On pure bipartite states the value depends only on the Schmidt vector.
  bool schmidt_functional = false;
  /// Value on product states.
  double floor = 0.0;
};

/// Built-in handles: total mutual information, entanglement of formation
/// across site 1, Rényi entropies of the Schmidt vector for q in
/// {0, 0.5, 1, 2, 64}, and the CHSH Bell monotone.
std::vector<MonotoneHandle> monotone_registry();

/// Looks up a registry name or a parameterized form:
///   I | total_mutual_information
///   ef | entanglement_of_formation        (cut {1})
///   pairwise:X,Y                          (E_f of the two-site reduction)
///   bipartition:S1,S2,...                 (E_f across the given sites)
///   entropy:q=V                           (pure bipartite states only)
///   bell:CHSH
///   neg-I-fixture                         (−I, a deliberately broken measure)
/// Throws InvalidArgument for unknown names.
MonotoneHandle resolve_monotone(std::string_view name);

MonotoneHandle mutual_information_monotone();
MonotoneHandle formation_monotone(const SiteSet& cut, std::string name);
MonotoneHandle entropy_monotone(double q);
MonotoneHandle bell_monotone(const BellFunctional& f, const BellOptions& options = {});
MonotoneHandle negated(const MonotoneHandle& h, std::string name);

}  // namespace corrkit
