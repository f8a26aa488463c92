#pragma once

#include <string_view>

#include "corrkit/state.hpp"

namespace corrkit {

/// Σ_n S(ρ^(n)) − S(ρ) in nats. Needs at least two sites.
double total_mutual_information(const DensityOperator& rho);

/// How entanglement_of_formation obtained its value.
enum class EfRegime {
  TrivialSide,          // one side of the cut has dimension 1
  Pure,                 // entropy of the reduced state
  Product,              // ρ = ρ_A ⊗ ρ_B
  TwoQubit,             // Wootters concurrence formula
  MaximallyEntangled,   // mixture of orthogonally supported maximally entangled states
};
std::string_view to_string(EfRegime r);

struct EfResult {
  double value = 0.0;
  EfRegime regime = EfRegime::Pure;
};

/// Entanglement of formation across (cut | complement), in nats. Only exact
/// regimes are evaluated; anything else throws Unsupported rather than
/// falling back to a convex-roof heuristic.
EfResult entanglement_of_formation_detailed(const DensityOperator& rho, const SiteSet& cut);
double entanglement_of_formation(const DensityOperator& rho, const SiteSet& cut);

/// Wootters concurrence of a state on [2,2]. The closed form is standard
/// two-qubit theory (Wootters, PRL 80, 2245 (1998)).
double concurrence(const DensityOperator& rho);

/// True when the bipartite state ρ on [dA, dB] (dA <= dB, or swapped
/// internally) is Σ_q p_q |q̃⟩⟨q̃| with |q̃⟩ = Σ_i |i⟩⊗|q,i⟩/√dA for some
/// orthonormal families. Equivalent test on any orthonormal basis {v_a} of
/// the support: tr_B |v_a⟩⟨v_b| = δ_ab I/dA.
bool is_maximally_entangled_mixture(const DensityOperator& bipartite, double tolerance = 1e-8);

/// E_f of the two-site reduction ρ_{x,y}.
double pairwise_monotone(const DensityOperator& rho, int x, int y);

/// E_f across (part | complement).
double bipartition_monotone(const DensityOperator& rho, const SiteSet& part);

}  // namespace corrkit
