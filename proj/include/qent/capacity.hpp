#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "qent/channels.hpp"
#include "qent/entangle.hpp"
#include "qent/parallel.hpp"
#include "qent/states.hpp"

namespace qent {

// Optimizer slack quoted for numerically searched capacities.
inline constexpr double kCapacityTolerance = 2e-3;
// Eigenvalues closer than this share a degenerate block in the o-search.
inline constexpr double kDegeneracyGap = 1e-9;
// Base slack of the I_q ≥ I_d ≥ I_o ordering check.
inline constexpr double kOrderingTol = 1e-6;

struct OptimizerConfig {
  std::size_t restarts = 8;
  std::size_t max_iters = 400;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  // Pure states per ensemble in the d-search; 0 selects dim_in².
  std::size_t ensemble_size_cap = 0;
  // Extra slack added to kOrderingTol by verify_ordering.
  double slack = 1e-6;
  Execution execution = Execution::Parallel;
};

// Throws BadParam for restarts == 0, tol <= 0, or a nonzero cap below dim_in.
void validate_config(const OptimizerConfig& cfg, std::size_t dim_in);

enum class InfoKind { Q, D, O };

std::string_view to_string(InfoKind kind);
// "q", "d" or "o"; throws BadParam otherwise.
InfoKind parse_info_kind(std::string_view s);

struct InfoReport {
  InfoKind kind = InfoKind::Q;
  double value = 0.0;
  // Input state achieving `value` (the given ρ0 for info_*, the maximizer for capacity).
  std::optional<DensityOperator> input;
  // Optimal input decomposition for kinds d and o.
  std::optional<Ensemble> ensemble;
  // Input compound state for kind q (the standard entanglement of `input`).
  std::optional<CompoundState> compound;
  std::size_t iterations = 0;
  bool converged = true;
};

// Mutual entropy of (I⊗Λ)_* applied to the standard compound state of ρ0.
InfoReport info_q(const DensityOperator& rho0, const KrausChannel& ch);

// Maximum of Σ μ(n) S(Λ_*(ρ_n) ‖ Λ_*(ρ0)) over pure-state decompositions of ρ0.
InfoReport info_d(const DensityOperator& rho0, const KrausChannel& ch, const OptimizerConfig& cfg);

// Same objective over orthogonal (eigen-)decompositions of ρ0.
InfoReport info_o(const DensityOperator& rho0, const KrausChannel& ch, const OptimizerConfig& cfg);

InfoReport info(InfoKind kind, const DensityOperator& rho0, const KrausChannel& ch, const OptimizerConfig& cfg);

// Supremum of the kind's information over input states.
InfoReport capacity(const KrausChannel& ch, InfoKind kind, const OptimizerConfig& cfg);

// Σ μ(n) S(Λ_*(ρ_n) ‖ Λ_*(Σ μ ρ)) for an ensemble, the d/o objective.
double ensemble_information(const Ensemble& e, const KrausChannel& ch);

struct OrderingReport {
  double i_q = 0.0;
  double i_d = 0.0;
  double i_o = 0.0;
  double tolerance = 0.0;
  bool pass = false;

  // Throws OrderingViolated when pass is false.
  void require() const;
};

OrderingReport verify_ordering(const KrausChannel& ch, const DensityOperator& rho0, const OptimizerConfig& cfg);

}  // namespace qent
