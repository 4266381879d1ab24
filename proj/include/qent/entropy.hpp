#pragma once

#include <limits>

#include "qent/entangle.hpp"
#include "qent/states.hpp"

namespace qent {

// Entropy in nats. Infinite values carry finite == false; `nats` is then +inf
// and must not be used in arithmetic.
struct EntropyValue {
  double nats = 0.0;
  bool finite = true;

  static EntropyValue infinite() { return {std::numeric_limits<double>::infinity(), false}; }
  static EntropyValue of(double v) { return {v, true}; }
};

// Support-leak threshold: tr(ω P_ker φ) above this makes S(ω, φ) infinite.
inline constexpr double kSupportLeakTol = 1e-10;
// Tolerance for the internal cross-check of mutual entropy against
// S(σ) + S(ρ) - S(ω).
inline constexpr double kMutualCrossCheckTol = 1e-8;

double von_neumann_of_spectrum(std::span<const double> values);

EntropyValue von_neumann(const DensityOperator& rho);

// S(ω, φ) = tr ω (ln ω - ln φ), each logarithm taken in its own eigenbasis.
EntropyValue relative_entropy(const DensityOperator& w, const DensityOperator& phi);

// Same, with both spectra supplied; used when φ's eigensystem is known in
// closed form (products of marginals).
EntropyValue relative_entropy(const EigenSystem& w, const EigenSystem& phi);

// S(ω, σ⊗ρ) for the marginals σ, ρ of ω. Throws NumericalInconsistency if the
// relative-entropy value and S(σ)+S(ρ)-S(ω) disagree beyond kMutualCrossCheckTol.
EntropyValue mutual_entropy(const CompoundState& w);

enum class Verify { No, Yes };

// 2 S(ρ). With Verify::Yes also evaluates the mutual entropy of the standard
// compound state and throws NumericalInconsistency on disagreement.
EntropyValue q_entropy(const DensityOperator& rho, Verify verify = Verify::No);

struct ConditionalEntropies {
  EntropyValue q_conditional;    // S̃(σ) - I(ω), nonnegative
  EntropyValue disentanglement;  // S(σ) - I(ω), may be negative
};

ConditionalEntropies conditional_and_disentanglement(const CompoundState& w);

}  // namespace qent
