#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qent/entangle.hpp"
#include "qent/linalg.hpp"
#include "qent/states.hpp"

namespace qent {

inline constexpr double kCompletenessTol = 1e-9;

// Completely positive trace-preserving map H0 → H in Kraus form:
// Λ_*(ρ0) = Σ K_i ρ0 K_i†, Σ K_i† K_i = I.
class KrausChannel {
 public:
  std::size_t dim_in() const noexcept { return dim_in_; }
  std::size_t dim_out() const noexcept { return dim_out_; }
  const std::vector<Matrix>& kraus() const noexcept { return kraus_; }

 private:
  KrausChannel(std::vector<Matrix> kraus, std::size_t dim_in, std::size_t dim_out)
      : kraus_(std::move(kraus)), dim_in_(dim_in), dim_out_(dim_out) {}
  friend KrausChannel make_channel(std::vector<Matrix> kraus);

  std::vector<Matrix> kraus_;
  std::size_t dim_in_;
  std::size_t dim_out_;
};

// Throws ShapeMismatch (empty list or inconsistent shapes) or IncompleteKraus
// (‖Σ K†K - I‖_F > kCompletenessTol).
KrausChannel make_channel(std::vector<Matrix> kraus);

// Σ K†K - I; its norm is the completeness residual.
Matrix completeness_defect(std::span<const Matrix> kraus);

DensityOperator apply_state(const KrausChannel& ch, const DensityOperator& rho0);

// Unnormalized action on an arbitrary operator; skips density validation.
Matrix apply_matrix(const KrausChannel& ch, const Matrix& x);

// Heisenberg picture Λ(A) = Σ K† A K.
Matrix apply_heisenberg(const KrausChannel& ch, const Matrix& a);

// (I ⊗ Λ)_* on the H factor of a compound state.
CompoundState apply_to_output_factor(const KrausChannel& ch, const CompoundState& w0);

// (K ⊗ I)_* on the G (probe) factor of a compound state.
CompoundState apply_to_probe_factor(const KrausChannel& ch, const CompoundState& w0);

// Y: H0 ⊗ F+ → H with K_i = Y(· ⊗ |i⟩), dim F+ = number of Kraus operators.
struct Isometry {
  Matrix y;
  std::size_t dim_in;
  std::size_t dim_noise;
  std::size_t dim_out;
};

Isometry dilate(const KrausChannel& ch);

// tr_{F+} Y†Y, which equals I for a valid dilation.
Matrix noise_traced_gram(const Isometry& iso);

// Y (ρ0 ⊗ I+) Y†.
Matrix apply_dilation(const Isometry& iso, const Matrix& rho0);

KrausChannel identity_channel(std::size_t d);
// Throws BadParam unless U is unitary within kCompletenessTol.
KrausChannel unitary_channel(const Matrix& u);
// Qubit map ρ ↦ (1-p) ρ + p I/2, p ∈ [0, 1].
KrausChannel depolarizing_channel(double p);
KrausChannel amplitude_damping_channel(double gamma);
KrausChannel phase_damping_channel(double lambda);
// Kraus blocks of a seeded random isometry C^{d_in} → C^{d_out} ⊗ C^{n_kraus}.
KrausChannel random_channel(std::size_t dim_in, std::size_t dim_out, std::size_t n_kraus, std::uint64_t seed);

// Named families: identity(d), unitary(theta, phi, lambda) as a qubit U3
// rotation, depolarizing(p), amplitude_damping(gamma), phase_damping(lambda),
// random(d_in, d_out, n_kraus, seed). Throws UnknownChannel or BadParam.
KrausChannel channel_zoo(std::string_view name, std::span<const double> params);

}  // namespace qent
