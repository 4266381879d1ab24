#pragma once

#include <utility>
#include <vector>

#include "qent/linalg.hpp"
#include "qent/states.hpp"

namespace qent {

// Operator from a domain space into a two-factor product, first ⊗ second.
// υ: F → G⊗H has domain F, first G, second H; κ: G → F⊗H has domain G,
// first F, second H. Stored as a (first*second) x domain matrix.
struct AmplitudeDims {
  std::size_t domain;
  std::size_t first;
  std::size_t second;
};

class AmplitudeOperator {
 public:
  // Throws DimensionMismatch on a shape/dims disagreement and NotNormalized
  // when tr(m† m) is off from 1 by more than kDensityTol.
  AmplitudeOperator(Matrix m, AmplitudeDims dims);

  const Matrix& matrix() const noexcept { return matrix_; }
  AmplitudeDims dims() const noexcept { return dims_; }

 private:
  Matrix matrix_;
  AmplitudeDims dims_;
};

enum class CompoundClass { General, Standard, C, D, O };

// Density operator on G⊗H (G major) with its factor dimensions.
class CompoundState {
 public:
  CompoundState(DensityOperator omega, FactorDims dims, CompoundClass cls = CompoundClass::General);

  std::size_t dim_g() const noexcept { return dims_.g; }
  std::size_t dim_h() const noexcept { return dims_.h; }
  FactorDims dims() const noexcept { return dims_; }
  const DensityOperator& omega() const noexcept { return omega_; }
  const Matrix& matrix() const noexcept { return omega_.matrix(); }
  CompoundClass compound_class() const noexcept { return cls_; }

 private:
  DensityOperator omega_;
  FactorDims dims_;
  CompoundClass cls_;
};

// ω = υ υ† for υ: F → G⊗H.
CompoundState compound_from_amplitude(const AmplitudeOperator& upsilon);

// The entangling operator κ: G → F⊗H with κ[(f,h), g] = υ[(g,h), f]. This is
// the G-transposition of υ with J the complex conjugation of the
// computational basis of G, and the unitary freedom on F fixed to identity.
AmplitudeOperator entangling_from_amplitude(const AmplitudeOperator& upsilon);

// Rebuilds the compound density from κ: G → F⊗H, i.e. the operator ω with
// tr (B⊗A) ω = tr_G B̃ κ†(I⊗A)κ for all B, A.
CompoundState compound_from_entangling(const AmplitudeOperator& kappa);

// π_*(B) = tr_G[(B̃ ⊗ I) ω], B̃ the computational-basis transpose.
Matrix pi_star_eval(const CompoundState& w, const Matrix& b);

// π(A) = tr_H[(I ⊗ A) ω^{T_G}].
Matrix pi_eval(const CompoundState& w, const Matrix& a);

// Purification ϑ = Σ λ(n)^{1/2} e_n ⊗ e_n of ρ in its eigenbasis; G = H.
CompoundState standard_compound(const DensityOperator& rho);

// Amplitude vector ϑ of standard_compound, as a (dim*dim) x 1 matrix.
Matrix standard_amplitude(const DensityOperator& rho);

struct ProductTerm {
  double weight;
  DensityOperator sigma;  // on G
  DensityOperator rho;    // on H
};

// Separable mixture Σ μ(n) σ_n ⊗ ρ_n.
CompoundState c_compound(const std::vector<ProductTerm>& items);

// Σ μ(n) |n⟩⟨n| ⊗ ρ_n with dim G = ensemble size.
CompoundState d_compound(const Ensemble& e);

// d_compound restricted to pairwise-orthogonal ensembles; throws NotOrthogonal.
CompoundState o_compound(const Ensemble& e);

// (tr_H ω, tr_G ω).
std::pair<DensityOperator, DensityOperator> marginals(const CompoundState& w);

// dH x dH block ω_{mn} of ω expressed in the G basis given by
// the columns of `basis`: ω_{mn} = (⟨b_m| ⊗ I) ω (|b_n⟩ ⊗ I).
Matrix g_block(const CompoundState& w, const Matrix& basis, std::size_t m, std::size_t n);

}  // namespace qent
