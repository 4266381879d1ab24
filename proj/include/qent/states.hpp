#pragma once

#include <cstdint>
#include <vector>

#include "qent/linalg.hpp"
#include "qent/rng.hpp"

namespace qent {

inline constexpr double kDensityTol = 1e-9;
// λ_max at or above 1 - kPureThreshold marks a rank-one state.
inline constexpr double kPureThreshold = 1e-8;
// ‖ρ_m ρ_n‖_F at or below this counts as orthogonal.
inline constexpr double kOrthogonalityTol = 1e-9;

// Hermitian, positive semidefinite, unit-trace matrix. Only constructible
// through validate_density (or the library's own constructions, which
// validate on the way out).
class DensityOperator {
 public:
  std::size_t dim() const noexcept { return matrix_.rows(); }
  const Matrix& matrix() const noexcept { return matrix_; }
  // Spectrum, descending; computed on demand.
  EigenSystem eig() const { return hermitian_eig(matrix_); }
  bool is_pure() const;

 private:
  explicit DensityOperator(Matrix m) : matrix_(std::move(m)) {}
  friend DensityOperator validate_density(const Matrix& m);

  Matrix matrix_;
};

// Symmetrizes to (m + m†)/2, then checks Hermiticity, PSD and unit trace.
// Throws NonSquare, NotHermitian, NotPSD or TraceNotOne.
DensityOperator validate_density(const Matrix& m);

struct EnsembleItem {
  double weight;
  DensityOperator state;
};

class Ensemble {
 public:
  // Throws BadWeights for an empty list, negative weights or a sum off by
  // more than kDensityTol; DimensionMismatch when the states disagree in size.
  explicit Ensemble(std::vector<EnsembleItem> items);

  const std::vector<EnsembleItem>& items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  std::size_t dim() const noexcept { return items_.front().state.dim(); }
  bool all_pure() const noexcept { return all_pure_; }
  bool pairwise_orthogonal() const noexcept { return pairwise_orthogonal_; }

 private:
  std::vector<EnsembleItem> items_;
  bool all_pure_ = false;
  bool pairwise_orthogonal_ = false;
};

// Spectral decomposition into weighted rank-one eigenprojectors, weights
// descending, zero eigenvalues (support cutoff) dropped.
Ensemble schatten_decompose(const DensityOperator& rho);

// Σ μ(n) ρ_n.
DensityOperator ensemble_mix(const Ensemble& e);

// Normalized G G† with G a dim x rank matrix of complex Gaussians.
DensityOperator random_density(std::size_t dim, std::size_t rank, Rng& rng);
DensityOperator random_density(std::size_t dim, std::size_t rank, std::uint64_t seed);

// |ψ⟩⟨ψ| / ⟨ψ|ψ⟩ for a nonzero column vector.
DensityOperator pure_state(const Matrix& psi);

DensityOperator maximally_mixed(std::size_t dim);

}  // namespace qent
