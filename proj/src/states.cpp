#include "qent/states.hpp"

#include <cmath>
#include <string>

#include "qent/error.hpp"

namespace qent {

bool DensityOperator::is_pure() const { return eig().values.front() >= 1.0 - kPureThreshold; }

DensityOperator validate_density(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::NonSquare, "density matrix must be square");
  const double asym = distance(m, m.adjoint());
  if (asym > kDensityTol * std::max(1.0, m.frobenius_norm())) {
    throw Error(ErrorKind::NotHermitian, "||m - m^H||_F = " + std::to_string(asym));
  }
  Matrix sym = (m + m.adjoint()) * 0.5;
  const EigenSystem eig = hermitian_eig(sym);
  if (eig.values.back() < -kDensityTol) {
    throw Error(ErrorKind::NotPSD, "minimum eigenvalue " + std::to_string(eig.values.back()));
  }
  const Complex tr = sym.trace();
  if (std::abs(tr - 1.0) > kDensityTol) {
    throw Error(ErrorKind::TraceNotOne, "trace " + std::to_string(tr.real()));
  }
  return DensityOperator(std::move(sym));
}

Ensemble::Ensemble(std::vector<EnsembleItem> items) : items_(std::move(items)) {
  if (items_.empty()) throw Error(ErrorKind::BadWeights, "empty ensemble");
  double total = 0.0;
  for (const auto& item : items_) {
    if (!(item.weight >= 0.0) || !std::isfinite(item.weight)) {
      throw Error(ErrorKind::BadWeights, "weight " + std::to_string(item.weight));
    }
    if (item.state.dim() != items_.front().state.dim()) {
      throw Error(ErrorKind::DimensionMismatch, "ensemble states differ in dimension");
    }
    total += item.weight;
  }
  if (std::abs(total - 1.0) > kDensityTol) {
    throw Error(ErrorKind::BadWeights, "weights sum to " + std::to_string(total));
  }
  all_pure_ = true;
  for (const auto& item : items_) all_pure_ = all_pure_ && item.state.is_pure();
  pairwise_orthogonal_ = true;
  for (std::size_t m = 0; m < items_.size() && pairwise_orthogonal_; ++m)
    for (std::size_t n = m + 1; n < items_.size(); ++n) {
      const double overlap = (items_[m].state.matrix() * items_[n].state.matrix()).frobenius_norm();
      if (overlap > kOrthogonalityTol) {
        pairwise_orthogonal_ = false;
        break;
      }
    }
}

Ensemble schatten_decompose(const DensityOperator& rho) {
  const EigenSystem eig = rho.eig();
  const double cutoff = kSupportCutoff * eig.values.front();
  std::vector<EnsembleItem> items;
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    if (eig.values[k] <= cutoff) continue;
    const Matrix v = eig.vectors.col(k);
    items.push_back({eig.values[k], validate_density(v * v.adjoint())});
  }
  return Ensemble(std::move(items));
}

DensityOperator ensemble_mix(const Ensemble& e) {
  Matrix sum(e.dim(), e.dim());
  for (const auto& item : e.items()) sum += item.state.matrix() * item.weight;
  return validate_density(sum);
}

DensityOperator random_density(std::size_t dim, std::size_t rank, Rng& rng) {
  if (dim == 0 || rank == 0 || rank > dim) {
    throw Error(ErrorKind::BadRank, "rank " + std::to_string(rank) + " for dim " + std::to_string(dim));
  }
  const Matrix g = rng.gaussian_matrix(dim, rank);
  Matrix gg = g * g.adjoint();
  gg *= 1.0 / gg.trace().real();
  return validate_density(gg);
}

DensityOperator random_density(std::size_t dim, std::size_t rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(dim, rank, rng);
}

DensityOperator pure_state(const Matrix& psi) {
  if (psi.cols() != 1) throw Error(ErrorKind::ShapeMismatch, "pure state needs a column vector");
  const double len2 = psi.frobenius_norm() * psi.frobenius_norm();
  if (len2 <= 0.0) throw Error(ErrorKind::NotNormalized, "zero vector");
  return validate_density((psi * psi.adjoint()) * (1.0 / len2));
}

DensityOperator maximally_mixed(std::size_t dim) {
  return validate_density(Matrix::identity(dim) * (1.0 / static_cast<double>(dim)));
}

}  // namespace qent
