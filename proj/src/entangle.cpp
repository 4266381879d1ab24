#include "qent/entangle.hpp"

#include <cmath>
#include <string>

#include "qent/error.hpp"

namespace qent {

namespace {

void require_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": expected " + std::to_string(want) + ", got " + std::to_string(got));
  }
}

// |n⟩⟨n| ⊗ ρ_n summed with weights; shared by the d and o constructions.
Matrix block_diagonal(const Ensemble& e) {
  const std::size_t dg = e.size();
  const std::size_t dh = e.dim();
  Matrix omega(dg * dh, dg * dh);
  for (std::size_t n = 0; n < dg; ++n) {
    const auto& item = e.items()[n];
    for (std::size_t k = 0; k < dh; ++k)
      for (std::size_t l = 0; l < dh; ++l) omega(n * dh + k, n * dh + l) = item.weight * item.state.matrix()(k, l);
  }
  return omega;
}

}  // namespace

AmplitudeOperator::AmplitudeOperator(Matrix m, AmplitudeDims dims) : matrix_(std::move(m)), dims_(dims) {
  if (dims_.domain == 0 || dims_.first == 0 || dims_.second == 0 || matrix_.cols() != dims_.domain ||
      matrix_.rows() != dims_.first * dims_.second) {
    throw Error(ErrorKind::DimensionMismatch, "amplitude operator shape " + std::to_string(matrix_.rows()) + "x" +
                                                  std::to_string(matrix_.cols()) + " does not match its dims");
  }
  const double hs = matrix_.frobenius_norm();
  if (std::abs(hs * hs - 1.0) > kDensityTol) {
    throw Error(ErrorKind::NotNormalized, "tr(m^H m) = " + std::to_string(hs * hs));
  }
}

CompoundState::CompoundState(DensityOperator omega, FactorDims dims, CompoundClass cls)
    : omega_(std::move(omega)), dims_(dims), cls_(cls) {
  if (dims_.g == 0 || dims_.h == 0) throw Error(ErrorKind::DimensionMismatch, "factor dims must be positive");
  require_dim(omega_.dim(), dims_.g * dims_.h, "compound state side");
}

CompoundState compound_from_amplitude(const AmplitudeOperator& upsilon) {
  const Matrix& v = upsilon.matrix();
  return CompoundState(validate_density(v * v.adjoint()), {upsilon.dims().first, upsilon.dims().second});
}

AmplitudeOperator entangling_from_amplitude(const AmplitudeOperator& upsilon) {
  const auto [df, dg, dh] = upsilon.dims();
  const Matrix& v = upsilon.matrix();
  Matrix kappa(df * dh, dg);
  for (std::size_t g = 0; g < dg; ++g)
    for (std::size_t h = 0; h < dh; ++h)
      for (std::size_t f = 0; f < df; ++f) kappa(f * dh + h, g) = v(g * dh + h, f);
  return AmplitudeOperator(std::move(kappa), {dg, df, dh});
}

CompoundState compound_from_entangling(const AmplitudeOperator& kappa) {
  const auto [dg, df, dh] = kappa.dims();
  const Matrix& k = kappa.matrix();
  Matrix omega(dg * dh, dg * dh);
  for (std::size_t g1 = 0; g1 < dg; ++g1)
    for (std::size_t h1 = 0; h1 < dh; ++h1)
      for (std::size_t g2 = 0; g2 < dg; ++g2)
        for (std::size_t h2 = 0; h2 < dh; ++h2) {
          Complex s = 0.0;
          for (std::size_t f = 0; f < df; ++f) s += k(f * dh + h1, g1) * std::conj(k(f * dh + h2, g2));
          omega(g1 * dh + h1, g2 * dh + h2) = s;
        }
  return CompoundState(validate_density(omega), {dg, dh});
}

Matrix pi_star_eval(const CompoundState& w, const Matrix& b) {
  if (!b.is_square()) throw Error(ErrorKind::DimensionMismatch, "B must be square");
  require_dim(b.rows(), w.dim_g(), "pi_* argument");
  return partial_trace(kron(b.transpose(), Matrix::identity(w.dim_h())) * w.matrix(), w.dims(), Keep::H);
}

Matrix pi_eval(const CompoundState& w, const Matrix& a) {
  if (!a.is_square()) throw Error(ErrorKind::DimensionMismatch, "A must be square");
  require_dim(a.rows(), w.dim_h(), "pi argument");
  return partial_trace(kron(Matrix::identity(w.dim_g()), a) * partial_transpose_g(w.matrix(), w.dims()), w.dims(),
                       Keep::G);
}

Matrix standard_amplitude(const DensityOperator& rho) {
  const std::size_t d = rho.dim();
  const EigenSystem eig = rho.eig();
  const double cutoff = kSupportCutoff * eig.values.front();
  Matrix theta(d * d, 1);
  for (std::size_t n = 0; n < d; ++n) {
    if (eig.values[n] <= cutoff) continue;
    const double amp = std::sqrt(eig.values[n]);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) theta(i * d + j, 0) += amp * eig.vectors(i, n) * eig.vectors(j, n);
  }
  return theta;
}

CompoundState standard_compound(const DensityOperator& rho) {
  const Matrix theta = standard_amplitude(rho);
  Matrix omega = theta * theta.adjoint();
  // Dropped sub-cutoff eigenvalues leave a trace deficit of order 1e-12.
  omega *= 1.0 / omega.trace().real();
  return CompoundState(validate_density(omega), {rho.dim(), rho.dim()}, CompoundClass::Standard);
}

CompoundState c_compound(const std::vector<ProductTerm>& items) {
  if (items.empty()) throw Error(ErrorKind::BadWeights, "empty separable mixture");
  const std::size_t dg = items.front().sigma.dim();
  const std::size_t dh = items.front().rho.dim();
  double total = 0.0;
  Matrix omega(dg * dh, dg * dh);
  for (const auto& item : items) {
    require_dim(item.sigma.dim(), dg, "sigma_n dimension");
    require_dim(item.rho.dim(), dh, "rho_n dimension");
    if (!(item.weight >= 0.0) || !std::isfinite(item.weight)) {
      throw Error(ErrorKind::BadWeights, "weight " + std::to_string(item.weight));
    }
    total += item.weight;
    omega += kron(item.sigma.matrix(), item.rho.matrix()) * item.weight;
  }
  if (std::abs(total - 1.0) > kDensityTol) throw Error(ErrorKind::BadWeights, "weights sum to " + std::to_string(total));
  return CompoundState(validate_density(omega), {dg, dh}, CompoundClass::C);
}

CompoundState d_compound(const Ensemble& e) {
  return CompoundState(validate_density(block_diagonal(e)), {e.size(), e.dim()}, CompoundClass::D);
}

CompoundState o_compound(const Ensemble& e) {
  if (!e.pairwise_orthogonal()) throw Error(ErrorKind::NotOrthogonal, "ensemble states overlap");
  return CompoundState(validate_density(block_diagonal(e)), {e.size(), e.dim()}, CompoundClass::O);
}

std::pair<DensityOperator, DensityOperator> marginals(const CompoundState& w) {
  return {validate_density(partial_trace(w.matrix(), w.dims(), Keep::G)),
          validate_density(partial_trace(w.matrix(), w.dims(), Keep::H))};
}

Matrix g_block(const CompoundState& w, const Matrix& basis, std::size_t m, std::size_t n) {
  require_dim(basis.rows(), w.dim_g(), "G basis");
  const Matrix bm = kron(basis.col(m), Matrix::identity(w.dim_h()));
  const Matrix bn = kron(basis.col(n), Matrix::identity(w.dim_h()));
  return bm.adjoint() * w.matrix() * bn;
}

}  // namespace qent
