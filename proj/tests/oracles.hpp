#pragma once

// Independent reference computations for the test suites. Nothing here calls
// the eigensolver or the entropy routines under test.

#include <cmath>
#include <initializer_list>
#include <utility>
#include <vector>

#include "qent/linalg.hpp"

namespace oracle {

using qent::Complex;
using qent::Matrix;

// Eigenvalues (high, low) of [[a, b], [conj(b), d]] from the quadratic formula.
inline std::pair<double, double> eig2x2(double a, double d, Complex b) {
  const double mid = 0.5 * (a + d);
  const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
  return {mid + rad, mid - rad};
}

// Σ_k (I ⊗ ⟨k|) m (I ⊗ |k⟩), built from basis-vector products.
inline Matrix partial_trace_keep_g(const Matrix& m, std::size_t dg, std::size_t dh) {
  Matrix out(dg, dg);
  for (std::size_t k = 0; k < dh; ++k) {
    Matrix ek(dh, 1);
    ek(k, 0) = 1.0;
    const Matrix lift = qent::kron(Matrix::identity(dg), ek);
    out += lift.adjoint() * m * lift;
  }
  return out;
}

inline Matrix partial_trace_keep_h(const Matrix& m, std::size_t dg, std::size_t dh) {
  Matrix out(dh, dh);
  for (std::size_t k = 0; k < dg; ++k) {
    Matrix ek(dg, 1);
    ek(k, 0) = 1.0;
    const Matrix lift = qent::kron(ek, Matrix::identity(dh));
    out += lift.adjoint() * m * lift;
  }
  return out;
}

// -Σ p ln p over a probability vector, with 0 ln 0 = 0.
inline double shannon(std::initializer_list<double> p) {
  double s = 0.0;
  for (double v : p)
    if (v > 0.0) s -= v * std::log(v);
  return s;
}

inline double binary_entropy(double p) { return shannon({p, 1.0 - p}); }

// Qubit depolarizing ρ ↦ (1-p)ρ + p I/2 at input I/2:
// the output-side standard compound has spectrum (1 - 3p/4, p/4, p/4, p/4).
inline double depolarizing_info_q(double p) {
  return 2.0 * std::log(2.0) - shannon({1.0 - 0.75 * p, 0.25 * p, 0.25 * p, 0.25 * p});
}

// Orthogonal pure inputs map to spectra (1 - p/2, p/2); output average is I/2.
inline double depolarizing_info_d(double p) { return std::log(2.0) - binary_entropy(0.5 * p); }

}  // namespace oracle
