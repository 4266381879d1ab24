#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qent {

using Complex = std::complex<double>;

// Dense complex matrix, row-major. Entries are checked finite on construction.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> values);
  static Matrix diagonal(std::initializer_list<double> values);
  // Column vector (n x 1).
  static Matrix column(std::span<const Complex> values);
  static Matrix column(std::initializer_list<Complex> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  std::span<const Complex> entries() const noexcept { return data_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix adjoint() const;
  Matrix transpose() const;
  Matrix conj() const;
  Complex trace() const;
  double frobenius_norm() const;
  // Column c as an n x 1 matrix.
  Matrix col(std::size_t c) const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(Complex scalar);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
  friend Matrix operator*(Complex s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

// Frobenius norm of a - b; shapes must agree.
double distance(const Matrix& a, const Matrix& b);

// Kronecker product, left factor major: (a ⊗ b)[(i,k),(j,l)] = a[i,j] b[k,l].
Matrix kron(const Matrix& a, const Matrix& b);

struct EigenSystem {
  std::vector<double> values;  // descending
  Matrix vectors;              // unitary, column k pairs with values[k]
};

// Cyclic complex Jacobi. The input is symmetrized to (a + a†)/2 after the
// Hermiticity check (relative tolerance kHermitianTol).
EigenSystem hermitian_eig(const Matrix& a);

inline constexpr double kHermitianTol = 1e-9;
// Eigenvalues at or below kSupportCutoff * λ_max count as exact zeros.
inline constexpr double kSupportCutoff = 1e-12;
// Negative eigenvalues below -kPsdFloor * λ_max reject a PSD input.
inline constexpr double kPsdFloor = 1e-9;

enum class SupportFunc { Log, Sqrt };

// f applied to the strictly positive part of the spectrum; the kernel maps to 0.
Matrix matrix_func_on_support(const Matrix& a, SupportFunc f);

// Same, reusing an already computed eigensystem of a PSD matrix.
Matrix matrix_func_on_support(const EigenSystem& eig, SupportFunc f);

enum class Keep { G, H };

struct FactorDims {
  std::size_t g;
  std::size_t h;
};

// w acts on G ⊗ H (G major). Keep::G traces out H, Keep::H traces out G.
Matrix partial_trace(const Matrix& w, FactorDims dims, Keep keep);

// Transpose of the G factor in the computational basis.
Matrix partial_transpose_g(const Matrix& w, FactorDims dims);

// V D V† from an eigensystem with the given (possibly modified) values.
Matrix reconstruct(const Matrix& vectors, std::span<const double> values);

// Columns orthonormalized by modified Gram-Schmidt. Requires rows >= cols
// and full column rank.
Matrix orthonormalize_columns(const Matrix& m);

}  // namespace qent
