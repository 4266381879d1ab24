#include "qent/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qent/error.hpp"

namespace qent {

namespace {

void require_finite(std::span<const Complex> data) {
  for (const auto& z : data) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorKind::NonFinite, "matrix entry is NaN or Inf");
    }
  }
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorKind::ShapeMismatch, "matrix dimensions must be positive");
  }
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorKind::ShapeMismatch, "matrix dimensions must be positive");
  }
  if (data_.size() != rows * cols) {
    throw Error(ErrorKind::ShapeMismatch, "entry count " + std::to_string(data_.size()) +
                                              " does not match " + std::to_string(rows) + "x" +
                                              std::to_string(cols));
  }
  require_finite(data_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  if (rows_ == 0 || cols_ == 0) {
    throw Error(ErrorKind::ShapeMismatch, "matrix dimensions must be positive");
  }
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorKind::ShapeMismatch, "ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  require_finite(data_);
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  require_finite(m.data_);
  return m;
}

Matrix Matrix::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

Matrix Matrix::column(std::span<const Complex> values) {
  return Matrix(values.size(), 1, std::vector<Complex>(values.begin(), values.end()));
}

Matrix Matrix::column(std::initializer_list<Complex> values) {
  return column(std::span<const Complex>(values.begin(), values.size()));
}

Matrix Matrix::adjoint() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

Matrix Matrix::conj() const {
  Matrix out = *this;
  for (auto& z : out.data_) z = std::conj(z);
  return out;
}

Complex Matrix::trace() const {
  if (!is_square()) throw Error(ErrorKind::NonSquare, "trace of non-square matrix");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

Matrix Matrix::col(std::size_t c) const {
  Matrix out(rows_, 1);
  for (std::size_t r = 0; r < rows_; ++r) out(r, 0) = (*this)(r, c);
  return out;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same_shape(*this, other, "matrix sum");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same_shape(*this, other, "matrix difference");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(Complex scalar) {
  for (auto& z : data_) z *= scalar;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) {
    throw Error(ErrorKind::DimensionMismatch,
                "matrix product " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) + " * " +
                    std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  }
  Matrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0)) continue;
      const Complex* brow = &b.data_[k * b.cols_];
      Complex* orow = &out.data_[i * out.cols_];
      for (std::size_t j = 0; j < b.cols_; ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

double distance(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "distance");
  double s = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) s += std::norm(a.entries()[i] - b.entries()[i]);
  return std::sqrt(s);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

EigenSystem hermitian_eig(const Matrix& input) {
  if (!input.is_square()) throw Error(ErrorKind::NonSquare, "eigendecomposition needs a square matrix");
  const std::size_t n = input.rows();
  const double norm = input.frobenius_norm();
  const double asym = distance(input, input.adjoint());
  if (asym > kHermitianTol * norm) {
    throw Error(ErrorKind::NonHermitian, "||a - a^H||_F = " + std::to_string(asym));
  }
  Matrix a = (input + input.adjoint()) * 0.5;
  Matrix v = Matrix::identity(n);

  auto off_diagonal = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return s;
  };

  constexpr int kMaxSweeps = 100;
  const double target = std::max(norm * norm, 1e-300) * 1e-32;
  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal() > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Phase D = diag(1, e^{-iφ}) makes the pivot real, then a real rotation
        // annihilates it. U = D R acts on columns p, q.
        const Complex phase = apq / mag;
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex upp = c;
        const Complex upq = s;
        const Complex uqp = -s * std::conj(phase);
        const Complex uqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  EigenSystem out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

Matrix matrix_func_on_support(const EigenSystem& eig, SupportFunc f) {
  const double lmax = eig.values.empty() ? 0.0 : eig.values.front();
  std::vector<double> mapped(eig.values.size(), 0.0);
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    const double lam = eig.values[k];
    if (lam < -kPsdFloor * std::max(lmax, 0.0) || (lmax <= 0.0 && lam < 0.0)) {
      throw Error(ErrorKind::NotPSD, "eigenvalue " + std::to_string(lam) + " below PSD floor");
    }
    if (lmax <= 0.0 || lam <= kSupportCutoff * lmax) continue;
    mapped[k] = f == SupportFunc::Log ? std::log(lam) : std::sqrt(lam);
  }
  return reconstruct(eig.vectors, mapped);
}

Matrix matrix_func_on_support(const Matrix& a, SupportFunc f) {
  return matrix_func_on_support(hermitian_eig(a), f);
}

Matrix partial_trace(const Matrix& w, FactorDims dims, Keep keep) {
  if (dims.g == 0 || dims.h == 0 || !w.is_square() || w.rows() != dims.g * dims.h) {
    throw Error(ErrorKind::DimensionMismatch, "partial trace: matrix side " + std::to_string(w.rows()) +
                                                  " vs dims " + std::to_string(dims.g) + "x" +
                                                  std::to_string(dims.h));
  }
  if (keep == Keep::G) {
    Matrix out(dims.g, dims.g);
    for (std::size_t i = 0; i < dims.g; ++i)
      for (std::size_t j = 0; j < dims.g; ++j) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < dims.h; ++k) s += w(i * dims.h + k, j * dims.h + k);
        out(i, j) = s;
      }
    return out;
  }
  Matrix out(dims.h, dims.h);
  for (std::size_t k = 0; k < dims.h; ++k)
    for (std::size_t l = 0; l < dims.h; ++l) {
      Complex s = 0.0;
      for (std::size_t i = 0; i < dims.g; ++i) s += w(i * dims.h + k, i * dims.h + l);
      out(k, l) = s;
    }
  return out;
}

Matrix partial_transpose_g(const Matrix& w, FactorDims dims) {
  if (!w.is_square() || w.rows() != dims.g * dims.h) {
    throw Error(ErrorKind::DimensionMismatch, "partial transpose: side mismatch");
  }
  Matrix out(w.rows(), w.cols());
  for (std::size_t i = 0; i < dims.g; ++i)
    for (std::size_t j = 0; j < dims.g; ++j)
      for (std::size_t k = 0; k < dims.h; ++k)
        for (std::size_t l = 0; l < dims.h; ++l)
          out(j * dims.h + k, i * dims.h + l) = w(i * dims.h + k, j * dims.h + l);
  return out;
}

Matrix reconstruct(const Matrix& vectors, std::span<const double> values) {
  const std::size_t n = vectors.rows();
  Matrix out(n, n);
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = vectors(i, k) * values[k];
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(vectors(j, k));
    }
  }
  return out;
}

Matrix orthonormalize_columns(const Matrix& m) {
  if (m.rows() < m.cols()) throw Error(ErrorKind::ShapeMismatch, "more columns than rows");
  Matrix q = m;
  auto column_norm = [&](std::size_t c) {
    double len = 0.0;
    for (std::size_t r = 0; r < q.rows(); ++r) len += std::norm(q(r, c));
    return std::sqrt(len);
  };
  for (std::size_t c = 0; c < q.cols(); ++c) {
    const double before = column_norm(c);
    // Two projection passes keep the result orthonormal to round-off even for
    // nearly dependent input.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t prev = 0; prev < c; ++prev) {
        Complex dot = 0.0;
        for (std::size_t r = 0; r < q.rows(); ++r) dot += std::conj(q(r, prev)) * q(r, c);
        for (std::size_t r = 0; r < q.rows(); ++r) q(r, c) -= dot * q(r, prev);
      }
    }
    const double len = column_norm(c);
    if (!(len > 1e-10 * before)) throw Error(ErrorKind::BadRank, "columns are linearly dependent");
    for (std::size_t r = 0; r < q.rows(); ++r) q(r, c) /= len;
  }
  return q;
}

}  // namespace qent
