#include "qent/channels.hpp"

#include <cmath>
#include <string>

#include "qent/error.hpp"
#include "qent/rng.hpp"

namespace qent {

namespace {

void require_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorKind::BadParam, std::string(name) + " = " + std::to_string(x) + " outside [0, 1]");
  }
}

std::size_t as_count(double x, const char* name) {
  if (!(x >= 1.0) || x != std::floor(x) || x > 1e6) {
    throw Error(ErrorKind::BadParam, std::string(name) + " must be a positive integer");
  }
  return static_cast<std::size_t>(x);
}

const Matrix& pauli_x() {
  static const Matrix m{{0.0, 1.0}, {1.0, 0.0}};
  return m;
}
const Matrix& pauli_y() {
  static const Matrix m{{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}};
  return m;
}
const Matrix& pauli_z() {
  static const Matrix m{{1.0, 0.0}, {0.0, -1.0}};
  return m;
}

}  // namespace

Matrix completeness_defect(std::span<const Matrix> kraus) {
  Matrix sum(kraus.front().cols(), kraus.front().cols());
  for (const auto& k : kraus) sum += k.adjoint() * k;
  return sum - Matrix::identity(sum.rows());
}

KrausChannel make_channel(std::vector<Matrix> kraus) {
  if (kraus.empty()) throw Error(ErrorKind::ShapeMismatch, "channel needs at least one Kraus operator");
  const std::size_t dim_out = kraus.front().rows();
  const std::size_t dim_in = kraus.front().cols();
  for (const auto& k : kraus) {
    if (k.rows() != dim_out || k.cols() != dim_in) {
      throw Error(ErrorKind::ShapeMismatch, "Kraus operators differ in shape");
    }
  }
  const double residual = completeness_defect(kraus).frobenius_norm();
  if (residual > kCompletenessTol) {
    throw Error(ErrorKind::IncompleteKraus, "||sum K^H K - I||_F = " + std::to_string(residual));
  }
  return KrausChannel(std::move(kraus), dim_in, dim_out);
}

Matrix apply_matrix(const KrausChannel& ch, const Matrix& x) {
  if (!x.is_square() || x.rows() != ch.dim_in()) {
    throw Error(ErrorKind::DimensionMismatch, "input side " + std::to_string(x.rows()) + " vs channel input " +
                                                  std::to_string(ch.dim_in()));
  }
  Matrix out(ch.dim_out(), ch.dim_out());
  for (const auto& k : ch.kraus()) out += k * x * k.adjoint();
  return out;
}

DensityOperator apply_state(const KrausChannel& ch, const DensityOperator& rho0) {
  return validate_density(apply_matrix(ch, rho0.matrix()));
}

Matrix apply_heisenberg(const KrausChannel& ch, const Matrix& a) {
  if (!a.is_square() || a.rows() != ch.dim_out()) {
    throw Error(ErrorKind::DimensionMismatch, "observable side does not match channel output");
  }
  Matrix out(ch.dim_in(), ch.dim_in());
  for (const auto& k : ch.kraus()) out += k.adjoint() * a * k;
  return out;
}

CompoundState apply_to_output_factor(const KrausChannel& ch, const CompoundState& w0) {
  if (w0.dim_h() != ch.dim_in()) {
    throw Error(ErrorKind::DimensionMismatch, "compound H factor " + std::to_string(w0.dim_h()) +
                                                  " vs channel input " + std::to_string(ch.dim_in()));
  }
  const Matrix id = Matrix::identity(w0.dim_g());
  Matrix out(w0.dim_g() * ch.dim_out(), w0.dim_g() * ch.dim_out());
  for (const auto& k : ch.kraus()) {
    const Matrix lifted = kron(id, k);
    out += lifted * w0.matrix() * lifted.adjoint();
  }
  return CompoundState(validate_density(out), {w0.dim_g(), ch.dim_out()});
}

CompoundState apply_to_probe_factor(const KrausChannel& ch, const CompoundState& w0) {
  if (w0.dim_g() != ch.dim_in()) {
    throw Error(ErrorKind::DimensionMismatch, "compound G factor " + std::to_string(w0.dim_g()) +
                                                  " vs channel input " + std::to_string(ch.dim_in()));
  }
  const Matrix id = Matrix::identity(w0.dim_h());
  Matrix out(ch.dim_out() * w0.dim_h(), ch.dim_out() * w0.dim_h());
  for (const auto& k : ch.kraus()) {
    const Matrix lifted = kron(k, id);
    out += lifted * w0.matrix() * lifted.adjoint();
  }
  return CompoundState(validate_density(out), {ch.dim_out(), w0.dim_h()});
}

Isometry dilate(const KrausChannel& ch) {
  const std::size_t n = ch.kraus().size();
  Matrix y(ch.dim_out(), ch.dim_in() * n);
  for (std::size_t i = 0; i < n; ++i) {
    const Matrix& k = ch.kraus()[i];
    for (std::size_t r = 0; r < ch.dim_out(); ++r)
      for (std::size_t x = 0; x < ch.dim_in(); ++x) y(r, x * n + i) = k(r, x);
  }
  return {std::move(y), ch.dim_in(), n, ch.dim_out()};
}

Matrix noise_traced_gram(const Isometry& iso) {
  return partial_trace(iso.y.adjoint() * iso.y, {iso.dim_in, iso.dim_noise}, Keep::G);
}

Matrix apply_dilation(const Isometry& iso, const Matrix& rho0) {
  return iso.y * kron(rho0, Matrix::identity(iso.dim_noise)) * iso.y.adjoint();
}

KrausChannel identity_channel(std::size_t d) {
  if (d == 0) throw Error(ErrorKind::BadParam, "dimension must be positive");
  return make_channel({Matrix::identity(d)});
}

KrausChannel unitary_channel(const Matrix& u) {
  if (!u.is_square() || distance(u.adjoint() * u, Matrix::identity(u.rows())) > kCompletenessTol) {
    throw Error(ErrorKind::BadParam, "matrix is not unitary");
  }
  return make_channel({u});
}

KrausChannel depolarizing_channel(double p) {
  require_unit_interval(p, "p");
  const double a = std::sqrt(1.0 - 0.75 * p);
  const double b = std::sqrt(0.25 * p);
  return make_channel({Matrix::identity(2) * a, pauli_x() * b, pauli_y() * b, pauli_z() * b});
}

KrausChannel amplitude_damping_channel(double gamma) {
  require_unit_interval(gamma, "gamma");
  return make_channel({Matrix{{1.0, 0.0}, {0.0, std::sqrt(1.0 - gamma)}}, Matrix{{0.0, std::sqrt(gamma)}, {0.0, 0.0}}});
}

KrausChannel phase_damping_channel(double lambda) {
  require_unit_interval(lambda, "lambda");
  return make_channel(
      {Matrix{{1.0, 0.0}, {0.0, std::sqrt(1.0 - lambda)}}, Matrix{{0.0, 0.0}, {0.0, std::sqrt(lambda)}}});
}

KrausChannel random_channel(std::size_t dim_in, std::size_t dim_out, std::size_t n_kraus, std::uint64_t seed) {
  if (dim_in == 0 || dim_out == 0 || n_kraus == 0 || dim_out * n_kraus < dim_in) {
    throw Error(ErrorKind::BadParam, "random channel needs dim_out * n_kraus >= dim_in");
  }
  Rng rng(seed);
  const Matrix v = orthonormalize_columns(rng.gaussian_matrix(dim_out * n_kraus, dim_in));
  std::vector<Matrix> kraus;
  kraus.reserve(n_kraus);
  for (std::size_t i = 0; i < n_kraus; ++i) {
    Matrix k(dim_out, dim_in);
    for (std::size_t r = 0; r < dim_out; ++r)
      for (std::size_t c = 0; c < dim_in; ++c) k(r, c) = v(i * dim_out + r, c);
    kraus.push_back(std::move(k));
  }
  return make_channel(std::move(kraus));
}

KrausChannel channel_zoo(std::string_view name, std::span<const double> params) {
  auto need = [&](std::size_t n) {
    if (params.size() != n) {
      throw Error(ErrorKind::BadParam, std::string(name) + " takes " + std::to_string(n) + " parameter(s), got " +
                                           std::to_string(params.size()));
    }
  };
  if (name == "identity") {
    need(1);
    return identity_channel(as_count(params[0], "d"));
  }
  if (name == "unitary") {
    need(3);
    const double theta = params[0], phi = params[1], lambda = params[2];
    const Matrix u{{std::cos(theta / 2), -std::polar(1.0, lambda) * std::sin(theta / 2)},
                   {std::polar(1.0, phi) * std::sin(theta / 2), std::polar(1.0, phi + lambda) * std::cos(theta / 2)}};
    return unitary_channel(u);
  }
  if (name == "depolarizing") {
    need(1);
    return depolarizing_channel(params[0]);
  }
  if (name == "amplitude_damping") {
    need(1);
    return amplitude_damping_channel(params[0]);
  }
  if (name == "phase_damping") {
    need(1);
    return phase_damping_channel(params[0]);
  }
  if (name == "random") {
    need(4);
    if (!(params[3] >= 0.0) || params[3] != std::floor(params[3])) {
      throw Error(ErrorKind::BadParam, "seed must be a nonnegative integer");
    }
    return random_channel(as_count(params[0], "d_in"), as_count(params[1], "d_out"), as_count(params[2], "n_kraus"),
                          static_cast<std::uint64_t>(params[3]));
  }
  throw Error(ErrorKind::UnknownChannel, std::string(name));
}

}  // namespace qent
