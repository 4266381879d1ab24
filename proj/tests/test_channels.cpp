#include <array>
#include <cmath>

#include "doctest.h"
#include "qent/channels.hpp"
#include "qent/entropy.hpp"
#include "qent/error.hpp"
#include "qent/rng.hpp"

using namespace qent;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Parse;
}

Matrix pauli_x() { return Matrix{{0.0, 1.0}, {1.0, 0.0}}; }
Matrix pauli_y() { return Matrix{{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}}; }
Matrix pauli_z() { return Matrix{{1.0, 0.0}, {0.0, -1.0}}; }

}  // namespace

TEST_CASE("make_channel completeness") {
  const double h = 0.5;
  std::vector<Matrix> paulis{Matrix::identity(2) * h, pauli_x() * h, pauli_y() * h, pauli_z() * h};
  CHECK(completeness_defect(paulis).frobenius_norm() < 1e-15);
  CHECK_NOTHROW(make_channel(paulis));

  CHECK(kind_of([] { make_channel({Matrix::diagonal({1.0, 0.5})}); }) == ErrorKind::IncompleteKraus);
  CHECK(kind_of([] { make_channel({}); }) == ErrorKind::ShapeMismatch);
  CHECK(kind_of([] { make_channel({Matrix::identity(2), Matrix(3, 2)}); }) == ErrorKind::ShapeMismatch);
  // Completeness residual just above the tolerance.
  CHECK(kind_of([] { make_channel({Matrix::identity(2) * std::sqrt(1.0 + 1e-3)}); }) == ErrorKind::IncompleteKraus);
}

TEST_CASE("amplitude damping decays the excited state") {
  for (double gamma : {0.0, 0.3, 0.7, 1.0}) {
    const DensityOperator out = apply_state(amplitude_damping_channel(gamma), validate_density(Matrix::diagonal({0.0, 1.0})));
    CHECK(distance(out.matrix(), Matrix::diagonal({gamma, 1.0 - gamma})) < 1e-14);
  }
}

TEST_CASE("depolarizing channel") {
  const DensityOperator zero = pure_state(Matrix::column({1.0, 0.0}));
  CHECK(distance(apply_state(depolarizing_channel(1.0), zero).matrix(), Matrix::diagonal({0.5, 0.5})) < 1e-14);
  CHECK(distance(apply_state(depolarizing_channel(0.0), zero).matrix(), zero.matrix()) < 1e-14);
  CHECK(distance(apply_state(depolarizing_channel(0.4), zero).matrix(), Matrix::diagonal({0.8, 0.2})) < 1e-14);

  // On half of a Bell pair the output spectrum is (1 - 3p/4, p/4, p/4, p/4).
  const double s = 1.0 / std::sqrt(2.0);
  const CompoundState bell =
      compound_from_amplitude(AmplitudeOperator(Matrix::column({s, 0.0, 0.0, s}), {1, 2, 2}));
  const double p = 0.6;
  const EigenSystem eig = apply_to_output_factor(depolarizing_channel(p), bell).omega().eig();
  CHECK(std::abs(eig.values[0] - (1.0 - 0.75 * p)) < 1e-12);
  for (int k = 1; k < 4; ++k) CHECK(std::abs(eig.values[k] - 0.25 * p) < 1e-12);

  CHECK(kind_of([] { depolarizing_channel(1.5); }) == ErrorKind::BadParam);
}

TEST_CASE("phase damping keeps populations and shrinks coherences") {
  const DensityOperator plus = pure_state(Matrix::column({1.0, 1.0}));
  const double lambda = 0.36;
  const Matrix out = apply_state(phase_damping_channel(lambda), plus).matrix();
  CHECK(std::abs(out(0, 0) - 0.5) < 1e-14);
  CHECK(std::abs(out(1, 1) - 0.5) < 1e-14);
  CHECK(std::abs(out(0, 1) - 0.5 * std::sqrt(1.0 - lambda)) < 1e-14);
}

TEST_CASE("Heisenberg picture is the dual") {
  Rng rng(71);
  for (int t = 0; t < 20; ++t) {
    const KrausChannel ch = random_channel(2, 3, 1 + t % 4, 500 + t);
    const DensityOperator rho = random_density(2, 2, rng);
    const Matrix a = rng.gaussian_matrix(3, 3);
    const Complex lhs = (a * apply_state(ch, rho).matrix()).trace();
    const Complex rhs = (apply_heisenberg(ch, a) * rho.matrix()).trace();
    CHECK(std::abs(lhs - rhs) < 1e-12);
    CHECK(distance(apply_heisenberg(ch, Matrix::identity(3)), Matrix::identity(2)) < 1e-12);
  }
}

TEST_CASE("dilation reproduces the Kraus action") {
  const KrausChannel ad = amplitude_damping_channel(0.3);
  const Isometry iso = dilate(ad);
  CHECK(iso.y.rows() == 2);
  CHECK(iso.y.cols() == 4);
  CHECK(distance(noise_traced_gram(iso), Matrix::identity(2)) < 1e-14);

  Rng rng(73);
  for (int t = 0; t < 20; ++t) {
    const KrausChannel ch = random_channel(2 + t % 2, 2 + t % 3, 2 + t % 3, 900 + t);
    const Isometry y = dilate(ch);
    const DensityOperator rho = random_density(ch.dim_in(), ch.dim_in(), rng);
    CHECK(distance(apply_dilation(y, rho.matrix()), apply_state(ch, rho).matrix()) < 1e-12);
    CHECK(distance(noise_traced_gram(y), Matrix::identity(ch.dim_in())) < 1e-12);
  }
}

TEST_CASE("random channels are trace preserving and seeded") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const KrausChannel ch = random_channel(3, 2, 4, seed);
    CHECK(completeness_defect(ch.kraus()).frobenius_norm() < 1e-12);
    CHECK(distance(ch.kraus()[0], random_channel(3, 2, 4, seed).kraus()[0]) == 0.0);
  }
}

TEST_CASE("channel zoo") {
  const std::array<double, 1> two{2.0};
  CHECK(channel_zoo("identity", two).dim_in() == 2);
  const std::array<double, 3> u3{M_PI, 0.0, M_PI};
  const KrausChannel flip = channel_zoo("unitary", u3);
  CHECK(distance(apply_state(flip, pure_state(Matrix::column({1.0, 0.0}))).matrix(), Matrix::diagonal({0.0, 1.0})) <
        1e-14);
  const std::array<double, 4> rnd{2, 3, 2, 7};
  const KrausChannel r = channel_zoo("random", rnd);
  CHECK(r.dim_in() == 2);
  CHECK(r.dim_out() == 3);
  CHECK(r.kraus().size() == 2);

  const std::array<double, 1> p{0.5};
  CHECK(kind_of([&] { channel_zoo("teleporter", p); }) == ErrorKind::UnknownChannel);
  const std::array<double, 1> bad{-0.1};
  CHECK(kind_of([&] { channel_zoo("amplitude_damping", bad); }) == ErrorKind::BadParam);
  CHECK(kind_of([&] { channel_zoo("depolarizing", std::span<const double>{}); }) == ErrorKind::BadParam);
}

TEST_CASE("output-factor action keeps the probe marginal") {
  Rng rng(79);
  for (int t = 0; t < 20; ++t) {
    const CompoundState w(random_density(4, 2, rng), {2, 2});
    const KrausChannel ch = random_channel(2, 3, 2, 50 + t);
    const CompoundState out = apply_to_output_factor(ch, w);
    CHECK(out.dim_h() == 3);
    CHECK(distance(marginals(out).first.matrix(), marginals(w).first.matrix()) < 1e-12);
    CHECK(distance(marginals(out).second.matrix(), apply_state(ch, marginals(w).second).matrix()) < 1e-12);
  }
}
