#include "qent/capacity.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qent/entropy.hpp"
#include "qent/error.hpp"
#include "qent/optimize.hpp"
#include "qent/rng.hpp"

namespace qent {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Ensemble members lighter than this are dropped from reported argmaxes.
constexpr double kNegligibleWeight = 1e-14;

double entropy_of(const Matrix& x) { return von_neumann_of_spectrum(hermitian_eig(x).values); }

// Complex rows x cols matrix from interleaved (re, im) parameters at `offset`.
Matrix unpack(std::span<const double> p, std::size_t offset, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t k = offset + 2 * (r * cols + c);
      m(r, c) = Complex(p[k], p[k + 1]);
    }
  return m;
}

void pack(const Matrix& m, std::vector<double>& out) {
  for (const auto& z : m.entries()) {
    out.push_back(z.real());
    out.push_back(z.imag());
  }
}

// n x n Hermitian H from n² parameters at `offset`: the diagonal first, then
// (re, im) of the strict upper triangle.
Matrix hermitian_from_params(std::span<const double> p, std::size_t offset, std::size_t n) {
  Matrix h(n, n);
  std::size_t k = offset;
  for (std::size_t i = 0; i < n; ++i) h(i, i) = p[k++];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      h(i, j) = Complex(p[k], p[k + 1]);
      h(j, i) = std::conj(h(i, j));
      k += 2;
    }
  return h;
}

// exp(iH), unitary to round-off for any H.
Matrix unitary_from_params(std::span<const double> p, std::size_t offset, std::size_t n) {
  const EigenSystem eig = hermitian_eig(hermitian_from_params(p, offset, n));
  Matrix u(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex phase = std::polar(1.0, eig.values[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = eig.vectors(i, k) * phase;
      for (std::size_t j = 0; j < n; ++j) u(i, j) += vik * std::conj(eig.vectors(j, k));
    }
  }
  return u;
}

std::vector<double> softmax(std::span<const double> x) {
  double top = x.front();
  for (double v : x) top = std::max(top, v);
  std::vector<double> p(x.size());
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) total += (p[i] = std::exp(x[i] - top));
  for (double& v : p) v /= total;
  return p;
}

// Σ_n μ_n S(Λ(ρ_n) ‖ Λ(ρ̄)) for the ensemble whose members are the columns a_n
// of `amps` (μ_n = ‖a_n‖², ρ_n = a_n a_n† / μ_n), written in the equivalent
// form S(Λ ρ̄) - Σ μ_n S(Λ ρ_n) with μ S(X/μ) = h(X) + μ ln μ.
double holevo_from_amplitudes(const KrausChannel& ch, const Matrix& amps) {
  Matrix total(ch.dim_out(), ch.dim_out());
  double members = 0.0;
  for (std::size_t n = 0; n < amps.cols(); ++n) {
    const Matrix a = amps.col(n);
    const double mu = std::norm(a.frobenius_norm());
    if (mu <= kNegligibleWeight * 1e-2) continue;
    Matrix out(ch.dim_out(), ch.dim_out());
    for (const auto& k : ch.kraus()) {
      const Matrix b = k * a;
      out += b * b.adjoint();
    }
    members += entropy_of(out) + mu * std::log(mu);
    total += out;
  }
  return entropy_of(total) - members;
}

Ensemble ensemble_from_amplitudes(const Matrix& amps) {
  std::vector<EnsembleItem> items;
  double total = 0.0;
  for (std::size_t n = 0; n < amps.cols(); ++n) {
    const Matrix a = amps.col(n);
    const double mu = std::norm(a.frobenius_norm());
    if (mu <= kNegligibleWeight) continue;
    items.push_back({mu, pure_state(a)});
    total += mu;
  }
  for (auto& item : items) item.weight /= total;
  return Ensemble(std::move(items));
}

// Mutual entropy of (I⊗Λ)(ϑϑ†), ϑ = Σ √p_n w_n⊗w_n, via S(p) + S(ρ) - S(ω).
double info_q_spectral(const KrausChannel& ch, std::span<const double> p, const Matrix& w) {
  const std::size_t d = ch.dim_in();
  Matrix theta(d * d, 1);
  for (std::size_t n = 0; n < d; ++n) {
    const double amp = std::sqrt(p[n]);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) theta(i * d + j, 0) += amp * w(i, n) * w(j, n);
  }
  const std::size_t dout = ch.dim_out();
  Matrix omega(d * dout, d * dout);
  const Matrix id = Matrix::identity(d);
  for (const auto& k : ch.kraus()) {
    const Matrix c = kron(id, k) * theta;
    omega += c * c.adjoint();
  }
  const Matrix rho = partial_trace(omega, {d, dout}, Keep::H);
  return von_neumann_of_spectrum(p) + entropy_of(rho) - entropy_of(omega);
}

// Wraps a throwing evaluation so infeasible parameter points lose.
Objective guarded(std::function<double(std::span<const double>)> f) {
  return [f = std::move(f)](std::span<const double> x) {
    try {
      const double v = f(x);
      return std::isfinite(v) ? v : kNegInf;
    } catch (const Error&) {
      return kNegInf;
    }
  };
}

// Runs cfg.restarts searches; restart 0 starts at `canonical`, later ones at
// Gaussian points from the (seed, restart) stream. Best value wins, lowest
// restart index on ties.
SearchResult multi_start(const Objective& objective, const std::vector<double>& canonical, const OptimizerConfig& cfg) {
  const SearchOptions opts{cfg.max_iters, cfg.tol, 0.25, 1e-7};
  auto run = [&](std::size_t r) {
    std::vector<double> x0 = canonical;
    if (r > 0) {
      Rng rng = Rng::stream(cfg.seed, r);
      for (double& v : x0) v = rng.normal();
    }
    return pattern_search(objective, std::move(x0), opts);
  };
  std::vector<SearchResult> results = parallel_map(cfg.restarts, run, cfg.execution);
  std::size_t best = 0;
  std::size_t total_iters = 0;
  for (std::size_t r = 0; r < results.size(); ++r) {
    total_iters += results[r].iterations;
    if (results[r].value > results[best].value) best = r;
  }
  SearchResult out = std::move(results[best]);
  out.iterations = total_iters;
  return out;
}

std::size_t ensemble_cap(const OptimizerConfig& cfg, std::size_t dim_in) {
  return cfg.ensemble_size_cap == 0 ? dim_in * dim_in : cfg.ensemble_size_cap;
}

void require_input_dim(const DensityOperator& rho0, const KrausChannel& ch) {
  if (rho0.dim() != ch.dim_in()) {
    throw Error(ErrorKind::DimensionMismatch,
                "state dimension " + std::to_string(rho0.dim()) + " vs channel input " + std::to_string(ch.dim_in()));
  }
}

// Degenerate support blocks of a descending spectrum: [begin, end) ranges.
std::vector<std::pair<std::size_t, std::size_t>> support_blocks(const std::vector<double>& values) {
  const double cutoff = kSupportCutoff * values.front();
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  std::size_t i = 0;
  while (i < values.size() && values[i] > cutoff) {
    std::size_t j = i + 1;
    while (j < values.size() && values[j] > cutoff && values[j - 1] - values[j] <= kDegeneracyGap) ++j;
    blocks.emplace_back(i, j);
    i = j;
  }
  return blocks;
}

}  // namespace

void validate_config(const OptimizerConfig& cfg, std::size_t dim_in) {
  if (cfg.restarts == 0) throw Error(ErrorKind::BadParam, "restarts must be >= 1");
  if (!(cfg.tol > 0.0)) throw Error(ErrorKind::BadParam, "tol must be positive");
  if (cfg.ensemble_size_cap != 0 && cfg.ensemble_size_cap < dim_in) {
    throw Error(ErrorKind::BadParam, "ensemble_size_cap below input dimension");
  }
  if (!(cfg.slack >= 0.0)) throw Error(ErrorKind::BadParam, "slack must be nonnegative");
}

std::string_view to_string(InfoKind kind) {
  switch (kind) {
    case InfoKind::Q: return "q";
    case InfoKind::D: return "d";
    case InfoKind::O: return "o";
  }
  return "?";
}

InfoKind parse_info_kind(std::string_view s) {
  if (s == "q") return InfoKind::Q;
  if (s == "d") return InfoKind::D;
  if (s == "o") return InfoKind::O;
  throw Error(ErrorKind::BadParam, "kind must be q, d or o, got '" + std::string(s) + "'");
}

double ensemble_information(const Ensemble& e, const KrausChannel& ch) {
  if (e.dim() != ch.dim_in()) throw Error(ErrorKind::DimensionMismatch, "ensemble vs channel input");
  const DensityOperator avg = apply_state(ch, ensemble_mix(e));
  double total = 0.0;
  for (const auto& item : e.items()) {
    if (item.weight == 0.0) continue;
    const EntropyValue rel = relative_entropy(apply_state(ch, item.state), avg);
    if (!rel.finite) {
      throw Error(ErrorKind::NumericalInconsistency, "ensemble member not dominated by the average output");
    }
    total += item.weight * rel.nats;
  }
  return total;
}

InfoReport info_q(const DensityOperator& rho0, const KrausChannel& ch) {
  require_input_dim(rho0, ch);
  CompoundState input = standard_compound(rho0);
  const double value = mutual_entropy(apply_to_output_factor(ch, input)).nats;
  InfoReport report;
  report.kind = InfoKind::Q;
  report.value = value;
  report.input = rho0;
  report.compound = std::move(input);
  return report;
}

InfoReport info_d(const DensityOperator& rho0, const KrausChannel& ch, const OptimizerConfig& cfg) {
  require_input_dim(rho0, ch);
  validate_config(cfg, ch.dim_in());
  const std::size_t d = ch.dim_in();
  const std::size_t m = ensemble_cap(cfg, d);
  const EigenSystem eig = rho0.eig();
  const Matrix sqrt_rho = matrix_func_on_support(eig, SupportFunc::Sqrt) * eig.vectors;

  // Columns of ρ0^{1/2} E V, with E the eigenvectors and V V† = I, mix back to
  // ρ0 exactly. V has the Gram-Schmidt-orthonormalized rows of M.
  auto amplitudes = [&](std::span<const double> x) {
    return sqrt_rho * orthonormalize_columns(unpack(x, 0, m, d)).adjoint();
  };
  const Objective objective = guarded([&](std::span<const double> x) { return holevo_from_amplitudes(ch, amplitudes(x)); });

  // Restart 0 starts at V = [I | 0], i.e. the Schatten decomposition.
  Matrix start(m, d);
  for (std::size_t k = 0; k < d; ++k) start(k, k) = 1.0;
  std::vector<double> canonical;
  pack(start, canonical);

  const SearchResult best = multi_start(objective, canonical, cfg);
  InfoReport report;
  report.kind = InfoKind::D;
  report.value = best.value;
  report.input = rho0;
  report.ensemble = ensemble_from_amplitudes(amplitudes(best.x));
  report.iterations = best.iterations;
  report.converged = best.converged;
  return report;
}

InfoReport info_o(const DensityOperator& rho0, const KrausChannel& ch, const OptimizerConfig& cfg) {
  require_input_dim(rho0, ch);
  validate_config(cfg, ch.dim_in());
  const std::size_t d = ch.dim_in();
  const EigenSystem eig = rho0.eig();
  const auto blocks = support_blocks(eig.values);
  const std::size_t support = blocks.back().second;

  // Block-unitary rotations W_b = exp(iH_b) of the eigenvectors within each
  // degenerate block; weights stay the eigenvalues.
  auto amplitudes = [&](std::span<const double> x) {
    Matrix amps(d, support);
    std::size_t offset = 0;
    for (const auto& [begin, end] : blocks) {
      const std::size_t k = end - begin;
      Matrix rotation = Matrix::identity(k);
      if (k > 1) {
        rotation = unitary_from_params(x, offset, k);
        offset += k * k;
      }
      for (std::size_t c = 0; c < k; ++c) {
        const double amp = std::sqrt(eig.values[begin + c]);
        for (std::size_t r = 0; r < d; ++r) {
          Complex s = 0.0;
          for (std::size_t j = 0; j < k; ++j) s += eig.vectors(r, begin + j) * rotation(j, c);
          amps(r, begin + c) = amp * s;
        }
      }
    }
    return amps;
  };

  std::size_t block_params = 0;
  for (const auto& [begin, end] : blocks)
    if (end - begin > 1) block_params += (end - begin) * (end - begin);
  const std::vector<double> canonical(block_params, 0.0);

  InfoReport report;
  report.kind = InfoKind::O;
  report.input = rho0;
  if (canonical.empty()) {
    const Matrix amps = amplitudes({});
    report.value = holevo_from_amplitudes(ch, amps);
    report.ensemble = ensemble_from_amplitudes(amps);
    return report;
  }
  const Objective objective = guarded([&](std::span<const double> x) { return holevo_from_amplitudes(ch, amplitudes(x)); });
  const SearchResult best = multi_start(objective, canonical, cfg);
  report.value = best.value;
  report.ensemble = ensemble_from_amplitudes(amplitudes(best.x));
  report.iterations = best.iterations;
  report.converged = best.converged;
  return report;
}

InfoReport info(InfoKind kind, const DensityOperator& rho0, const KrausChannel& ch, const OptimizerConfig& cfg) {
  switch (kind) {
    case InfoKind::Q: return info_q(rho0, ch);
    case InfoKind::D: return info_d(rho0, ch, cfg);
    case InfoKind::O: return info_o(rho0, ch, cfg);
  }
  throw Error(ErrorKind::BadParam, "unknown info kind");
}

InfoReport capacity(const KrausChannel& ch, InfoKind kind, const OptimizerConfig& cfg) {
  validate_config(cfg, ch.dim_in());
  const std::size_t d = ch.dim_in();
  InfoReport report;
  report.kind = kind;

  if (kind == InfoKind::D) {
    // Joint search over all ensembles: columns of A / ‖A‖_F, whose mixture is
    // the input state.
    const std::size_t m = ensemble_cap(cfg, d);
    auto amplitudes = [&](std::span<const double> x) {
      Matrix a = unpack(x, 0, d, m);
      const double norm = a.frobenius_norm();
      if (!(norm > 0.0)) throw Error(ErrorKind::NotNormalized, "zero ensemble");
      return a * (1.0 / norm);
    };
    const Objective objective =
        guarded([&](std::span<const double> x) { return holevo_from_amplitudes(ch, amplitudes(x)); });
    Matrix start(d, m);
    for (std::size_t i = 0; i < d; ++i) start(i, i) = 1.0;
    std::vector<double> canonical;
    pack(start, canonical);
    const SearchResult best = multi_start(objective, canonical, cfg);
    const Matrix amps = amplitudes(best.x);
    report.value = best.value;
    report.input = validate_density(amps * amps.adjoint());
    report.ensemble = ensemble_from_amplitudes(amps);
    report.iterations = best.iterations;
    report.converged = best.converged;
    return report;
  }

  // Kinds q and o: input state W diag(softmax(x)) W†, W = exp(iH).
  auto spectrum = [&](std::span<const double> x) { return softmax(x.subspan(0, d)); };
  auto basis = [&](std::span<const double> x) { return unitary_from_params(x, d, d); };
  auto orthogonal_amplitudes = [&](std::span<const double> x) {
    const std::vector<double> p = spectrum(x);
    Matrix w = basis(x);
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t r = 0; r < d; ++r) w(r, c) *= std::sqrt(p[c]);
    return w;
  };
  const Objective objective = guarded([&](std::span<const double> x) {
    if (kind == InfoKind::Q) return info_q_spectral(ch, spectrum(x), basis(x));
    return holevo_from_amplitudes(ch, orthogonal_amplitudes(x));
  });
  const std::vector<double> canonical(d + d * d, 0.0);
  const SearchResult best = multi_start(objective, canonical, cfg);
  const Matrix amps = orthogonal_amplitudes(best.x);
  report.value = best.value;
  report.input = validate_density(amps * amps.adjoint());
  if (kind == InfoKind::Q) {
    report.compound = standard_compound(*report.input);
  } else {
    report.ensemble = ensemble_from_amplitudes(amps);
  }
  report.iterations = best.iterations;
  report.converged = best.converged;
  return report;
}

void OrderingReport::require() const {
  if (!pass) {
    throw Error(ErrorKind::OrderingViolated, "I_q=" + std::to_string(i_q) + " I_d=" + std::to_string(i_d) +
                                                 " I_o=" + std::to_string(i_o));
  }
}

OrderingReport verify_ordering(const KrausChannel& ch, const DensityOperator& rho0, const OptimizerConfig& cfg) {
  OrderingReport report;
  report.i_q = info_q(rho0, ch).value;
  report.i_d = info_d(rho0, ch, cfg).value;
  report.i_o = info_o(rho0, ch, cfg).value;
  report.tolerance = kOrderingTol + cfg.slack;
  report.pass = report.i_q >= report.i_d - report.tolerance && report.i_d >= report.i_o - report.tolerance;
  return report;
}

}  // namespace qent
