#include <cmath>
#include <functional>
#include <map>
#include <string>

#include <fmt/format.h>

#include "cli.hpp"
#include "qent/entropy.hpp"
#include "qent/error.hpp"
#include "qent/json_io.hpp"
#include "qent/rng.hpp"

namespace qent::cli {

namespace {

struct Outcome {
  std::string name;
  bool ok;
  std::string detail;
};

class Recorder {
 public:
  void check(const std::string& name, bool ok, const std::string& detail = {}) {
    outcomes_.push_back({name, ok, ok ? std::string() : detail});
  }

  // Runs `body`; a thrown library error is a failure of that check.
  void guarded(const std::string& name, const std::function<void(Recorder&)>& body) {
    try {
      body(*this);
    } catch (const Error& e) {
      check(name, false, e.what());
    }
  }

  std::vector<Outcome> take() { return std::move(outcomes_); }

 private:
  std::vector<Outcome> outcomes_;
};

Matrix random_hermitian(std::size_t d, Rng& rng) {
  const Matrix g = rng.gaussian_matrix(d, d);
  return (g + g.adjoint()) * 0.5;
}

AmplitudeOperator random_amplitude(std::size_t df, std::size_t dg, std::size_t dh, Rng& rng) {
  Matrix v = rng.gaussian_matrix(dg * dh, df);
  v *= 1.0 / v.frobenius_norm();
  return AmplitudeOperator(std::move(v), {df, dg, dh});
}

// Light search: restart 0 starts at the Schatten decomposition, which is all
// the ordering and deterministic-channel checks depend on.
OptimizerConfig light_config(std::uint64_t seed) {
  OptimizerConfig cfg;
  cfg.restarts = 1;
  cfg.max_iters = 20;
  cfg.seed = seed;
  cfg.execution = Execution::Serial;
  return cfg;
}

std::string detail(double got, double want) { return fmt::format("got {:.3e}, want {:.3e}", got, want); }

std::vector<Outcome> run_trial(std::size_t d, std::uint64_t seed, std::size_t trial) {
  Rng rng = Rng::stream(seed, d * 1000003ULL + trial);
  Recorder rec;

  rec.guarded("linalg.eig_reconstruction", [&](Recorder& r) {
    const Matrix a = random_hermitian(d, rng);
    const EigenSystem eig = hermitian_eig(a);
    const double residual = distance(a, reconstruct(eig.vectors, eig.values));
    const double unitarity = distance(eig.vectors.adjoint() * eig.vectors, Matrix::identity(d));
    r.check("linalg.eig_reconstruction",
            residual <= 1e-10 * std::max(1.0, a.frobenius_norm()) && unitarity <= 1e-10, detail(residual, 1e-10));
  });

  rec.guarded("linalg.partial_trace", [&](Recorder& r) {
    const Matrix x = rng.gaussian_matrix(d, d);
    const Matrix y = rng.gaussian_matrix(2, 2);
    const Matrix w = kron(x, y);
    const double err_g = distance(partial_trace(w, {d, 2}, Keep::G), x * y.trace());
    const double err_h = distance(partial_trace(w, {d, 2}, Keep::H), y * x.trace());
    const double err_tr = std::abs(partial_trace(w, {d, 2}, Keep::G).trace() - w.trace());
    r.check("linalg.partial_trace", err_g <= 1e-12 * (1 + w.frobenius_norm()) &&
                                        err_h <= 1e-12 * (1 + w.frobenius_norm()) &&
                                        err_tr <= 1e-12 * (1 + w.frobenius_norm()),
            detail(std::max({err_g, err_h, err_tr}), 1e-12));
  });

  rec.guarded("linalg.sqrt_square", [&](Recorder& r) {
    const DensityOperator rho = random_density(d, 1 + trial % d, rng);
    const Matrix s = matrix_func_on_support(rho.matrix(), SupportFunc::Sqrt);
    const double err = distance(s * s, rho.matrix());
    r.check("linalg.sqrt_square", err <= 1e-10, detail(err, 1e-10));
  });

  rec.guarded("linalg.kron_mixed_product", [&](Recorder& r) {
    const Matrix a = rng.gaussian_matrix(d, d), b = rng.gaussian_matrix(2, 2);
    const Matrix c = rng.gaussian_matrix(d, d), e = rng.gaussian_matrix(2, 2);
    const Matrix lhs = kron(a, b) * kron(c, e);
    const double err = distance(lhs, kron(a * c, b * e));
    r.check("linalg.kron_mixed_product", err <= 1e-12 * (1 + lhs.frobenius_norm()), detail(err, 1e-12));
  });

  rec.guarded("states.schatten_roundtrip", [&](Recorder& r) {
    const DensityOperator rho = random_density(d, 1 + trial % d, rng);
    const Ensemble e = schatten_decompose(rho);
    const double err = distance(ensemble_mix(e).matrix(), rho.matrix());
    r.check("states.schatten_roundtrip", err <= 1e-10 && e.all_pure() && e.pairwise_orthogonal(), detail(err, 1e-10));
  });

  rec.guarded("entangle.amplitude_roundtrip", [&](Recorder& r) {
    const AmplitudeOperator v = random_amplitude(1 + trial % 3, d, 2, rng);
    const CompoundState w = compound_from_amplitude(v);
    const AmplitudeOperator kappa = entangling_from_amplitude(v);
    const double err = distance(compound_from_entangling(kappa).matrix(), w.matrix());
    const auto [sigma, rho] = marginals(w);
    const Matrix kk = kappa.matrix() * kappa.matrix().adjoint();
    const double err_sigma = distance(kappa.matrix().adjoint() * kappa.matrix(), sigma.matrix().transpose());
    const double err_rho = distance(partial_trace(kk, {v.dims().domain, 2}, Keep::H), rho.matrix());
    r.check("entangle.amplitude_roundtrip", err <= 1e-10 && err_sigma <= 1e-10 && err_rho <= 1e-10,
            detail(std::max({err, err_sigma, err_rho}), 1e-10));
  });

  rec.guarded("entangle.weak_orthogonality", [&](Recorder& r) {
    const CompoundState w = compound_from_amplitude(random_amplitude(2, d, 2, rng));
    const EigenSystem eig = marginals(w).first.eig();
    double worst = 0.0;
    for (std::size_t m = 0; m < d; ++m)
      for (std::size_t n = 0; n < d; ++n) {
        const double want = m == n ? eig.values[n] : 0.0;
        worst = std::max(worst, std::abs(g_block(w, eig.vectors, m, n).trace() - want));
      }
    r.check("entangle.weak_orthogonality", worst <= 1e-9, detail(worst, 1e-9));
  });

  rec.guarded("entangle.strong_orthogonality", [&](Recorder& r) {
    const Ensemble e = schatten_decompose(random_density(d, d, rng));
    const CompoundState w = d_compound(e);
    const Matrix basis = Matrix::identity(w.dim_g());
    double worst = 0.0;
    for (std::size_t m = 0; m < w.dim_g(); ++m)
      for (std::size_t n = 0; n < w.dim_g(); ++n)
        if (m != n) worst = std::max(worst, g_block(w, basis, m, n).frobenius_norm());
    r.check("entangle.strong_orthogonality", worst <= 1e-12, detail(worst, 1e-12));
  });

  rec.guarded("entangle.standard_rank_one", [&](Recorder& r) {
    const DensityOperator rho = random_density(d, d, rng);
    const CompoundState w = standard_compound(rho);
    const double second = w.omega().eig().values[1];
    const auto [sigma, out] = marginals(w);
    const double err = std::max(distance(sigma.matrix(), rho.matrix()), distance(out.matrix(), rho.matrix()));
    r.check("entangle.standard_rank_one", std::abs(second) <= 1e-10 && err <= 1e-10, detail(second, 1e-10));
  });

  rec.guarded("entangle.pi_identities", [&](Recorder& r) {
    const CompoundState w = compound_from_amplitude(random_amplitude(2, d, 2, rng));
    const double err_star = distance(pi_star_eval(w, Matrix::identity(d)), partial_trace(w.matrix(), w.dims(), Keep::H));
    const double err_pi =
        distance(pi_eval(w, Matrix::identity(2)), partial_trace(w.matrix(), w.dims(), Keep::G).transpose());
    r.check("entangle.pi_identities", err_star <= 1e-12 && err_pi <= 1e-12, detail(std::max(err_star, err_pi), 1e-12));
  });

  rec.guarded("entropy.relative_nonnegative", [&](Recorder& r) {
    const DensityOperator a = random_density(d, d, rng);
    const DensityOperator b = random_density(d, 1 + trial % d, rng);
    const EntropyValue ab = relative_entropy(a, b);
    const EntropyValue aa = relative_entropy(a, a);
    const bool ok = (!ab.finite || ab.nats >= -1e-10) && aa.finite && std::abs(aa.nats) <= 1e-10;
    r.check("entropy.relative_nonnegative", ok, detail(ab.nats, 0.0));
  });

  rec.guarded("entropy.q_entropy_theorem", [&](Recorder& r) {
    const DensityOperator rho = random_density(d, 1 + trial % d, rng);
    const double got = mutual_entropy(standard_compound(rho)).nats;
    const double want = 2.0 * von_neumann(rho).nats;
    r.check("entropy.q_entropy_theorem", std::abs(got - want) <= 1e-8, detail(got, want));
  });

  rec.guarded("entropy.disentanglement_infimum", [&](Recorder& r) {
    const DensityOperator rho = random_density(d, d, rng);
    const double got = conditional_and_disentanglement(standard_compound(rho)).disentanglement.nats;
    const double want = -von_neumann(rho).nats;
    r.check("entropy.disentanglement_infimum", std::abs(got - want) <= 1e-8, detail(got, want));
  });

  rec.guarded("entropy.monotonicity", [&](Recorder& r) {
    const CompoundState w = compound_from_amplitude(random_amplitude(2, d, 2, rng));
    const KrausChannel k = random_channel(d, d, 3, rng.next_u64());
    const double before = mutual_entropy(w).nats;
    const double after = mutual_entropy(apply_to_probe_factor(k, w)).nats;
    r.check("entropy.monotonicity", after <= before + 1e-8, detail(after, before));
  });

  rec.guarded("entropy.mutual_bounds", [&](Recorder& r) {
    const CompoundState w = compound_from_amplitude(random_amplitude(1 + trial % 3, d, 2, rng));
    const auto [sigma, rho] = marginals(w);
    const double s_min = std::min(von_neumann(sigma).nats, von_neumann(rho).nats);
    const double info = mutual_entropy(w).nats;
    const ConditionalEntropies ce = conditional_and_disentanglement(w);
    r.check("entropy.mutual_bounds", info >= -1e-10 && info <= 2.0 * s_min + 1e-8 && ce.q_conditional.nats >= -1e-8,
            detail(info, 2.0 * s_min));
  });

  rec.guarded("entropy.separable_bound", [&](Recorder& r) {
    std::vector<ProductTerm> terms;
    const double w0 = 0.2 + 0.6 * rng.uniform();
    terms.push_back({w0, random_density(d, 1 + trial % d, rng), random_density(2, 1, rng)});
    terms.push_back({1.0 - w0, random_density(d, d, rng), random_density(2, 2, rng)});
    const CompoundState w = c_compound(terms);
    const auto [sigma, rho] = marginals(w);
    const double bound = std::min(von_neumann(sigma).nats, von_neumann(rho).nats);
    const double info = mutual_entropy(w).nats;
    r.check("entropy.separable_bound", info <= bound + 1e-8, detail(info, bound));
  });

  rec.guarded("entropy.d_compound_information", [&](Recorder& r) {
    std::vector<EnsembleItem> items;
    const std::size_t n = 2 + trial % 3;
    std::vector<double> weights(n);
    double total = 0.0;
    for (double& w : weights) total += (w = 0.1 + rng.uniform());
    for (std::size_t i = 0; i < n; ++i) items.push_back({weights[i] / total, random_density(d, 1 + i % d, rng)});
    const Ensemble e(std::move(items));
    const DensityOperator avg = ensemble_mix(e);
    double gain = 0.0;
    for (const auto& item : e.items()) gain += item.weight * relative_entropy(item.state, avg).nats;
    const double info = mutual_entropy(d_compound(e)).nats;
    r.check("entropy.d_compound_information", std::abs(info - gain) <= 1e-8, detail(info, gain));
  });

  rec.guarded("channels.trace_preservation", [&](Recorder& r) {
    const KrausChannel ch = random_channel(d, d, 1 + trial % 4, rng.next_u64());
    const DensityOperator out = apply_state(ch, random_density(d, 1 + trial % d, rng));
    r.check("channels.trace_preservation", std::abs(out.matrix().trace() - 1.0) <= 1e-10,
            detail(out.matrix().trace().real(), 1.0));
  });

  rec.guarded("channels.dilation_roundtrip", [&](Recorder& r) {
    const KrausChannel ch = random_channel(d, 2, 1 + d, rng.next_u64());
    const DensityOperator rho = random_density(d, d, rng);
    const Isometry iso = dilate(ch);
    const double err = distance(apply_dilation(iso, rho.matrix()), apply_state(ch, rho).matrix());
    const double norm = distance(noise_traced_gram(iso), Matrix::identity(d));
    r.check("channels.dilation_roundtrip", err <= 1e-10 && norm <= 1e-9, detail(err, 1e-10));
  });

  rec.guarded("channels.output_factor_marginals", [&](Recorder& r) {
    const KrausChannel ch = random_channel(2, d, 2, rng.next_u64());
    const CompoundState w = compound_from_amplitude(random_amplitude(2, d, 2, rng));
    const CompoundState out = apply_to_output_factor(ch, w);
    const auto [s0, r0] = marginals(w);
    const auto [s1, r1] = marginals(out);
    const double err_g = distance(s0.matrix(), s1.matrix());
    const double err_h = distance(r1.matrix(), apply_state(ch, r0).matrix());
    r.check("channels.output_factor_marginals", err_g <= 1e-10 && err_h <= 1e-10, detail(std::max(err_g, err_h), 1e-10));
  });

  rec.guarded("channels.isometry_spectrum", [&](Recorder& r) {
    const KrausChannel ch = random_channel(d, d + 1, 1, rng.next_u64());
    const DensityOperator rho = random_density(d, d, rng);
    const EigenSystem in = rho.eig();
    const EigenSystem out = apply_state(ch, rho).eig();
    double worst = std::abs(out.values.back());
    for (std::size_t k = 0; k < d; ++k) worst = std::max(worst, std::abs(in.values[k] - out.values[k]));
    r.check("channels.isometry_spectrum", worst <= 1e-9, detail(worst, 1e-9));
  });

  rec.guarded("capacity.info_q_identity", [&](Recorder& r) {
    const DensityOperator rho = random_density(d, 1 + trial % d, rng);
    const double got = info_q(rho, identity_channel(d)).value;
    const double want = 2.0 * von_neumann(rho).nats;
    r.check("capacity.info_q_identity", std::abs(got - want) <= 1e-8, detail(got, want));
  });

  rec.guarded("capacity.ordering", [&](Recorder& r) {
    const KrausChannel ch = random_channel(d, 2, 2, rng.next_u64());
    const DensityOperator rho = random_density(d, d, rng);
    const OrderingReport rep = verify_ordering(ch, rho, light_config(rng.next_u64()));
    r.check("capacity.ordering", rep.pass, fmt::format("I_q={:.9f} I_d={:.9f} I_o={:.9f}", rep.i_q, rep.i_d, rep.i_o));
  });

  rec.guarded("capacity.deterministic_channel", [&](Recorder& r) {
    const KrausChannel ch = random_channel(d, d, 1, rng.next_u64());
    const DensityOperator rho = random_density(d, d, rng);
    const OptimizerConfig cfg = light_config(rng.next_u64());
    const double s = von_neumann(rho).nats;
    const double id = info_d(rho, ch, cfg).value;
    const double io = info_o(rho, ch, cfg).value;
    r.check("capacity.deterministic_channel", std::abs(id - s) <= 1e-6 && std::abs(io - s) <= 1e-6,
            fmt::format("I_d={:.9f} I_o={:.9f} S={:.9f}", id, io, s));
  });

  return rec.take();
}

std::vector<Outcome> check_supplied_channel(const std::filesystem::path& path, std::uint64_t seed) {
  Recorder rec;
  rec.guarded("channels.supplied_channel", [&](Recorder& r) {
    const KrausChannel ch = io::channel_from_json(io::read_json_file(path));
    Rng rng(seed);
    const DensityOperator rho = random_density(ch.dim_in(), ch.dim_in(), rng);
    const DensityOperator out = apply_state(ch, rho);
    const Isometry iso = dilate(ch);
    const double err = distance(apply_dilation(iso, rho.matrix()), out.matrix());
    r.check("channels.supplied_channel", err <= 1e-10, detail(err, 1e-10));
  });
  return rec.take();
}

}  // namespace

bool VerifyReport::all_pass() const {
  for (const auto& c : checks)
    if (c.failed > 0) return false;
  return true;
}

VerifyReport run_verify(const VerifyOptions& opts) {
  for (std::size_t d : opts.dims) {
    if (d < 2 || d > 4) throw Error(ErrorKind::BadParam, "verify dims must lie in {2, 3, 4}");
  }
  struct Job {
    std::size_t dim;
    std::size_t trial;
  };
  std::vector<Job> jobs;
  for (std::size_t d : opts.dims)
    for (std::size_t t = 0; t < opts.trials; ++t) jobs.push_back({d, t});

  std::vector<std::vector<Outcome>> results = parallel_map(
      jobs.size(), [&](std::size_t i) { return run_trial(jobs[i].dim, opts.seed, jobs[i].trial); }, opts.execution);
  if (opts.channel) results.push_back(check_supplied_channel(*opts.channel, opts.seed));

  VerifyReport report;
  report.vacuous = jobs.empty();
  std::map<std::string, std::size_t> index;
  for (const auto& trial : results) {
    for (const auto& o : trial) {
      auto [it, inserted] = index.try_emplace(o.name, report.checks.size());
      if (inserted) report.checks.push_back(CheckTally{o.name, 0, 0, {}});
      CheckTally& tally = report.checks[it->second];
      if (o.ok) {
        ++tally.passed;
      } else {
        if (tally.failed == 0) tally.first_failure = o.detail;
        ++tally.failed;
      }
    }
  }
  return report;
}

}  // namespace qent::cli
