// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "cli/cli.hpp"
#include "qent/capacity.hpp"
#include "qent/entropy.hpp"
#include "qent/error.hpp"
#include "qent/rng.hpp"

namespace fs = std::filesystem;
using namespace qent;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

bool run_criterion(int n, const std::string& title, double time_limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit_s > 0 && secs > time_limit_s) {
    o.pass = false;
    o.detail += fmt::format("; over time limit {:.0f} s", time_limit_s);
  }
  std::cout << fmt::format("{} criterion {}: {} ({}; {:.2f} s)\n", o.pass ? "PASS" : "FAIL", n, title, o.detail, secs)
            << std::flush;
  return o.pass;
}

DensityOperator diag(std::initializer_list<double> v) { return validate_density(Matrix::diagonal(v)); }

// Rank cycles through 1..d so pure and rank-deficient inputs are covered.
DensityOperator random_input(std::size_t d, int t, Rng& rng) { return random_density(d, 1 + t % d, rng); }

Outcome q_entropy_theorem() {
  double worst = 0.0;
  int count = 0;
  for (std::size_t d : {2u, 3u, 4u}) {
    Rng rng(1000 + d);
    for (int t = 0; t < 100; ++t, ++count) {
      const DensityOperator rho = random_input(d, t, rng);
      const double gap = std::abs(mutual_entropy(standard_compound(rho)).nats - 2.0 * von_neumann(rho).nats);
      worst = std::max(worst, gap);
    }
  }
  return {worst <= 1e-8, fmt::format("{} states, max |I - 2S| = {:.3e}, tol 1e-8", count, worst)};
}

Outcome deterministic_channel() {
  const KrausChannel id = identity_channel(2);
  const OptimizerConfig cfg;
  Rng rng(2000);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const DensityOperator rho = random_density(2, 2, rng);
    const double s = von_neumann(rho).nats;
    worst = std::max(worst, std::abs(info_d(rho, id, cfg).value - s));
    worst = std::max(worst, std::abs(info_o(rho, id, cfg).value - s));
  }
  const double cd = capacity(id, InfoKind::D, cfg).value;
  const double cq = capacity(id, InfoKind::Q, cfg).value;
  const double err_d = std::abs(cd - std::log(2.0));
  const double err_q = std::abs(cq - std::log(4.0));
  return {worst <= 1e-6 && err_d <= kCapacityTolerance && err_q <= kCapacityTolerance,
          fmt::format("max |I - S| = {:.3e} (tol 1e-6), C_d = {:.9f}, C_q = {:.9f} (tol 2e-3)", worst, cd, cq)};
}

Outcome ordering() {
  const OptimizerConfig cfg;
  Rng rng(3000);
  int failures = 0;
  double worst = -1.0;
  for (int t = 0; t < 100; ++t) {
    const KrausChannel ch = random_channel(2, 2, 1 + t % 4, rng.next_u64());
    const OrderingReport rep = verify_ordering(ch, random_input(2, t, rng), cfg);
    if (!rep.pass) ++failures;
    worst = std::max({worst, rep.i_d - rep.i_q, rep.i_o - rep.i_d});
  }
  return {failures == 0,
          fmt::format("100 channels, {} violations, max excess {:.3e}, tol {:.1e}", failures, worst, kOrderingTol + cfg.slack)};
}

Outcome disentanglement_infimum() {
  Rng rng(4000);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const DensityOperator rho = random_input(2 + t % 3, t, rng);
    const ConditionalEntropies c = conditional_and_disentanglement(standard_compound(rho));
    // tr ρ ln ρ = -S(ρ)
    worst = std::max(worst, std::abs(c.disentanglement.nats + von_neumann(rho).nats));
  }
  return {worst <= 1e-8, fmt::format("50 states, max deviation {:.3e}, tol 1e-8", worst)};
}

Outcome monotonicity() {
  Rng rng(5000);
  double worst = -1.0;
  for (int t = 0; t < 100; ++t) {
    const CompoundState w(random_density(4, 1 + t % 4, rng), {2, 2});
    const KrausChannel k = random_channel(2, 2, 1 + t % 4, rng.next_u64());
    const double before = mutual_entropy(w).nats;
    const double after = mutual_entropy(apply_to_probe_factor(k, w)).nats;
    worst = std::max(worst, after - before);
  }
  return {worst <= 1e-8, fmt::format("100 trials, max increase {:.3e}, slack 1e-8", worst)};
}

Outcome relative_entropy_axioms() {
  const DensityOperator zero = diag({1.0, 0.0});
  const DensityOperator one = diag({0.0, 1.0});
  const DensityOperator half = diag({0.5, 0.5});
  const bool infinities = !relative_entropy(half, zero).finite && !relative_entropy(zero, one).finite &&
                          !relative_entropy(diag({0.5, 0.5, 0.0}), diag({0.0, 0.3, 0.7})).finite;
  const bool finite_ok = relative_entropy(zero, half).finite;

  Rng rng(6000);
  double min_distinct = std::numeric_limits<double>::infinity();
  double max_self = 0.0;
  int pairs = 0;
  for (int t = 0; t < 200; ++t, ++pairs) {
    const std::size_t d = 2 + t % 3;
    const DensityOperator a = random_density(d, d, rng);
    const DensityOperator b = random_density(d, d, rng);
    const EntropyValue ab = relative_entropy(a, b);
    if (!ab.finite) return {false, "full-rank pair gave +inf"};
    min_distinct = std::min(min_distinct, ab.nats);
    max_self = std::max(max_self, std::abs(relative_entropy(a, a).nats));
  }
  const bool pass = infinities && finite_ok && min_distinct > 1e-10 && max_self <= 1e-10;
  return {pass, fmt::format("{} pairs, min S(a,b) = {:.3e}, max |S(a,a)| = {:.3e}, +inf fixtures {}", pairs, min_distinct,
                            max_self, infinities ? "ok" : "wrong")};
}

std::vector<std::vector<double>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot read " + path.string());
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

Outcome depolarizing_regression() {
  const auto reference = read_csv(fs::path(QENT_FIXTURE_DIR) / "depolarizing_sweep.csv");
  const auto rows = cli::compute_sweep("depolarizing", cli::sweep_grid(0.0, 1.0, 0.25), maximally_mixed(2), OptimizerConfig{});
  if (rows.size() != reference.size()) return {false, "row count differs from the fixture"};
  double err_q = 0.0, err_d = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (std::abs(rows[i].param - reference[i][0]) > 1e-12) return {false, "grid differs from the fixture"};
    err_q = std::max(err_q, std::abs(rows[i].i_q - reference[i][1]));
    err_d = std::max(err_d, std::abs(rows[i].i_d - reference[i][2]));
  }
  return {err_q <= 1e-8 && err_d <= 1e-4,
          fmt::format("max I_q error {:.3e} (tol 1e-8), max I_d error {:.3e} (tol 1e-4)", err_q, err_d)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome sweep_determinism() {
  const fs::path dir = fs::temp_directory_path() / "qent_acceptance";
  fs::create_directories(dir);
  const std::string state = (fs::path(QENT_FIXTURE_DIR) / "diag_quarter.json").string();
  std::vector<std::string> outputs;
  for (const char* name : {"first.csv", "second.csv"}) {
    const fs::path out = dir / name;
    fs::remove(out);
    const std::string cmd = fmt::format("{} sweep --family amplitude_damping --from 0 --to 1 --step 0.125 --state {} --out {} "
                                        "--seed 17 >/dev/null",
                                        QENT_CLI_PATH, state, out.string());
    if (std::system(cmd.c_str()) != 0) return {false, "sweep command failed"};
    outputs.push_back(slurp(out));
  }
  const bool same = !outputs[0].empty() && outputs[0] == outputs[1];
  return {same, fmt::format("{} bytes, {}", outputs[0].size(), same ? "identical" : "different")};
}

}  // namespace

int main() {
  configure_threads_from_env();
  bool all = true;
  all &= run_criterion(1, "q-entropy equals twice the von Neumann entropy", 10, q_entropy_theorem);
  all &= run_criterion(2, "deterministic channel values", 120, deterministic_channel);
  all &= run_criterion(3, "ordering I_q >= I_d >= I_o", 300, ordering);
  all &= run_criterion(4, "disentanglement infimum at the standard compound", 0, disentanglement_infimum);
  all &= run_criterion(5, "probe-side monotonicity of mutual entropy", 0, monotonicity);
  all &= run_criterion(6, "relative entropy axioms", 0, relative_entropy_axioms);
  all &= run_criterion(7, "depolarizing sweep regression", 60, depolarizing_regression);
  all &= run_criterion(8, "sweep determinism", 0, sweep_determinism);
  std::cout << (all ? "all criteria passed\n" : "some criteria failed\n");
  return all ? 0 : 1;
}
