#include "qent/entropy.hpp"

#include <cmath>
#include <string>

#include "qent/error.hpp"

namespace qent {

namespace {

double support_cutoff(std::span<const double> values) {
  return values.empty() ? 0.0 : kSupportCutoff * std::max(values.front(), 0.0);
}

// Eigensystem of σ⊗ρ from the factor eigensystems (values re-sorted).
EigenSystem product_eig(const EigenSystem& a, const EigenSystem& b) {
  const std::size_t na = a.values.size();
  const std::size_t nb = b.values.size();
  std::vector<std::size_t> order(na * nb);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto value = [&](std::size_t idx) { return a.values[idx / nb] * b.values[idx % nb]; };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return value(x) > value(y); });
  EigenSystem out{std::vector<double>(na * nb), Matrix(na * nb, na * nb)};
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t ia = order[k] / nb;
    const std::size_t ib = order[k] % nb;
    out.values[k] = value(order[k]);
    for (std::size_t r = 0; r < na; ++r)
      for (std::size_t s = 0; s < nb; ++s) out.vectors(r * nb + s, k) = a.vectors(r, ia) * b.vectors(s, ib);
  }
  return out;
}

}  // namespace

double von_neumann_of_spectrum(std::span<const double> values) {
  const double cutoff = support_cutoff(values);
  double s = 0.0;
  for (double lam : values)
    if (lam > cutoff) s -= lam * std::log(lam);
  return s;
}

EntropyValue von_neumann(const DensityOperator& rho) {
  return EntropyValue::of(von_neumann_of_spectrum(rho.eig().values));
}

EntropyValue relative_entropy(const EigenSystem& w, const EigenSystem& phi) {
  const std::size_t n = w.values.size();
  if (phi.values.size() != n) throw Error(ErrorKind::DimensionMismatch, "relative entropy of unequal dimensions");
  const double w_cut = support_cutoff(w.values);
  const double phi_cut = support_cutoff(phi.values);

  // overlap(i, j) = |⟨u_i|v_j⟩|²
  const Matrix cross = w.vectors.adjoint() * phi.vectors;
  double leak = 0.0;
  double cross_term = 0.0;
  double self_term = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lam = w.values[i];
    if (lam <= w_cut) continue;
    self_term += lam * std::log(lam);
    for (std::size_t j = 0; j < n; ++j) {
      const double overlap = std::norm(cross(i, j));
      if (phi.values[j] > phi_cut) {
        cross_term += overlap * lam * std::log(phi.values[j]);
      } else {
        leak += overlap * lam;
      }
    }
  }
  if (leak > kSupportLeakTol) return EntropyValue::infinite();
  return EntropyValue::of(self_term - cross_term);
}

EntropyValue relative_entropy(const DensityOperator& w, const DensityOperator& phi) {
  if (w.dim() != phi.dim()) throw Error(ErrorKind::DimensionMismatch, "relative entropy of unequal dimensions");
  return relative_entropy(w.eig(), phi.eig());
}

EntropyValue mutual_entropy(const CompoundState& w) {
  const auto [sigma, rho] = marginals(w);
  const EigenSystem eig_sigma = sigma.eig();
  const EigenSystem eig_rho = rho.eig();
  const EigenSystem eig_w = w.omega().eig();
  const EntropyValue rel = relative_entropy(eig_w, product_eig(eig_sigma, eig_rho));
  if (!rel.finite) {
    throw Error(ErrorKind::NumericalInconsistency, "compound state not dominated by its marginals");
  }
  const double identity = von_neumann_of_spectrum(eig_sigma.values) + von_neumann_of_spectrum(eig_rho.values) -
                          von_neumann_of_spectrum(eig_w.values);
  if (std::abs(identity - rel.nats) > kMutualCrossCheckTol) {
    throw Error(ErrorKind::NumericalInconsistency,
                "mutual entropy " + std::to_string(rel.nats) + " vs entropy identity " + std::to_string(identity));
  }
  return rel;
}

EntropyValue q_entropy(const DensityOperator& rho, Verify verify) {
  const double closed = 2.0 * von_neumann(rho).nats;
  if (verify == Verify::Yes) {
    const double via_compound = mutual_entropy(standard_compound(rho)).nats;
    if (std::abs(via_compound - closed) > kMutualCrossCheckTol) {
      throw Error(ErrorKind::NumericalInconsistency, "q-entropy " + std::to_string(closed) +
                                                         " vs standard compound " + std::to_string(via_compound));
    }
  }
  return EntropyValue::of(closed);
}

ConditionalEntropies conditional_and_disentanglement(const CompoundState& w) {
  const DensityOperator sigma = marginals(w).first;
  const double s = von_neumann(sigma).nats;
  const double info = mutual_entropy(w).nats;
  return {EntropyValue::of(2.0 * s - info), EntropyValue::of(s - info)};
}

}  // namespace qent
