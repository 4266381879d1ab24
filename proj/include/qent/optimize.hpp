#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qent {

struct SearchOptions {
  std::size_t max_iters = 400;  // exploratory sweeps
  double tol = 1e-10;           // a sweep gaining less than this counts as a failure
  double initial_step = 0.25;
  double min_step = 1e-7;
};

struct SearchResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

// Hooke-Jeeves pattern search maximizing `objective`. Each sweep probes ±step
// along every coordinate; a successful sweep is followed by a pattern move
// along the accumulated direction, a failed one halves the step. Converged
// when the step drops below min_step within max_iters sweeps.
SearchResult pattern_search(const Objective& objective, std::vector<double> x0, const SearchOptions& opts);

}  // namespace qent
