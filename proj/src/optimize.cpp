#include "qent/optimize.hpp"

#include <cmath>

namespace qent {

namespace {

// One exploratory sweep around `x` (value `fx`); updates both in place.
void explore(const Objective& objective, std::vector<double>& x, double& fx, double step) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double base = x[i];
    x[i] = base + step;
    const double up = objective(x);
    if (up > fx) {
      fx = up;
      continue;
    }
    x[i] = base - step;
    const double down = objective(x);
    if (down > fx) {
      fx = down;
      continue;
    }
    x[i] = base;
  }
}

}  // namespace

SearchResult pattern_search(const Objective& objective, std::vector<double> x0, const SearchOptions& opts) {
  SearchResult result;
  result.x = std::move(x0);
  result.value = objective(result.x);
  double step = opts.initial_step;

  while (result.iterations < opts.max_iters) {
    if (step < opts.min_step) {
      result.converged = true;
      break;
    }
    ++result.iterations;
    std::vector<double> trial = result.x;
    double f_trial = result.value;
    explore(objective, trial, f_trial, step);
    if (!(f_trial - result.value >= opts.tol)) {
      if (f_trial > result.value) {
        result.x = std::move(trial);
        result.value = f_trial;
      }
      step *= 0.5;
      continue;
    }
    // Pattern moves: keep extrapolating while they pay off.
    std::vector<double> prev = result.x;
    result.x = std::move(trial);
    result.value = f_trial;
    while (result.iterations < opts.max_iters) {
      std::vector<double> jump(result.x.size());
      for (std::size_t i = 0; i < jump.size(); ++i) jump[i] = 2.0 * result.x[i] - prev[i];
      double f_jump = objective(jump);
      explore(objective, jump, f_jump, step);
      ++result.iterations;
      if (!(f_jump > result.value)) break;
      prev = result.x;
      result.x = std::move(jump);
      result.value = f_jump;
    }
  }
  if (!result.converged && step < opts.min_step) result.converged = true;
  return result;
}

}  // namespace qent
