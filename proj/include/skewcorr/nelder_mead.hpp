#pragma once

#include <functional>
#include <span>
#include <vector>

namespace skewcorr {

struct NelderMeadOptions {
  int max_evals = 2000;
  double diameter_tol = 1e-9;
  double initial_step = 0.5;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value;
  int evals;
  bool converged;
};

using Objective = std::function<double(std::span<const double>)>;

/// Minimizes `f` from `x0` with the standard simplex coefficients
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2). Converged
/// means the simplex diameter (max-norm distance of every vertex from the
/// best one) dropped below diameter_tol within max_evals evaluations.
NelderMeadResult nelder_mead_minimize(const Objective& f, std::vector<double> x0,
                                      const NelderMeadOptions& options);

}  // namespace skewcorr
