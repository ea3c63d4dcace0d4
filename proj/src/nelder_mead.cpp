#include "skewcorr/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "skewcorr/errors.hpp"

namespace skewcorr {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

double diameter(const std::vector<Vertex>& simplex) {
  double d = 0.0;
  const auto& best = simplex.front().x;
  for (std::size_t v = 1; v < simplex.size(); ++v)
    for (std::size_t i = 0; i < best.size(); ++i) d = std::max(d, std::abs(simplex[v].x[i] - best[i]));
  return d;
}

}  // namespace

NelderMeadResult nelder_mead_minimize(const Objective& f, std::vector<double> x0,
                                      const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "empty parameter vector");
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };

  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  simplex.push_back({x0, eval(x0)});
  for (std::size_t i = 0; i < n; ++i) {
    auto x = x0;
    x[i] += options.initial_step;
    simplex.push_back({x, eval(x)});
  }
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };

  std::vector<double> centroid(n), trial(n);
  auto along = [&](double coeff) {
    // centroid + coeff * (centroid - worst)
    const auto& worst = simplex.back().x;
    for (std::size_t i = 0; i < n; ++i) trial[i] = centroid[i] + coeff * (centroid[i] - worst[i]);
    return trial;
  };

  bool converged = false;
  while (true) {
    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    if (diameter(simplex) < options.diameter_tol) {
      converged = true;
      break;
    }
    if (evals >= options.max_evals) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i];
    for (auto& c : centroid) c /= static_cast<double>(n);

    const double f_best = simplex.front().f;
    const double f_second_worst = simplex[n - 1].f;
    const double f_worst = simplex.back().f;

    const std::vector<double> reflected = along(1.0);
    const double f_r = eval(reflected);
    if (f_r < f_best) {
      const std::vector<double> expanded = along(2.0);
      const double f_e = eval(expanded);
      simplex.back() = (f_e < f_r) ? Vertex{expanded, f_e} : Vertex{reflected, f_r};
      continue;
    }
    if (f_r < f_second_worst) {
      simplex.back() = {reflected, f_r};
      continue;
    }
    const bool outside = f_r < f_worst;
    const std::vector<double> contracted = along(outside ? 0.5 : -0.5);
    const double f_c = eval(contracted);
    if (f_c < (outside ? f_r : f_worst)) {
      simplex.back() = {contracted, f_c};
      continue;
    }
    const auto best = simplex.front().x;
    for (std::size_t v = 1; v <= n; ++v) {
      for (std::size_t i = 0; i < n; ++i) simplex[v].x[i] = best[i] + 0.5 * (simplex[v].x[i] - best[i]);
      simplex[v].f = eval(simplex[v].x);
    }
  }
  return {simplex.front().x, simplex.front().f, evals, converged};
}

}  // namespace skewcorr
