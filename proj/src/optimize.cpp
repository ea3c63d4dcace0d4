#include "skewcorr/optimize.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "skewcorr/nelder_mead.hpp"
#include "skewcorr/sampling.hpp"

namespace skewcorr {

Matrix hermitian_from_params(const UnitaryParams& p) {
  const auto d = p.dim;
  if (d < 1 || p.theta.size() != static_cast<std::size_t>(d * d)) {
    throw Error(ErrorKind::InvalidArgument,
                fmt::format("{} parameters for dimension {}", p.theta.size(), d));
  }
  Matrix h = Matrix::Zero(d, d);
  std::size_t idx = 0;
  for (Eigen::Index j = 0; j < d; ++j) h(j, j) = p.theta[idx++];
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = j + 1; k < d; ++k) {
      h(j, k) = Complex(p.theta[idx], p.theta[idx + 1]);
      h(k, j) = std::conj(h(j, k));
      idx += 2;
    }
  }
  return h;
}

Matrix unitary_from_params(const UnitaryParams& p) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_from_params(p));
  const auto& lambda = solver.eigenvalues();
  Vector phases(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) phases[i] = std::polar(1.0, lambda[i]);
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

UnitaryParams params_from_unitary(const Matrix& u) {
  require_unitary(u);
  const auto d = u.rows();
  // A unitary is normal, so its complex Schur form is diagonal.
  Eigen::ComplexSchur<Matrix> schur(u);
  const Matrix& t = schur.matrixT();
  const Matrix& q = schur.matrixU();
  RealVector angles(d);
  for (Eigen::Index i = 0; i < d; ++i) angles[i] = std::arg(t(i, i));
  const Matrix h = symmetrize(q * angles.cast<Complex>().asDiagonal() * q.adjoint());

  UnitaryParams p{d, {}};
  p.theta.reserve(static_cast<std::size_t>(d * d));
  for (Eigen::Index j = 0; j < d; ++j) p.theta.push_back(h(j, j).real());
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = j + 1; k < d; ++k) {
      p.theta.push_back(h(j, k).real());
      p.theta.push_back(h(j, k).imag());
    }
  }
  return p;
}

MeasurementBasis basis_from_unitary(const Matrix& u) {
  require_unitary(u);
  return MeasurementBasis(u);
}

namespace {

struct PreparedState {
  Eigen::Index da;
  Eigen::Index db;
  StatePowers global;
  StatePowers local;
};

PreparedState prepare(const BipartiteState& state, MeasureParams params) {
  return {state.dim_a(), state.dim_b(), state_powers(state.state(), params),
          state_powers(partial_trace(state, Subsystem::A), params)};
}

void require_dim_a(const PreparedState& s, const Matrix& u) {
  if (u.rows() != s.da || u.cols() != s.da) {
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("{}x{} unitary for subsystem A of dimension {}", u.rows(), u.cols(), s.da));
  }
}

// (v^dagger (x) I_B) m (v (x) I_B)
Matrix compress(const Matrix& m, const Vector& v, Eigen::Index da, Eigen::Index db) {
  Matrix out = Matrix::Zero(db, db);
  for (Eigen::Index a = 0; a < da; ++a) {
    for (Eigen::Index b = 0; b < da; ++b) {
      const Complex c = std::conj(v[a]) * v[b];
      if (c != Complex(0.0, 0.0)) out += c * m.block(a * db, b * db, db, db);
    }
  }
  return out;
}

double global_projective_skew(const PreparedState& s, const Matrix& u) {
  Complex overlap = 0.0;
  for (Eigen::Index i = 0; i < s.da; ++i) {
    const Vector v = u.col(i);
    overlap += (compress(s.global.alpha_power, v, s.da, s.db) *
                compress(s.global.complement_power, v, s.da, s.db))
                   .trace();
  }
  return 1.0 - checked_real(overlap, "projective overlap");
}

double local_projective_skew(const PreparedState& s, const Matrix& u) {
  Complex overlap = 0.0;
  for (Eigen::Index i = 0; i < s.da; ++i) {
    const Vector v = u.col(i);
    overlap += v.dot(s.local.complement_power * v) * v.dot(s.local.alpha_power * v);
  }
  return 1.0 - checked_real(overlap, "projective overlap");
}

double unitary_objective(const PreparedState& s, const Matrix& u) {
  const Matrix lifted = kron(u, identity(s.db));
  const Complex local = (s.local.alpha_power * u * s.local.complement_power * u.adjoint()).trace();
  const Complex global =
      (s.global.alpha_power * lifted * s.global.complement_power * lifted.adjoint()).trace();
  return checked_real(local - global, "unitary correlation");
}

struct SearchOutcome {
  std::vector<double> best_x;
  double best_value;
  int restarts_used;
  bool any_converged;
  std::vector<RestartRecord> trace;
};

void validate(const OptBudget& budget) {
  if (budget.restarts < 1 || budget.max_evals < 1 || !(budget.tol > 0.0)) {
    throw Error(ErrorKind::InvalidArgument,
                fmt::format("invalid budget: restarts {}, max evals {}, tol {}", budget.restarts,
                            budget.max_evals, budget.tol));
  }
}

// Restart 0 starts at the origin, restart r > 0 at a point drawn uniformly
// from [-pi, pi]^n with a seed derived from (budget.seed, r), so the start
// points do not depend on execution order. Ties keep the lowest restart.
SearchOutcome multistart(std::size_t n, const Objective& f, bool maximize, const OptBudget& budget) {
  validate(budget);
  const double sign = maximize ? -1.0 : 1.0;
  const Objective signed_f = [&](std::span<const double> x) { return sign * f(x); };
  const NelderMeadOptions options{budget.max_evals, budget.tol, 0.5};

  SearchOutcome out{{}, 0.0, 0, false, {}};
  double best_signed = 0.0;
  for (int r = 0; r < budget.restarts; ++r) {
    std::vector<double> x0(n, 0.0);
    if (r > 0) {
      SeededRng rng(derive_seed(budget.seed, static_cast<std::uint64_t>(r)));
      for (auto& x : x0) x = rng.uniform(-std::numbers::pi, std::numbers::pi);
    }
    const NelderMeadResult local = nelder_mead_minimize(signed_f, std::move(x0), options);
    out.any_converged = out.any_converged || local.converged;
    if (r == 0 || local.value < best_signed) {
      best_signed = local.value;
      out.best_x = local.x;
    }
    out.trace.push_back({r, sign * best_signed});
    ++out.restarts_used;
  }
  out.best_value = sign * best_signed;
  if (!out.any_converged) {
    throw Error(ErrorKind::NotConverged,
                fmt::format("no restart converged within {} evaluations (best value {:.12g})",
                            budget.max_evals, out.best_value));
  }
  return out;
}

template <typename Eval>
OptResult search_unitaries(Eigen::Index d, Eval&& eval, bool maximize, const OptBudget& budget) {
  const Objective f = [&](std::span<const double> x) {
    return eval(unitary_from_params(UnitaryParams{d, {x.begin(), x.end()}}));
  };
  SearchOutcome s = multistart(static_cast<std::size_t>(d * d), f, maximize, budget);
  OptResult result;
  result.argopt = UnitaryParams{d, std::move(s.best_x)};
  result.value = eval(unitary_from_params(result.argopt));
  result.restarts_used = s.restarts_used;
  result.converged = s.any_converged;
  result.trace = std::move(s.trace);
  return result;
}

}  // namespace

double projective_correlation(const BipartiteState& state, const Matrix& u, MeasureParams params) {
  const PreparedState s = prepare(state, params);
  require_dim_a(s, u);
  return global_projective_skew(s, u) - local_projective_skew(s, u);
}

double projective_global_skew(const BipartiteState& state, const Matrix& u, MeasureParams params) {
  const PreparedState s = prepare(state, params);
  require_dim_a(s, u);
  return global_projective_skew(s, u);
}

double unitary_correlation(const BipartiteState& state, const Matrix& u, MeasureParams params) {
  const PreparedState s = prepare(state, params);
  require_dim_a(s, u);
  return unitary_objective(s, u);
}

OptResult max_corr_projective(const BipartiteState& state, MeasureParams params, const OptBudget& budget) {
  const PreparedState s = prepare(state, params);
  auto eval = [&](const Matrix& u) { return global_projective_skew(s, u) - local_projective_skew(s, u); };
  return search_unitaries(s.da, eval, true, budget);
}

OptResult min_corr_projective(const BipartiteState& state, MeasureParams params, const OptBudget& budget) {
  const PreparedState s = prepare(state, params);
  auto eval = [&](const Matrix& u) { return global_projective_skew(s, u) - local_projective_skew(s, u); };
  return search_unitaries(s.da, eval, false, budget);
}

OptResult geometric_discord(const BipartiteState& state, const OptBudget& budget) {
  const PreparedState s = prepare(state, MeasureParams(0.5));
  auto eval = [&](const Matrix& u) { return global_projective_skew(s, u); };
  return search_unitaries(s.da, eval, false, budget);
}

OptResult max_corr_unitary(const BipartiteState& state, MeasureParams params, const OptBudget& budget) {
  const PreparedState s = prepare(state, params);
  auto eval = [&](const Matrix& u) { return unitary_objective(s, u); };
  return search_unitaries(s.da, eval, true, budget);
}

OptResult min_nondisturbing_max(const BipartiteState& state, const OptBudget& budget) {
  validate(budget);
  const PreparedState s = prepare(state, MeasureParams(0.5));
  const DensityMatrix rho_a = partial_trace(state, Subsystem::A);
  const auto& [values, vectors] = rho_a.eig();

  // Degenerate blocks of the ascending spectrum: [start, start + size).
  std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (!blocks.empty() && values[i] - values[i - 1] <= kDegeneracyThreshold) {
      ++blocks.back().second;
    } else {
      blocks.emplace_back(i, 1);
    }
  }
  std::size_t n_params = 0;
  for (const auto& [start, size] : blocks) n_params += (size > 1) ? static_cast<std::size_t>(size * size) : 0;

  auto eval = [&](const Matrix& u) { return global_projective_skew(s, u); };
  OptResult result;
  if (n_params == 0) {
    result.argopt = params_from_unitary(vectors);
    result.value = eval(unitary_from_params(result.argopt));
    result.restarts_used = 0;
    result.converged = true;
    result.trace = {{0, result.value}};
    return result;
  }

  auto rotated = [&](std::span<const double> x) {
    Matrix rotation = identity(s.da);
    std::size_t offset = 0;
    for (const auto& [start, size] : blocks) {
      if (size == 1) continue;
      const auto count = static_cast<std::size_t>(size * size);
      UnitaryParams p{size, {x.begin() + static_cast<std::ptrdiff_t>(offset),
                             x.begin() + static_cast<std::ptrdiff_t>(offset + count)}};
      rotation.block(start, start, size, size) = unitary_from_params(p);
      offset += count;
    }
    return Matrix(vectors * rotation);
  };
  const Objective f = [&](std::span<const double> x) { return eval(rotated(x)); };
  SearchOutcome search = multistart(n_params, f, true, budget);
  result.argopt = params_from_unitary(rotated(search.best_x));
  result.value = eval(unitary_from_params(result.argopt));
  result.restarts_used = search.restarts_used;
  result.converged = search.any_converged;
  result.trace = std::move(search.trace);
  return result;
}

}  // namespace skewcorr
