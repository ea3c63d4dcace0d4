#pragma once

#include <cstdint>
#include <vector>

#include "skewcorr/channels.hpp"
#include "skewcorr/measures.hpp"

namespace skewcorr {

/// d^2 reals: d diagonal entries of a Hermitian H, then (re, im) of each
/// upper off-diagonal entry in lexicographic (j, k) order. The unitary is
/// exp(iH).
struct UnitaryParams {
  Eigen::Index dim = 0;
  std::vector<double> theta;
};

Matrix hermitian_from_params(const UnitaryParams& p);
Matrix unitary_from_params(const UnitaryParams& p);
/// Inverse of unitary_from_params up to 2 pi branch choices.
UnitaryParams params_from_unitary(const Matrix& u);
/// Columns of u.
MeasurementBasis basis_from_unitary(const Matrix& u);

struct OptBudget {
  int restarts = 32;
  int max_evals = 2000;
  double tol = 1e-9;
  std::uint64_t seed = 42;
};

struct RestartRecord {
  int restart;
  double best_value;  // best over restarts 0..restart
};

struct OptResult {
  double value = 0.0;
  UnitaryParams argopt;
  int restarts_used = 0;
  bool converged = false;
  std::vector<RestartRecord> trace;
};

// Objectives, exposed so results can be re-evaluated at reported parameters.

/// D^T_a(rho_AB | Pi_A) for the von Neumann measurement in the columns of u.
double projective_correlation(const BipartiteState& state, const Matrix& u, MeasureParams params);
/// T_a(rho_AB, Pi_A (x) I_B) for the columns of u.
double projective_global_skew(const BipartiteState& state, const Matrix& u, MeasureParams params);
/// D^T_a(rho_AB | U_A) for the unitary channel u.
double unitary_correlation(const BipartiteState& state, const Matrix& u, MeasureParams params);

/// max over von Neumann measurements Pi_A of D^T_a(rho_AB | Pi_A).
OptResult max_corr_projective(const BipartiteState& state, MeasureParams params, const OptBudget& budget);
/// min over Pi_A of D^T_a(rho_AB | Pi_A).
OptResult min_corr_projective(const BipartiteState& state, MeasureParams params, const OptBudget& budget);
/// min over Pi_A of T_{1/2}(rho_AB, Pi_A (x) I_B).
OptResult geometric_discord(const BipartiteState& state, const OptBudget& budget);
/// max over unitary U_A of D^T_a(rho_AB | U_A).
OptResult max_corr_unitary(const BipartiteState& state, MeasureParams params, const OptBudget& budget);
/// max of T_{1/2}(rho_AB, Pi_A (x) I_B) over Pi_A leaving rho_A invariant,
/// i.e. over eigenbases of rho_A. Eigenvalues closer than 1e-8 share a block.
OptResult min_nondisturbing_max(const BipartiteState& state, const OptBudget& budget);

inline constexpr double kDegeneracyThreshold = 1e-8;

}  // namespace skewcorr
