#pragma once

#include "skewcorr/channels.hpp"
#include "skewcorr/linalg.hpp"

namespace skewcorr {

/// Skew parameter alpha, strictly inside (0, 1).
class MeasureParams {
 public:
  explicit MeasureParams(double alpha);
  double alpha() const { return alpha_; }

 private:
  double alpha_;
};

/// rho^alpha and rho^(1 - alpha), computed once and shared by every trace.
struct StatePowers {
  Matrix rho;
  Matrix alpha_power;
  Matrix complement_power;
};

StatePowers state_powers(const DensityMatrix& rho, MeasureParams params);

/// tr(rho K^dagger K) - tr(rho K) tr(rho K^dagger)
double variance(const DensityMatrix& rho, const Matrix& k);

/// -1/2 tr([rho^a, K][rho^(1-a), K^dagger]) via its four-trace expansion.
double gwyd_skew(const DensityMatrix& rho, const Matrix& k, MeasureParams params);

/// tr(rho K^dagger K) - tr(rho^a K rho^(1-a) K^dagger). Can be negative
/// for non-Hermitian K.
double mwyd_skew(const DensityMatrix& rho, const Matrix& k, MeasureParams params);

/// Kraus sum of mwyd_skew.
double mwyd_channel(const DensityMatrix& rho, const KrausMap& phi, MeasureParams params);

/// As above, and additionally checks the Kraus sum against the closed form
/// 1 - tr(rho^a Phi(rho^(1-a))); throws FormDisagreement on mismatch.
double mwyd_channel(const DensityMatrix& rho, const QuantumChannel& phi, MeasureParams params);

/// 1 - tr(rho^a Phi(rho^(1-a))) without any trace-preservation check.
double mwyd_channel_closed_form(const DensityMatrix& rho, const KrausMap& phi, MeasureParams params);

/// F(t) = tr(rho^t Phi(rho^(1-t))) for t in [0, 1]; endpoints use the
/// support-projector convention for rho^0.
double channel_overlap(const DensityMatrix& rho, const KrausMap& phi, double t);

double gwyd_channel(const DensityMatrix& rho, const KrausMap& phi, MeasureParams params);

/// Every term of the two correlation measures, without a sign guard.
struct CorrelationTerms {
  double t_global;  // T_a(rho_AB, Phi_A (x) I_B)
  double t_local;   // T_a(rho_A, Phi_A)
  double i_global;
  double i_local;

  double dt() const { return t_global - t_local; }
  double d() const { return i_global - i_local; }
};

CorrelationTerms correlation_terms(const BipartiteState& state, const KrausMap& phi_a,
                                   MeasureParams params);

/// T_a(rho_AB, Phi_A (x) I_B) - T_a(rho_A, Phi_A). Throws
/// NegativeCorrelation below -1e-9.
double corr_t(const BipartiteState& state, const QuantumChannel& phi_a, MeasureParams params);
/// Same with the generalized skew information I_a.
double corr_i(const BipartiteState& state, const QuantumChannel& phi_a, MeasureParams params);

/// 1 - sum_i <i|rho^(1-a)|i><i|rho^a|i>
double projective_skew(const DensityMatrix& rho, const MeasurementBasis& basis, MeasureParams params);

/// Correlation relative to the Haar twirl on A, in closed form:
/// (1/d)[tr rho_A^a tr rho_A^(1-a) - tr(tr_A(rho^a) tr_A(rho^(1-a)))].
double twirl_corr_closed(const BipartiteState& state, MeasureParams params);

inline constexpr double kNegativityGuard = 1e-9;

// Worked two-qubit example: the pure state (|00> + |01> - |10>)/sqrt(3)
// under amplitude damping on A.
BipartiteState example1_state();
/// Reference closed form for the T-based correlation, kept for comparison
/// only. It does not vanish at p = 0.
double example1_closed_dt(double p, double alpha);
/// Reference closed form for the I-based correlation.
double example1_closed_d(double p, double alpha);

}  // namespace skewcorr
