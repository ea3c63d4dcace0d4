#include "skewcorr/measures.hpp"

#include <cmath>

#include <fmt/format.h>

namespace skewcorr {

namespace {

// tr(a b) without forming the product.
Complex trace_product(const Matrix& a, const Matrix& b) {
  return (a.array() * b.transpose().array()).sum();
}

void require_operator_dim(const Matrix& rho, const Matrix& k) {
  if (k.rows() != rho.rows() || k.cols() != rho.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("operator is {}x{}, state has dimension {}", k.rows(), k.cols(), rho.rows()));
  }
}

void require_map_dim(const Matrix& rho, const KrausMap& phi) {
  if (phi.dim() != rho.rows()) {
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("channel acts on dimension {}, state has dimension {}", phi.dim(), rho.rows()));
  }
}

// tr(rho^a K rho^(1-a) K^dagger)
Complex skew_overlap(const StatePowers& pw, const Matrix& k) {
  return trace_product(pw.alpha_power * k, pw.complement_power * k.adjoint());
}

double mwyd_skew(const StatePowers& pw, const Matrix& k) {
  const Complex v = trace_product(pw.rho, k.adjoint() * k) - skew_overlap(pw, k);
  return checked_real(v, "T_alpha(rho, K)");
}

double gwyd_skew(const StatePowers& pw, const Matrix& k) {
  const Matrix kd = k.adjoint();
  const Complex v = 0.5 * (trace_product(pw.rho, k * kd) -
                           trace_product(pw.alpha_power * kd, pw.complement_power * k) +
                           trace_product(pw.rho, kd * k) - skew_overlap(pw, k));
  return checked_real(v, "I_alpha(rho, K)");
}

double mwyd_kraus_sum(const StatePowers& pw, const KrausMap& phi) {
  double sum = 0.0;
  for (const auto& k : phi.kraus_ops()) sum += mwyd_skew(pw, k);
  return sum;
}

double gwyd_kraus_sum(const StatePowers& pw, const KrausMap& phi) {
  double sum = 0.0;
  for (const auto& k : phi.kraus_ops()) sum += gwyd_skew(pw, k);
  return sum;
}

double closed_form(const StatePowers& pw, const KrausMap& phi) {
  const Complex overlap = trace_product(pw.alpha_power, phi.apply(pw.complement_power));
  return 1.0 - checked_real(overlap, "tr rho^a Phi(rho^(1-a))");
}

double checked_mwyd(const StatePowers& pw, const QuantumChannel& phi) {
  const double kraus = mwyd_kraus_sum(pw, phi);
  const double closed = closed_form(pw, phi);
  // The two forms differ by tr(rho (sum K^dagger K - I)).
  const double allowed =
      tol::kStructure + static_cast<double>(phi.dim()) * phi.completeness_deviation();
  if (std::abs(kraus - closed) > allowed) {
    throw Error(ErrorKind::FormDisagreement,
                fmt::format("Kraus sum {:.12g} vs closed form {:.12g}", kraus, closed),
                std::abs(kraus - closed));
  }
  return kraus;
}

void guard_negativity(double value, const char* name) {
  if (value < -kNegativityGuard) {
    throw Error(ErrorKind::NegativeCorrelation, fmt::format("{} = {:.3e}", name, value), -value);
  }
}

}  // namespace

MeasureParams::MeasureParams(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("alpha = {} is not in (0, 1)", alpha));
  }
}

StatePowers state_powers(const DensityMatrix& rho, MeasureParams params) {
  return {rho.matrix(), frac_power(rho, params.alpha()), frac_power(rho, 1.0 - params.alpha())};
}

double variance(const DensityMatrix& rho, const Matrix& k) {
  require_operator_dim(rho.matrix(), k);
  const Matrix& r = rho.matrix();
  const Complex v = trace_product(r, k.adjoint() * k) - trace_product(r, k) * trace_product(r, k.adjoint());
  return checked_real(v, "V(rho, K)");
}

double gwyd_skew(const DensityMatrix& rho, const Matrix& k, MeasureParams params) {
  require_operator_dim(rho.matrix(), k);
  return gwyd_skew(state_powers(rho, params), k);
}

double mwyd_skew(const DensityMatrix& rho, const Matrix& k, MeasureParams params) {
  require_operator_dim(rho.matrix(), k);
  return mwyd_skew(state_powers(rho, params), k);
}

double mwyd_channel(const DensityMatrix& rho, const KrausMap& phi, MeasureParams params) {
  require_map_dim(rho.matrix(), phi);
  return mwyd_kraus_sum(state_powers(rho, params), phi);
}

double mwyd_channel(const DensityMatrix& rho, const QuantumChannel& phi, MeasureParams params) {
  require_map_dim(rho.matrix(), phi);
  return checked_mwyd(state_powers(rho, params), phi);
}

double mwyd_channel_closed_form(const DensityMatrix& rho, const KrausMap& phi, MeasureParams params) {
  require_map_dim(rho.matrix(), phi);
  return closed_form(state_powers(rho, params), phi);
}

double channel_overlap(const DensityMatrix& rho, const KrausMap& phi, double t) {
  require_map_dim(rho.matrix(), phi);
  const Matrix left = frac_power(rho, t);
  const Matrix right = frac_power(rho, 1.0 - t);
  return checked_real(trace_product(left, phi.apply(right)), "F(t)");
}

double gwyd_channel(const DensityMatrix& rho, const KrausMap& phi, MeasureParams params) {
  require_map_dim(rho.matrix(), phi);
  return gwyd_kraus_sum(state_powers(rho, params), phi);
}

CorrelationTerms correlation_terms(const BipartiteState& state, const KrausMap& phi_a,
                                   MeasureParams params) {
  if (phi_a.dim() != state.dim_a()) {
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("channel acts on dimension {}, subsystem A has dimension {}", phi_a.dim(),
                            state.dim_a()));
  }
  const DensityMatrix rho_a = partial_trace(state, Subsystem::A);
  const KrausMap lifted = lift_left(phi_a, state.dim_b());
  const StatePowers global = state_powers(state.state(), params);
  const StatePowers local = state_powers(rho_a, params);
  return {mwyd_kraus_sum(global, lifted), mwyd_kraus_sum(local, phi_a), gwyd_kraus_sum(global, lifted),
          gwyd_kraus_sum(local, phi_a)};
}

double corr_t(const BipartiteState& state, const QuantumChannel& phi_a, MeasureParams params) {
  if (phi_a.dim() != state.dim_a()) {
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("channel acts on dimension {}, subsystem A has dimension {}", phi_a.dim(),
                            state.dim_a()));
  }
  const DensityMatrix rho_a = partial_trace(state, Subsystem::A);
  const QuantumChannel lifted = lift_left(phi_a, state.dim_b());
  const double value = checked_mwyd(state_powers(state.state(), params), lifted) -
                       checked_mwyd(state_powers(rho_a, params), phi_a);
  guard_negativity(value, "D^T_alpha");
  return value;
}

double corr_i(const BipartiteState& state, const QuantumChannel& phi_a, MeasureParams params) {
  const double value = correlation_terms(state, phi_a, params).d();
  guard_negativity(value, "D_alpha");
  return value;
}

double projective_skew(const DensityMatrix& rho, const MeasurementBasis& basis, MeasureParams params) {
  if (basis.dim() != rho.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("basis of dimension {} for state of dimension {}", basis.dim(), rho.dim()));
  }
  const Matrix lo = frac_power(rho, params.alpha());
  const Matrix hi = frac_power(rho, 1.0 - params.alpha());
  Complex sum = 0.0;
  for (Eigen::Index i = 0; i < basis.dim(); ++i) {
    const Vector v = basis.vector(i);
    sum += v.dot(hi * v) * v.dot(lo * v);
  }
  return 1.0 - checked_real(sum, "sum <i|rho^(1-a)|i><i|rho^a|i>");
}

double twirl_corr_closed(const BipartiteState& state, MeasureParams params) {
  const auto da = state.dim_a();
  const auto db = state.dim_b();
  const DensityMatrix rho_a = partial_trace(state, Subsystem::A);
  const Complex local = frac_power(rho_a, params.alpha()).trace() *
                        frac_power(rho_a, 1.0 - params.alpha()).trace();
  const Matrix lo_b = partial_trace(frac_power(state.state(), params.alpha()), da, db, Subsystem::B);
  const Matrix hi_b =
      partial_trace(frac_power(state.state(), 1.0 - params.alpha()), da, db, Subsystem::B);
  const Complex global = trace_product(lo_b, hi_b);
  return checked_real(local - global, "twirl correlation") / static_cast<double>(da);
}

}  // namespace skewcorr
