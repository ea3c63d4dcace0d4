#pragma once

#include <span>
#include <vector>

#include "skewcorr/linalg.hpp"

namespace skewcorr {

/// A completely positive map given by its Kraus operators. Trace
/// preservation is not required; see QuantumChannel.
class KrausMap {
 public:
  explicit KrausMap(std::vector<Matrix> kraus_ops);

  Eigen::Index dim() const { return dim_; }
  const std::vector<Matrix>& kraus_ops() const { return ops_; }
  /// sum_i K_i^dagger K_i
  const Matrix& weight_sum() const { return weight_sum_; }
  double completeness_deviation() const;

  /// sum_i K_i x K_i^dagger
  Matrix apply(const Matrix& x) const;

 private:
  Eigen::Index dim_;
  std::vector<Matrix> ops_;
  Matrix weight_sum_;
};

/// KrausMap whose operators satisfy sum_i K_i^dagger K_i = I.
class QuantumChannel : public KrausMap {
 public:
  explicit QuantumChannel(std::vector<Matrix> kraus_ops);
  explicit QuantumChannel(KrausMap map);
};

class MeasurementBasis {
 public:
  /// Columns of `vectors` are the basis vectors.
  explicit MeasurementBasis(Matrix vectors);

  Eigen::Index dim() const { return vectors_.cols(); }
  const Matrix& vectors() const { return vectors_; }
  Vector vector(Eigen::Index i) const { return vectors_.col(i); }
  Matrix projector(Eigen::Index i) const;

 private:
  Matrix vectors_;
};

MeasurementBasis computational_basis(Eigen::Index d);

/// d^2 Hermitian operators, orthonormal under tr(W_l W_m), with
/// sum_l W_l^2 = d I.
struct HermitianOperatorBasis {
  Eigen::Index dim;
  std::vector<Matrix> operators;
};

QuantumChannel make_channel(std::vector<Matrix> ops);
Matrix apply(const KrausMap& map, const Matrix& x);

QuantumChannel identity_channel(Eigen::Index d);
QuantumChannel amplitude_damping(double p);
QuantumChannel unitary_channel(const Matrix& u);
QuantumChannel projective_channel(const MeasurementBasis& basis);

/// Generalized Gell-Mann operators: symmetric off-diagonal (j < k,
/// lexicographic), antisymmetric off-diagonal, diagonal, then I / sqrt(d).
HermitianOperatorBasis hermitian_operator_basis(Eigen::Index d);
QuantumChannel depolarizing_channel(Eigen::Index d);

/// Kraus operators K_i (x) I_{dim_b}.
KrausMap lift_left(const KrausMap& phi, Eigen::Index dim_b);
QuantumChannel lift_left(const QuantumChannel& phi, Eigen::Index dim_b);
/// Kraus operators I_{dim_a} (x) K_i.
KrausMap lift_right(const KrausMap& phi, Eigen::Index dim_a);
QuantumChannel lift_right(const QuantumChannel& phi, Eigen::Index dim_a);

/// Kraus operators U^dagger K_i U.
KrausMap conjugate(const KrausMap& phi, const Matrix& u);
QuantumChannel conjugate(const QuantumChannel& phi, const Matrix& u);

/// sum_j c_j Phi_j, realized by the Kraus list {sqrt(c_j) K_i^(j)}.
KrausMap positive_mix(std::span<const double> coeffs, std::span<const KrausMap> maps);

}  // namespace skewcorr
