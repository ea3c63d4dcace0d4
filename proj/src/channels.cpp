#include "skewcorr/channels.hpp"

#include <cmath>

#include <fmt/format.h>

namespace skewcorr {

KrausMap::KrausMap(std::vector<Matrix> kraus_ops) : dim_(0), ops_(std::move(kraus_ops)) {
  if (ops_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "empty Kraus operator list");
  }
  dim_ = ops_.front().rows();
  for (const auto& k : ops_) {
    if (k.rows() != k.cols() || k.rows() != dim_ || dim_ == 0) {
      throw Error(ErrorKind::DimensionMismatch,
                  fmt::format("Kraus operator is {}x{}, expected {}x{}", k.rows(), k.cols(), dim_, dim_));
    }
  }
  weight_sum_ = Matrix::Zero(dim_, dim_);
  for (const auto& k : ops_) weight_sum_ += k.adjoint() * k;
  weight_sum_ = symmetrize(weight_sum_);
}

double KrausMap::completeness_deviation() const { return max_abs(weight_sum_ - identity(dim_)); }

Matrix KrausMap::apply(const Matrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_) {
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("operand is {}x{}, channel acts on dimension {}", x.rows(), x.cols(), dim_));
  }
  Matrix out = Matrix::Zero(dim_, dim_);
  for (const auto& k : ops_) out.noalias() += k * x * k.adjoint();
  return out;
}

QuantumChannel::QuantumChannel(std::vector<Matrix> kraus_ops) : QuantumChannel(KrausMap(std::move(kraus_ops))) {}

QuantumChannel::QuantumChannel(KrausMap map) : KrausMap(std::move(map)) {
  const double dev = completeness_deviation();
  if (dev > tol::kStructure) {
    throw Error(ErrorKind::NotTracePreserving,
                fmt::format("max |sum K^dagger K - I| = {:.3e}", dev), dev);
  }
}

MeasurementBasis::MeasurementBasis(Matrix vectors) : vectors_(std::move(vectors)) {
  if (vectors_.rows() != vectors_.cols() || vectors_.rows() == 0) {
    throw Error(ErrorKind::NotSquare,
                fmt::format("basis matrix is {}x{}", vectors_.rows(), vectors_.cols()));
  }
  const double dev = unitarity_deviation(vectors_);
  if (dev > tol::kStructure) {
    throw Error(ErrorKind::NotOrthonormal, fmt::format("max |Gram - I| = {:.3e}", dev), dev);
  }
}

Matrix MeasurementBasis::projector(Eigen::Index i) const {
  const Vector v = vectors_.col(i);
  return v * v.adjoint();
}

MeasurementBasis computational_basis(Eigen::Index d) { return MeasurementBasis(identity(d)); }

QuantumChannel make_channel(std::vector<Matrix> ops) { return QuantumChannel(std::move(ops)); }

Matrix apply(const KrausMap& map, const Matrix& x) { return map.apply(x); }

QuantumChannel identity_channel(Eigen::Index d) { return QuantumChannel({identity(d)}); }

QuantumChannel amplitude_damping(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("damping probability {} outside [0, 1]", p));
  }
  Matrix k1 = Matrix::Zero(2, 2);
  k1(0, 0) = 1.0;
  k1(1, 1) = std::sqrt(1.0 - p);
  Matrix k2 = Matrix::Zero(2, 2);
  k2(0, 1) = std::sqrt(p);
  return QuantumChannel({std::move(k1), std::move(k2)});
}

QuantumChannel unitary_channel(const Matrix& u) {
  require_unitary(u);
  return QuantumChannel({u});
}

QuantumChannel projective_channel(const MeasurementBasis& basis) {
  std::vector<Matrix> ops;
  ops.reserve(static_cast<std::size_t>(basis.dim()));
  for (Eigen::Index i = 0; i < basis.dim(); ++i) ops.push_back(basis.projector(i));
  return QuantumChannel(std::move(ops));
}

HermitianOperatorBasis hermitian_operator_basis(Eigen::Index d) {
  if (d < 2) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("operator basis needs d >= 2, got {}", d));
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Complex i_unit(0.0, 1.0);
  HermitianOperatorBasis basis{d, {}};
  basis.operators.reserve(static_cast<std::size_t>(d * d));

  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = j + 1; k < d; ++k) {
      Matrix w = Matrix::Zero(d, d);
      w(j, k) = inv_sqrt2;
      w(k, j) = inv_sqrt2;
      basis.operators.push_back(std::move(w));
    }
  }
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = j + 1; k < d; ++k) {
      Matrix w = Matrix::Zero(d, d);
      w(j, k) = -i_unit * inv_sqrt2;
      w(k, j) = i_unit * inv_sqrt2;
      basis.operators.push_back(std::move(w));
    }
  }
  // diag(1, ..., 1, -l, 0, ..., 0) / sqrt(l (l + 1)) for l = 1 .. d-1
  for (Eigen::Index l = 1; l < d; ++l) {
    Matrix w = Matrix::Zero(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (Eigen::Index m = 0; m < l; ++m) w(m, m) = norm;
    w(l, l) = -static_cast<double>(l) * norm;
    basis.operators.push_back(std::move(w));
  }
  basis.operators.push_back(identity(d) / std::sqrt(static_cast<double>(d)));
  return basis;
}

QuantumChannel depolarizing_channel(Eigen::Index d) {
  const auto basis = hermitian_operator_basis(d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<Matrix> ops;
  ops.reserve(basis.operators.size());
  for (const auto& w : basis.operators) ops.push_back(w * scale);
  return QuantumChannel(std::move(ops));
}

KrausMap lift_left(const KrausMap& phi, Eigen::Index dim_b) {
  std::vector<Matrix> ops;
  ops.reserve(phi.kraus_ops().size());
  const Matrix id = identity(dim_b);
  for (const auto& k : phi.kraus_ops()) ops.push_back(kron(k, id));
  return KrausMap(std::move(ops));
}

QuantumChannel lift_left(const QuantumChannel& phi, Eigen::Index dim_b) {
  return QuantumChannel(lift_left(static_cast<const KrausMap&>(phi), dim_b));
}

KrausMap lift_right(const KrausMap& phi, Eigen::Index dim_a) {
  std::vector<Matrix> ops;
  ops.reserve(phi.kraus_ops().size());
  const Matrix id = identity(dim_a);
  for (const auto& k : phi.kraus_ops()) ops.push_back(kron(id, k));
  return KrausMap(std::move(ops));
}

QuantumChannel lift_right(const QuantumChannel& phi, Eigen::Index dim_a) {
  return QuantumChannel(lift_right(static_cast<const KrausMap&>(phi), dim_a));
}

KrausMap conjugate(const KrausMap& phi, const Matrix& u) {
  require_unitary(u);
  if (u.rows() != phi.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("unitary of dimension {} for channel of dimension {}", u.rows(), phi.dim()));
  }
  std::vector<Matrix> ops;
  ops.reserve(phi.kraus_ops().size());
  for (const auto& k : phi.kraus_ops()) ops.push_back(u.adjoint() * k * u);
  return KrausMap(std::move(ops));
}

QuantumChannel conjugate(const QuantumChannel& phi, const Matrix& u) {
  return QuantumChannel(conjugate(static_cast<const KrausMap&>(phi), u));
}

KrausMap positive_mix(std::span<const double> coeffs, std::span<const KrausMap> maps) {
  if (coeffs.size() != maps.size() || maps.empty()) {
    throw Error(ErrorKind::InvalidArgument,
                fmt::format("{} coefficients for {} maps", coeffs.size(), maps.size()));
  }
  std::vector<Matrix> ops;
  for (std::size_t j = 0; j < maps.size(); ++j) {
    if (!(coeffs[j] > 0.0)) {
      throw Error(ErrorKind::InvalidArgument, fmt::format("coefficient {} is not positive", coeffs[j]));
    }
    if (maps[j].dim() != maps.front().dim()) {
      throw Error(ErrorKind::DimensionMismatch, "maps act on different dimensions");
    }
    const double scale = std::sqrt(coeffs[j]);
    for (const auto& k : maps[j].kraus_ops()) ops.push_back(k * scale);
  }
  return KrausMap(std::move(ops));
}

}  // namespace skewcorr
