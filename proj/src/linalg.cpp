#include "skewcorr/linalg.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

namespace skewcorr {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NotUnitTrace: return "NotUnitTrace";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotTracePreserving: return "NotTracePreserving";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::NotOrthonormal: return "NotOrthonormal";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ImaginaryResidue: return "ImaginaryResidue";
    case ErrorKind::FormDisagreement: return "FormDisagreement";
    case ErrorKind::NegativeCorrelation: return "NegativeCorrelation";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double hermiticity_deviation(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::NotSquare, fmt::format("{}x{} matrix", m.rows(), m.cols()));
  }
  return max_abs(m - m.adjoint());
}

Matrix identity(Eigen::Index d) { return Matrix::Identity(d, d); }

Matrix symmetrize(const Matrix& m) { return (m + m.adjoint()) * 0.5; }

double checked_real(Complex z, std::string_view what) {
  if (std::abs(z.imag()) > tol::kImaginary) {
    throw Error(ErrorKind::ImaginaryResidue,
                fmt::format("{} has imaginary part {:.3e}", what, z.imag()), std::abs(z.imag()));
  }
  return z.real();
}

HermitianEigensystem eig_hermitian(const Matrix& m, double tolerance) {
  const double dev = hermiticity_deviation(m);
  if (dev > tolerance) {
    throw Error(ErrorKind::NotHermitian, fmt::format("max |m - m^dagger| = {:.3e}", dev), dev);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrize(m));
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::InvalidArgument, "eigendecomposition did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

DensityMatrix::DensityMatrix(const Matrix& m) : matrix_(m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw Error(ErrorKind::NotSquare, fmt::format("density matrix is {}x{}", m.rows(), m.cols()));
  }
  eig_ = eig_hermitian(m);
  const Complex tr = m.trace();
  const double trace_dev = std::abs(tr - Complex(1.0, 0.0));
  if (trace_dev > tol::kStructure) {
    throw Error(ErrorKind::NotUnitTrace, fmt::format("trace = {:.12g}", tr.real()), trace_dev);
  }
  const double min_eig = eig_.eigenvalues.minCoeff();
  if (min_eig < -tol::kNegativeEigenvalue) {
    throw Error(ErrorKind::NotPositive, fmt::format("minimum eigenvalue {:.3e}", min_eig), -min_eig);
  }
  eig_.eigenvalues = eig_.eigenvalues.cwiseMax(0.0);
  matrix_ = symmetrize(m);
}

double DensityMatrix::purity() const { return eig_.eigenvalues.squaredNorm(); }

Matrix frac_power(const DensityMatrix& rho, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("power {} outside [0, 1]", t));
  }
  const auto& [values, vectors] = rho.eig();
  RealVector powered(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double lambda = values[i];
    if (lambda <= tol::kZeroEigenvalue) {
      powered[i] = 0.0;
    } else {
      powered[i] = (t == 0.0) ? 1.0 : std::pow(lambda, t);
    }
  }
  return symmetrize(vectors * powered.asDiagonal() * vectors.adjoint());
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

namespace {

void require_dims(Eigen::Index n, Eigen::Index dim_a, Eigen::Index dim_b) {
  if (dim_a <= 0 || dim_b <= 0 || n != dim_a * dim_b) {
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("dimension {} is not {} x {}", n, dim_a, dim_b));
  }
}

}  // namespace

BipartiteState::BipartiteState(Eigen::Index dim_a, Eigen::Index dim_b, DensityMatrix state)
    : dim_a_(dim_a), dim_b_(dim_b), state_(std::move(state)) {
  require_dims(state_.dim(), dim_a, dim_b);
}

BipartiteState::BipartiteState(Eigen::Index dim_a, Eigen::Index dim_b, const Matrix& m)
    : BipartiteState(dim_a, dim_b, DensityMatrix(m)) {}

Matrix partial_trace(const Matrix& m, Eigen::Index dim_a, Eigen::Index dim_b, Subsystem keep) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::NotSquare, fmt::format("{}x{} operator", m.rows(), m.cols()));
  }
  require_dims(m.rows(), dim_a, dim_b);
  if (keep == Subsystem::A) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (Eigen::Index i = 0; i < dim_a; ++i)
      for (Eigen::Index j = 0; j < dim_a; ++j)
        out(i, j) = m.block(i * dim_b, j * dim_b, dim_b, dim_b).trace();
    return out;
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (Eigen::Index i = 0; i < dim_a; ++i) out += m.block(i * dim_b, i * dim_b, dim_b, dim_b);
  return out;
}

DensityMatrix partial_trace(const BipartiteState& state, Subsystem keep) {
  return DensityMatrix(partial_trace(state.matrix(), state.dim_a(), state.dim_b(), keep));
}

BipartiteState product_state(const DensityMatrix& rho_a, const DensityMatrix& rho_b) {
  return BipartiteState(rho_a.dim(), rho_b.dim(), kron(rho_a.matrix(), rho_b.matrix()));
}

Complex hs_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("{}x{} vs {}x{}", a.rows(), a.cols(), b.rows(), b.cols()));
  }
  return (a.adjoint() * b).trace();
}

double unitarity_deviation(const Matrix& u) {
  if (u.rows() != u.cols()) {
    throw Error(ErrorKind::NotSquare, fmt::format("{}x{} matrix", u.rows(), u.cols()));
  }
  return max_abs(u.adjoint() * u - identity(u.rows()));
}

void require_unitary(const Matrix& u) {
  const double dev = unitarity_deviation(u);
  if (dev > tol::kStructure) {
    throw Error(ErrorKind::NotUnitary, fmt::format("max |u^dagger u - I| = {:.3e}", dev), dev);
  }
}

}  // namespace skewcorr
