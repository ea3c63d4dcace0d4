#pragma once

#include <complex>
#include <string_view>

#include <Eigen/Dense>

#include "skewcorr/errors.hpp"

namespace skewcorr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
// Hermiticity, unit trace, completeness, unitarity, orthonormality.
inline constexpr double kStructure = 1e-10;
// Eigenvalues in [-kNegativeEigenvalue, 0) are clamped to zero.
inline constexpr double kNegativeEigenvalue = 1e-10;
// Eigenvalues at or below this are exact zeros for matrix powers.
inline constexpr double kZeroEigenvalue = 1e-12;
// Largest admissible imaginary part of an analytically real trace.
inline constexpr double kImaginary = 1e-9;
}  // namespace tol

/// Largest absolute entry, 0 for an empty matrix.
double max_abs(const Matrix& m);
double hermiticity_deviation(const Matrix& m);
Matrix identity(Eigen::Index d);
/// (m + m^dagger) / 2
Matrix symmetrize(const Matrix& m);

/// Takes the real part of a trace that must be real, throwing
/// ImaginaryResidue if |Im z| exceeds tol::kImaginary.
double checked_real(Complex z, std::string_view what);

struct HermitianEigensystem {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // columns
};

HermitianEigensystem eig_hermitian(const Matrix& m, double tolerance = tol::kStructure);

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and positivity, then clamps the
  /// slightly negative eigenvalues to zero.
  explicit DensityMatrix(const Matrix& m);

  Eigen::Index dim() const { return matrix_.rows(); }
  const Matrix& matrix() const { return matrix_; }
  const HermitianEigensystem& eig() const { return eig_; }
  double purity() const;

 private:
  Matrix matrix_;
  HermitianEigensystem eig_;
};

/// V diag(lambda^t) V^dagger. Eigenvalues below tol::kZeroEigenvalue are
/// zeros; 0^t = 0 for t > 0 and t = 0 yields the support projector.
Matrix frac_power(const DensityMatrix& rho, double t);

/// Subsystem a is the leading (slow) tensor factor.
Matrix kron(const Matrix& a, const Matrix& b);

enum class Subsystem { A, B };

class BipartiteState {
 public:
  BipartiteState(Eigen::Index dim_a, Eigen::Index dim_b, DensityMatrix state);
  BipartiteState(Eigen::Index dim_a, Eigen::Index dim_b, const Matrix& m);

  Eigen::Index dim_a() const { return dim_a_; }
  Eigen::Index dim_b() const { return dim_b_; }
  const DensityMatrix& state() const { return state_; }
  const Matrix& matrix() const { return state_.matrix(); }

 private:
  Eigen::Index dim_a_;
  Eigen::Index dim_b_;
  DensityMatrix state_;
};

/// Partial trace of an arbitrary operator on A (x) B, keeping `keep`.
Matrix partial_trace(const Matrix& m, Eigen::Index dim_a, Eigen::Index dim_b, Subsystem keep);
DensityMatrix partial_trace(const BipartiteState& state, Subsystem keep);

BipartiteState product_state(const DensityMatrix& rho_a, const DensityMatrix& rho_b);

/// tr(a^dagger b).
Complex hs_inner(const Matrix& a, const Matrix& b);

double unitarity_deviation(const Matrix& u);
void require_unitary(const Matrix& u);

}  // namespace skewcorr
