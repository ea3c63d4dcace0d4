#include "skewcorr/sampling.hpp"

#include <cmath>
#include <vector>

#include <fmt/format.h>

namespace skewcorr {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SeededRng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double SeededRng::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

Complex SeededRng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) / std::sqrt(2.0);
}

int SeededRng::uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

McEstimate estimate_from_samples(std::span<const double> samples) {
  const auto n = static_cast<long>(samples.size());
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "need at least two samples");
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return {mean, sd / std::sqrt(static_cast<double>(n)), n};
}

McEstimate merge_estimates(const McEstimate& a, const McEstimate& b) {
  const auto na = static_cast<double>(a.n_samples);
  const auto nb = static_cast<double>(b.n_samples);
  const double n = na + nb;
  const double mean = (na * a.mean + nb * b.mean) / n;
  // Sum of squared deviations recovered from each sample standard deviation.
  const double ss_a = a.std_error * a.std_error * na * (na - 1.0);
  const double ss_b = b.std_error * b.std_error * nb * (nb - 1.0);
  const double delta = b.mean - a.mean;
  const double ss = ss_a + ss_b + delta * delta * na * nb / n;
  const double sd = std::sqrt(ss / (n - 1.0));
  return {mean, sd / std::sqrt(n), a.n_samples + b.n_samples};
}

Matrix ginibre(Eigen::Index rows, Eigen::Index cols, SeededRng& rng) {
  Matrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
  return g;
}

Matrix haar_unitary(Eigen::Index d, SeededRng& rng) {
  if (d < 1) throw Error(ErrorKind::InvalidArgument, fmt::format("dimension {} < 1", d));
  const Matrix z = ginibre(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index i = 0; i < d; ++i) {
    const Complex diag = r(i, i);
    const double mag = std::abs(diag);
    q.col(i) *= (mag > 0.0) ? diag / mag : Complex(1.0, 0.0);
  }
  return q;
}

DensityMatrix random_density(Eigen::Index d, Eigen::Index rank, SeededRng& rng) {
  if (rank < 1 || rank > d) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("rank {} outside [1, {}]", rank, d));
  }
  const Matrix g = ginibre(d, rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(symmetrize(rho));
}

QuantumChannel random_channel(Eigen::Index d, Eigen::Index kraus_count, SeededRng& rng) {
  if (kraus_count < 1) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("kraus count {} < 1", kraus_count));
  }
  const Matrix u = haar_unitary(d * kraus_count, rng);
  std::vector<Matrix> ops;
  ops.reserve(static_cast<std::size_t>(kraus_count));
  for (Eigen::Index i = 0; i < kraus_count; ++i) ops.push_back(u.block(i * d, 0, d, d));
  return QuantumChannel(std::move(ops));
}

Vector random_probability(Eigen::Index n, SeededRng& rng) {
  RealVector w(n);
  for (Eigen::Index i = 0; i < n; ++i) w[i] = -std::log(1.0 - rng.uniform(0.0, 1.0));
  w /= w.sum();
  return w.cast<Complex>();
}

BipartiteState random_classical_quantum(Eigen::Index dim_a, Eigen::Index dim_b, SeededRng& rng) {
  if (dim_a < 2 || dim_b < 2) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("dimensions {}x{} below 2", dim_a, dim_b));
  }
  const Vector p = random_probability(dim_a, rng);
  Matrix rho = Matrix::Zero(dim_a * dim_b, dim_a * dim_b);
  for (Eigen::Index j = 0; j < dim_a; ++j) {
    const DensityMatrix block = random_density(dim_b, dim_b, rng);
    rho.block(j * dim_b, j * dim_b, dim_b, dim_b) = p[j] * block.matrix();
  }
  return BipartiteState(dim_a, dim_b, rho);
}

McEstimate mc_twirl_corr(const BipartiteState& state, MeasureParams params, long n, SeededRng& rng) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "need at least two samples");
  const auto da = state.dim_a();
  const auto db = state.dim_b();
  const DensityMatrix rho_a = partial_trace(state, Subsystem::A);
  const StatePowers local = state_powers(rho_a, params);
  const StatePowers global = state_powers(state.state(), params);
  const Matrix id_b = identity(db);

  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(n));
  for (long s = 0; s < n; ++s) {
    const Matrix u = haar_unitary(da, rng);
    const Matrix lifted = kron(u, id_b);
    const Complex a = (local.alpha_power * u * local.complement_power * u.adjoint()).trace();
    const Complex b = (global.alpha_power * lifted * global.complement_power * lifted.adjoint()).trace();
    samples.push_back(checked_real(a - b, "twirl integrand"));
  }
  return estimate_from_samples(samples);
}

MatrixEstimate mc_twirl_operator(const Matrix& t, Eigen::Index dim_a, Eigen::Index dim_b, long n,
                                 SeededRng& rng) {
  if (t.rows() != dim_a * dim_b || t.cols() != t.rows()) {
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("operator {}x{} is not on {} x {}", t.rows(), t.cols(), dim_a, dim_b));
  }
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "need at least two samples");
  const auto dim = t.rows();
  const Matrix id_b = identity(dim_b);
  Matrix sum = Matrix::Zero(dim, dim);
  Eigen::MatrixXd sq_re = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd sq_im = Eigen::MatrixXd::Zero(dim, dim);
  for (long s = 0; s < n; ++s) {
    const Matrix lifted = kron(haar_unitary(dim_a, rng), id_b);
    const Matrix x = lifted * t * lifted.adjoint();
    sum += x;
    sq_re += x.real().cwiseAbs2();
    sq_im += x.imag().cwiseAbs2();
  }
  const double nd = static_cast<double>(n);
  MatrixEstimate out{sum / nd, {}, {}, n};
  const Eigen::MatrixXd var_re =
      ((sq_re - nd * out.mean.real().cwiseAbs2()) / (nd - 1.0)).cwiseMax(0.0);
  const Eigen::MatrixXd var_im =
      ((sq_im - nd * out.mean.imag().cwiseAbs2()) / (nd - 1.0)).cwiseMax(0.0);
  out.std_error_re = (var_re / nd).cwiseSqrt();
  out.std_error_im = (var_im / nd).cwiseSqrt();
  return out;
}

}  // namespace skewcorr
