#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

#include "skewcorr/channels.hpp"
#include "skewcorr/measures.hpp"

namespace skewcorr {

/// splitmix64 finalizer of (seed, stream); used for per-instance and
/// per-worker sub-seeding.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  static constexpr std::string_view algorithm() { return "mt19937_64"; }

  double uniform(double lo, double hi);
  double normal();
  /// Standard complex Gaussian, E|z|^2 = 1.
  Complex complex_normal();
  int uniform_int(int lo, int hi);  // inclusive
  /// Independent generator for sub-stream `stream`.
  SeededRng split(std::uint64_t stream) const { return SeededRng(derive_seed(seed_, stream)); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

struct McEstimate {
  double mean;
  double std_error;
  long n_samples;
};

McEstimate estimate_from_samples(std::span<const double> samples);
/// Pooled mean and variance of two independent estimates.
McEstimate merge_estimates(const McEstimate& a, const McEstimate& b);

Matrix ginibre(Eigen::Index rows, Eigen::Index cols, SeededRng& rng);
/// QR of a Ginibre matrix with the diagonal phases of R moved into Q.
Matrix haar_unitary(Eigen::Index d, SeededRng& rng);
/// G G^dagger / tr(G G^dagger) with G a d x rank Ginibre matrix.
DensityMatrix random_density(Eigen::Index d, Eigen::Index rank, SeededRng& rng);
/// Kraus operators are the d x d blocks of a Haar isometry C^d -> C^(d k).
QuantumChannel random_channel(Eigen::Index d, Eigen::Index kraus_count, SeededRng& rng);
/// sum_j p_j |j><j| (x) rho_j with full-rank rho_j.
BipartiteState random_classical_quantum(Eigen::Index dim_a, Eigen::Index dim_b, SeededRng& rng);
Vector random_probability(Eigen::Index n, SeededRng& rng);

/// Monte Carlo over Haar U_A of
///   tr(rho_A^a U rho_A^(1-a) U^dagger) - tr(rho^a (U (x) I) rho^(1-a) (U (x) I)^dagger).
McEstimate mc_twirl_corr(const BipartiteState& state, MeasureParams params, long n, SeededRng& rng);

/// Entrywise Monte Carlo mean and standard error of a matrix-valued sample.
struct MatrixEstimate {
  Matrix mean;
  Eigen::MatrixXd std_error_re;
  Eigen::MatrixXd std_error_im;
  long n_samples;
};

/// Haar average of (U (x) I_{dim_b}) t (U (x) I_{dim_b})^dagger with U on
/// the leading dim_a factor; dim_b = 1 gives U t U^dagger.
MatrixEstimate mc_twirl_operator(const Matrix& t, Eigen::Index dim_a, Eigen::Index dim_b, long n,
                                 SeededRng& rng);

}  // namespace skewcorr
