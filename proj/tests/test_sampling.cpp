#include "doctest.h"
#include "oracles.hpp"
#include "skewcorr/measures.hpp"
#include "skewcorr/sampling.hpp"

using namespace skewcorr;

TEST_CASE("seeded streams are reproducible") {
  SeededRng a(99), b(99), c(100);
  for (int i = 0; i < 10; ++i) {
    const double x = a.normal();
    CHECK(x == b.normal());
    CHECK(x != c.normal());
  }
  CHECK(SeededRng::algorithm() == "mt19937_64");
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
  CHECK(derive_seed(1, 2) != derive_seed(2, 2));

  SeededRng d(5), e(5);
  CHECK(max_abs(haar_unitary(3, d) - haar_unitary(3, e)) == 0.0);
}

TEST_CASE("Haar unitaries are unitary") {
  SeededRng rng(1);
  for (int i = 0; i < 100; ++i) CHECK(unitarity_deviation(haar_unitary(1 + i % 5, rng)) < 1e-10);
}

TEST_CASE("Haar left-invariance proxy") {
  // E tr(VU) = 0 for any fixed V.
  SeededRng rng(2);
  const Matrix v = haar_unitary(3, rng);
  std::vector<double> re, im;
  for (int i = 0; i < 10000; ++i) {
    const Complex t = (v * haar_unitary(3, rng)).trace();
    re.push_back(t.real());
    im.push_back(t.imag());
  }
  const McEstimate er = estimate_from_samples(re);
  const McEstimate ei = estimate_from_samples(im);
  CHECK(std::abs(er.mean) < 4.0 * er.std_error);
  CHECK(std::abs(ei.mean) < 4.0 * ei.std_error);
}

TEST_CASE("Haar phase distribution is uniform on the first diagonal entry") {
  // Without the R-diagonal phase fix, arg U(0,0) is biased.
  SeededRng rng(3);
  std::vector<double> c, s;
  for (int i = 0; i < 20000; ++i) {
    const Complex z = haar_unitary(2, rng)(0, 0);
    c.push_back(std::cos(std::arg(z)));
    s.push_back(std::sin(std::arg(z)));
  }
  CHECK(std::abs(estimate_from_samples(c).mean) < 4.0 * estimate_from_samples(c).std_error);
  CHECK(std::abs(estimate_from_samples(s).mean) < 4.0 * estimate_from_samples(s).std_error);
}

TEST_CASE("random density matrices") {
  SeededRng rng(4);
  for (int i = 0; i < 50; ++i) {
    const Eigen::Index d = 2 + i % 4;
    const DensityMatrix pure = random_density(d, 1, rng);
    CHECK(pure.purity() == doctest::Approx(1.0).epsilon(1e-10));
    const DensityMatrix full = random_density(d, d, rng);
    CHECK(full.eig().eigenvalues.minCoeff() > 0.0);
    CHECK(std::abs(full.matrix().trace() - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(random_density(3, 0, rng), Error);
  CHECK_THROWS_AS(random_density(3, 4, rng), Error);
}

TEST_CASE("random channels") {
  SeededRng rng(5);
  for (int i = 0; i < 100; ++i) {
    const QuantumChannel phi = random_channel(2 + i % 3, 1 + i % 4, rng);
    CHECK(phi.completeness_deviation() < 1e-10);
    const DensityMatrix rho = random_density(phi.dim(), phi.dim(), rng);
    CHECK(std::abs(phi.apply(rho.matrix()).trace() - 1.0) < 1e-10);
  }
  const QuantumChannel u = random_channel(3, 1, rng);
  REQUIRE(u.kraus_ops().size() == 1);
  CHECK(unitarity_deviation(u.kraus_ops()[0]) < 1e-10);
}

TEST_CASE("classical-quantum states") {
  SeededRng rng(6);
  const BipartiteState s = random_classical_quantum(3, 2, rng);
  // Off-diagonal A blocks vanish.
  for (Eigen::Index i = 0; i < 3; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) {
      if (i != j) CHECK(max_abs(s.matrix().block(i * 2, j * 2, 2, 2)) == 0.0);
    }
  }
  const Vector p = random_probability(5, rng);
  CHECK(std::abs(p.sum() - 1.0) < 1e-14);
  CHECK(p.real().minCoeff() > 0.0);
}

TEST_CASE("estimates and pooling") {
  const std::vector<double> xs = {1.0, 2.0, 3.0, 4.0};
  const McEstimate e = estimate_from_samples(xs);
  CHECK(e.mean == doctest::Approx(2.5));
  // sample sd = sqrt(5/3)
  CHECK(e.std_error == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));

  const std::vector<double> a = {1.0, 2.0}, b = {3.0, 4.0};
  const McEstimate m = merge_estimates(estimate_from_samples(a), estimate_from_samples(b));
  CHECK(m.n_samples == 4);
  CHECK(m.mean == doctest::Approx(e.mean));
  CHECK(m.std_error == doctest::Approx(e.std_error));
}

TEST_CASE("twirl Monte Carlo") {
  const BipartiteState bell(2, 2, oracle::bell_state(2));
  SeededRng rng(7);
  const McEstimate b = mc_twirl_corr(bell, MeasureParams(0.3), 20000, rng);
  CHECK(std::abs(b.mean - 0.75) < 4.0 * b.std_error);

  const BipartiteState prod = product_state(random_density(2, 2, rng), random_density(2, 2, rng));
  const McEstimate p = mc_twirl_corr(prod, MeasureParams(0.5), 2000, rng);
  CHECK(std::abs(p.mean) <= 4.0 * p.std_error + 1e-12);

  const BipartiteState s(2, 3, random_density(6, 6, rng));
  const McEstimate r = mc_twirl_corr(s, MeasureParams(0.6), 20000, rng);
  CHECK(std::abs(r.mean - twirl_corr_closed(s, MeasureParams(0.6))) < 4.0 * r.std_error);

  CHECK_THROWS_AS(mc_twirl_corr(s, MeasureParams(0.6), 1, rng), Error);
}

TEST_CASE("standard error shrinks like 1/sqrt(n)") {
  SeededRng rng(8);
  const BipartiteState s(2, 2, random_density(4, 4, rng));
  double previous = 0.0;
  for (int k = 0; k < 5; ++k) {
    SeededRng run(derive_seed(8, static_cast<std::uint64_t>(k)));
    const McEstimate e = mc_twirl_corr(s, MeasureParams(0.5), 1000L << k, run);
    if (k > 0) {
      CHECK(e.std_error < previous);
      const double ratio = previous / e.std_error;
      CHECK(ratio > std::sqrt(2.0) * 0.5);
      CHECK(ratio < std::sqrt(2.0) * 1.5);
    }
    previous = e.std_error;
  }
}
