// Acceptance run: one PASS/FAIL line per criterion, with indented detail
// lines underneath. Exit status is non-zero if any criterion fails.

#include <chrono>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "oracles.hpp"
#include "skewcorr/cli.hpp"
#include "skewcorr/measures.hpp"
#include "skewcorr/optimize.hpp"
#include "skewcorr/sampling.hpp"
#include "skewcorr/verify.hpp"

using namespace skewcorr;

namespace {

struct Criterion {
  int number;
  std::string title;
  bool pass = true;
  std::vector<std::string> details;

  Criterion(int n, std::string t) : number(n), title(std::move(t)) {}

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    details.push_back(fmt::format("{} {}", ok ? "ok  " : "FAIL", what));
  }
  void note(const std::string& what) { details.push_back(fmt::format("note {}", what)); }
};

std::string g(double x) { return fmt::format("{:.6g}", x); }

void report_properties(Criterion& c, const VerifyReport& report) {
  for (const auto& p : report.properties) {
    std::string line = fmt::format("{} {}/{} ({})", p.id, p.passed, p.checked, p.description);
    if (p.first_failure) line += fmt::format("; first failure: {}", p.first_failure->detail);
    c.check(p.ok(), line);
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Criterion skew_properties() {
  Criterion c{1, "channel skew information properties (i)-(vi), 200 instances, dims 2-4, tol 1e-8"};
  VerifyOptions o;
  o.instances = 200;
  o.min_dim = 2;
  o.max_dim = 4;
  o.tol = 1e-8;
  o.optimizer_stride = 0;
  o.only = {"T1-i", "T1-ii", "T1-iii", "T1-iv", "T1-v", "T1-vi", "F-convexity", "F-endpoints"};
  const auto start = std::chrono::steady_clock::now();
  report_properties(c, run_verification(o));
  const double elapsed = seconds_since(start);
  c.check(elapsed < 30.0, fmt::format("runtime {:.2f} s < 30 s", elapsed));

  // Supplementary: non-negativity restricted to unital channels (mixtures
  // of unitaries). Reported for information, it does not replace (i).
  SeededRng rng(2024);
  int unital_ok = 0;
  double worst = 1.0;
  for (int i = 0; i < 200; ++i) {
    const Eigen::Index d = rng.uniform_int(2, 4);
    const int terms = rng.uniform_int(1, 4);
    const Vector w = random_probability(terms, rng);
    std::vector<Matrix> ops;
    for (int k = 0; k < terms; ++k) ops.push_back(std::sqrt(w[k].real()) * haar_unitary(d, rng));
    const QuantumChannel phi(ops);
    const DensityMatrix rho = random_density(d, d, rng);
    const double t = mwyd_channel(rho, phi, MeasureParams(rng.uniform(0.05, 0.95)));
    worst = std::min(worst, t);
    if (t >= -1e-8 && t <= 1.0 + 1e-8) ++unital_ok;
  }
  c.note(fmt::format("unital-channel subset: {}/200 within [0, 1] (min {})", unital_ok, g(worst)));
  return c;
}

Criterion correlation_properties() {
  Criterion c{2, "correlation D^T properties, 200 instances, dims <= 3, tol 1e-8"};
  VerifyOptions o;
  o.instances = 200;
  o.min_dim = 2;
  o.max_dim = 3;
  o.tol = 1e-8;
  o.optimizer_stride = 0;
  o.only = {"T2-i", "T2-ii", "T2-iii"};
  report_properties(c, run_verification(o));
  return c;
}

Criterion twirl() {
  Criterion c{3, "twirl closed form = depolarizing D^T; Monte Carlo within 4 stderr"};
  SeededRng rng(303);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Eigen::Index da = rng.uniform_int(2, 3);
    const Eigen::Index db = rng.uniform_int(2, 3);
    const BipartiteState s(da, db, random_density(da * db, da * db, rng));
    const MeasureParams p(rng.uniform(0.05, 0.95));
    worst = std::max(worst, std::abs(twirl_corr_closed(s, p) - corr_t(s, depolarizing_channel(da), p)));
  }
  c.check(worst <= 1e-10, fmt::format("max |closed - depolarizing| over 100 states = {}", g(worst)));

  int within = 0;
  double worst_z = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Eigen::Index da = rng.uniform_int(2, 3);
    const Eigen::Index db = rng.uniform_int(2, 3);
    const BipartiteState s(da, db, random_density(da * db, da * db, rng));
    const MeasureParams p(rng.uniform(0.05, 0.95));
    SeededRng mc_rng(derive_seed(42, static_cast<std::uint64_t>(i)));
    const McEstimate e = mc_twirl_corr(s, p, 20000, mc_rng);
    const double z = std::abs(e.mean - twirl_corr_closed(s, p)) / e.std_error;
    worst_z = std::max(worst_z, z);
    if (z <= 4.0) ++within;
  }
  c.check(within == 10, fmt::format("Monte Carlo n=20000: {}/10 within 4 stderr (max {} stderr)", within,
                                    g(worst_z)));
  return c;
}

std::vector<cli::SweepRow> sweep(const std::string& alpha, const std::string& p, const std::string& steps) {
  cli::SweepArgs a;
  a.alpha = alpha;
  a.p = p;
  a.steps = steps;
  return cli::sweep_example1(a);
}

Criterion alpha_sweep() {
  Criterion c{4, "worked example, p = 1/4, 19-point alpha sweep"};
  const auto rows = sweep("0.05:0.95", "0.25", "19");
  bool dt_inc = true, d_dec = true, d_inc = true, half = false, order = true;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    dt_inc = dt_inc && rows[i].dt > rows[i - 1].dt;
    if (rows[i].alpha <= 0.5 + 1e-12) d_dec = d_dec && rows[i].d < rows[i - 1].d;
    if (rows[i - 1].alpha >= 0.5 - 1e-12) d_inc = d_inc && rows[i].d > rows[i - 1].d;
  }
  for (const auto& r : rows) {
    if (std::abs(r.alpha - 0.5) < 1e-12) half = std::abs(r.dt - r.d) <= 1e-10;
    if (r.alpha > 0.5 + 1e-12) order = order && r.dt >= r.d - 1e-10;
    if (r.alpha < 0.5 - 1e-12) order = order && r.d >= r.dt - 1e-10;
  }
  c.check(rows.size() == 19, fmt::format("{} rows", rows.size()));
  c.check(dt_inc, fmt::format("dt strictly increasing ({} -> {})", g(rows.front().dt), g(rows.back().dt)));
  c.check(d_dec, "d strictly decreasing for alpha < 1/2");
  c.check(d_inc, "d strictly increasing for alpha > 1/2");
  c.check(half, "|dt - d| <= 1e-10 at alpha = 1/2");
  c.check(order, "dt >= d above 1/2 and d >= dt below 1/2");
  return c;
}

Criterion p_sweep() {
  Criterion c{5, "worked example, alpha = 3/4, 11-point p sweep"};
  const auto rows = sweep("0.75", "0:1", "11");
  bool dt_inc = true, d_inc = true, order = true;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    dt_inc = dt_inc && rows[i].dt > rows[i - 1].dt;
    d_inc = d_inc && rows[i].d > rows[i - 1].d;
  }
  for (const auto& r : rows) order = order && r.dt >= r.d - 1e-10;
  c.check(rows.size() == 11, fmt::format("{} rows", rows.size()));
  c.check(dt_inc, fmt::format("dt strictly increasing ({} -> {})", g(rows.front().dt), g(rows.back().dt)));
  c.check(d_inc, fmt::format("d strictly increasing ({} -> {})", g(rows.front().d), g(rows.back().d)));
  c.check(order, "dt >= d - 1e-10 throughout");
  c.check(std::abs(rows.front().dt) <= 1e-10, fmt::format("dt at p = 0 is {}", g(rows.front().dt)));
  return c;
}

Criterion projective_identity() {
  Criterion c{6, "diagonal formula for projective channels, 100 instances"};
  SeededRng rng(606);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Eigen::Index d = rng.uniform_int(2, 4);
    const DensityMatrix rho = random_density(d, rng.uniform_int(1, static_cast<int>(d)), rng);
    const MeasurementBasis basis(haar_unitary(d, rng));
    const MeasureParams p(rng.uniform(0.05, 0.95));
    worst = std::max(worst,
                     std::abs(projective_skew(rho, basis, p) - gwyd_channel(rho, projective_channel(basis), p)));
  }
  c.check(worst <= 1e-10, fmt::format("max deviation {}", g(worst)));
  return c;
}

Criterion optimizer() {
  Criterion c{7, "optimizer benchmarks and 2x2 dense grid oracle"};
  const OptBudget budget;
  SeededRng rng(707);

  const BipartiteState bell(2, 2, oracle::bell_state(2));
  const double geo = geometric_discord(bell, budget).value;
  c.check(std::abs(geo - 0.5) <= 1e-6, fmt::format("Bell geometric discord {}", g(geo)));

  const BipartiteState cq = random_classical_quantum(2, 3, rng);
  const double cq_min = min_corr_projective(cq, MeasureParams(0.5), budget).value;
  c.check(std::abs(cq_min) <= 1e-6, fmt::format("classical-quantum min-proj {}", g(cq_min)));

  const BipartiteState prod = product_state(random_density(2, 2, rng), random_density(3, 3, rng));
  const double prod_proj = max_corr_projective(prod, MeasureParams(0.5), budget).value;
  const double prod_unit = max_corr_unitary(prod, MeasureParams(0.5), budget).value;
  c.check(std::abs(prod_proj) <= 1e-6, fmt::format("product max-proj {}", g(prod_proj)));
  c.check(std::abs(prod_unit) <= 1e-6, fmt::format("product max-unitary {}", g(prod_unit)));

  for (int i = 0; i < 5; ++i) {
    SeededRng inst(derive_seed(7, static_cast<std::uint64_t>(i)));
    const BipartiteState s(2, 2, random_density(4, 4, inst));
    const double alpha = inst.uniform(0.1, 0.9);
    const MeasureParams p(alpha);
    const oracle::CorrelationOracle o(s.matrix(), 2, 2, alpha);
    const auto proj = [&](const Matrix& u) { return o.projective(u); };
    const auto unit = [&](const Matrix& u) { return o.unitary(u); };
    const double grid_max = oracle::grid_optimum(proj, true);
    const double grid_min = oracle::grid_optimum(proj, false);
    const double grid_unit = oracle::grid_optimum(unit, true);
    const double opt_max = max_corr_projective(s, p, budget).value;
    const double opt_min = min_corr_projective(s, p, budget).value;
    const double opt_unit = max_corr_unitary(s, p, budget).value;
    const double gap = std::max({std::abs(grid_max - opt_max), std::abs(grid_min - opt_min),
                                 std::abs(grid_unit - opt_unit)});
    c.check(gap <= 1e-4, fmt::format("instance {} alpha {}: max-proj {} / {}, min-proj {} / {}, max-unitary {} / {} "
                                     "(optimizer / grid), gap {}",
                                     i, g(alpha), g(opt_max), g(grid_max), g(opt_min), g(grid_min), g(opt_unit),
                                     g(grid_unit), g(gap)));
  }
  return c;
}

Criterion collapse() {
  Criterion c{8, "Hermitian and pure-state collapse identities, 200 instances each, tol 1e-10"};
  VerifyOptions o;
  o.instances = 200;
  o.optimizer_stride = 0;
  o.only = {"hermitian-collapse", "pure-collapse"};
  report_properties(c, run_verification(o));
  return c;
}

void check_matrix_estimate(Criterion& c, const MatrixEstimate& e, const Matrix& expected, const std::string& what) {
  int entries = 0, within = 0;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < expected.rows(); ++i) {
    for (Eigen::Index j = 0; j < expected.cols(); ++j) {
      const double dre = std::abs(e.mean(i, j).real() - expected(i, j).real());
      const double dim = std::abs(e.mean(i, j).imag() - expected(i, j).imag());
      const double sre = e.std_error_re(i, j);
      const double sim = e.std_error_im(i, j);
      entries += 2;
      if (dre <= 4.0 * sre + 1e-12) ++within;
      if (dim <= 4.0 * sim + 1e-12) ++within;
      if (sre > 0.0) worst = std::max(worst, dre / sre);
      if (sim > 0.0) worst = std::max(worst, dim / sim);
    }
  }
  c.check(within == entries,
          fmt::format("{}: {}/{} entries within 4 stderr (max {} stderr)", what, within, entries, g(worst)));
}

Criterion haar() {
  Criterion c{9, "Haar averages of U X U^dagger and (U x I) T (U x I)^dagger, n = 20000"};
  SeededRng rng(909);
  const Eigen::Index d = 3;
  const Matrix x = ginibre(d, d, rng);
  SeededRng mc1(derive_seed(909, 1));
  check_matrix_estimate(c, mc_twirl_operator(x, d, 1, 20000, mc1),
                        x.trace() / static_cast<double>(d) * Matrix::Identity(d, d), "tr(X) I/d");

  const Eigen::Index da = 2, db = 3;
  const Matrix t = ginibre(da * db, da * db, rng);
  SeededRng mc2(derive_seed(909, 2));
  const Matrix expected = kron(Matrix::Identity(da, da) / static_cast<double>(da),
                               partial_trace(t, da, db, Subsystem::B));
  check_matrix_estimate(c, mc_twirl_operator(t, da, db, 20000, mc2), expected, "I/d x tr_A T");
  return c;
}

Criterion reproducibility() {
  Criterion c{10, "verify and sweep outputs are byte-identical across runs"};
  const auto capture = [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return std::make_pair(code, out.str());
  };
  const std::vector<std::string> verify = {"skewcorr", "verify", "--seed", "42"};
  const auto v1 = capture(verify);
  const auto v2 = capture(verify);
  c.check(!v1.second.empty() && v1 == v2, fmt::format("verify: {} bytes, identical", v1.second.size()));

  const std::vector<std::string> sw = {"skewcorr", "sweep-example1", "--alpha", "0.05:0.95", "--p", "0:1",
                                       "--steps", "19,11"};
  const auto s1 = capture(sw);
  const auto s2 = capture(sw);
  c.check(s1.first == 0 && s1 == s2, fmt::format("sweep: {} bytes, identical", s1.second.size()));
  return c;
}

}  // namespace

int main() {
  using Factory = Criterion (*)();
  const Factory factories[] = {skew_properties, correlation_properties, twirl,     alpha_sweep, p_sweep,
                               projective_identity, optimizer,              collapse,  haar,        reproducibility};
  int failed = 0;
  for (int i = 0; i < 10; ++i) {
    const auto start = std::chrono::steady_clock::now();
    Criterion c{i + 1, "aborted"};
    try {
      c = factories[i]();
    } catch (const std::exception& e) {
      c.pass = false;
      c.details.push_back(fmt::format("FAIL exception: {}", e.what()));
    }
    const double elapsed = seconds_since(start);
    std::cout << fmt::format("criterion {:>2}: {}  {} [{:.1f} s]\n", c.number, c.pass ? "PASS" : "FAIL", c.title,
                             elapsed);
    for (const auto& d : c.details) std::cout << "    " << d << "\n";
    std::cout.flush();
    if (!c.pass) ++failed;
  }
  std::cout << fmt::format("acceptance: {} of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
