#include "skewcorr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include <fmt/format.h>

#include "skewcorr/measures.hpp"
#include "skewcorr/optimize.hpp"
#include "skewcorr/sampling.hpp"

namespace skewcorr {

namespace {

constexpr double kIdentityTol = 1e-10;  // algebraic identities
constexpr double kOptimizerTol = 1e-5;  // optimizer reproducibility
constexpr double kReevalTol = 1e-9;

struct OptimaCache;

struct Instance {
  int index;
  std::uint64_t seed;
  Eigen::Index da;
  Eigen::Index db;
  double alpha;
  KrausMap phi;
  DensityMatrix rho_ab;
  OptimaCache* optima;

  MeasureParams params() const { return MeasureParams(alpha); }
  BipartiteState state() const { return BipartiteState(da, db, rho_ab); }
};

// Optimizer runs shared by the optimizer properties of one instance.
struct OptimaCache {
  BipartiteState state;
  MeasureParams params;
  OptBudget budget;
  SeededRng rng;
  std::map<std::string, OptResult> results;

  const OptResult& get(const std::string& key, const std::function<OptResult()>& run) {
    auto it = results.find(key);
    if (it == results.end()) it = results.emplace(key, run()).first;
    return it->second;
  }
  const OptResult& max_proj() {
    return get("max-proj", [&] { return max_corr_projective(state, params, budget); });
  }
  const OptResult& min_proj() {
    return get("min-proj", [&] { return min_corr_projective(state, params, budget); });
  }
  const OptResult& max_unitary() {
    return get("max-unitary", [&] { return max_corr_unitary(state, params, budget); });
  }
  const OptResult& geo() {
    return get("geo-discord", [&] { return geometric_discord(state, budget); });
  }
};

using Outcome = std::optional<std::string>;
using Check = std::function<Outcome(Instance&, SeededRng&, const VerifyOptions&)>;

struct PropertyDef {
  std::string id;
  std::string description;
  bool optimizer;
  Check check;
};

double t_channel(const DensityMatrix& rho, const KrausMap& phi, double alpha) {
  return mwyd_channel(rho, phi, MeasureParams(alpha));
}

double dt_value(const BipartiteState& state, const KrausMap& phi, double alpha) {
  return correlation_terms(state, phi, MeasureParams(alpha)).dt();
}

Matrix random_hermitian(Eigen::Index d, SeededRng& rng) { return symmetrize(ginibre(d, d, rng)); }

QuantumChannel random_channel_any(Eigen::Index d, SeededRng& rng) {
  return random_channel(d, rng.uniform_int(1, 4), rng);
}

DensityMatrix reduced_a(const Instance& in) { return partial_trace(in.state(), Subsystem::A); }

Outcome fail(std::string s) { return Outcome(std::move(s)); }

std::vector<PropertyDef> definitions() {
  std::vector<PropertyDef> defs;

  defs.push_back({"T1-i", "non-negativity and boundedness of T(rho, Phi)", false,
                  [](Instance& in, SeededRng& rng, const VerifyOptions& o) -> Outcome {
                    const DensityMatrix rho = random_density(in.da, in.da, rng);
                    const double kraus = t_channel(rho, in.phi, in.alpha);
                    const double closed = mwyd_channel_closed_form(rho, in.phi, in.params());
                    if (kraus < -o.tol || kraus > 1.0 + o.tol || closed < -o.tol || closed > 1.0 + o.tol ||
                        std::abs(kraus - closed) > o.tol) {
                      return fail(fmt::format("Kraus sum {:.12g}, closed form {:.12g}, alpha {:.12g}", kraus,
                                              closed, in.alpha));
                    }
                    return {};
                  }});

  defs.push_back({"T1-ii", "ancillary independence", false,
                  [](Instance& in, SeededRng& rng, const VerifyOptions& o) -> Outcome {
                    const DensityMatrix ra = random_density(in.da, in.da, rng);
                    const DensityMatrix rb = random_density(in.db, in.db, rng);
                    const BipartiteState prod = product_state(ra, rb);
                    const double global = t_channel(prod.state(), lift_left(in.phi, in.db), in.alpha);
                    const double local = t_channel(ra, in.phi, in.alpha);
                    if (std::abs(global - local) > o.tol) {
                      return fail(fmt::format("T(rhoA x rhoB) {:.12g} vs T(rhoA) {:.12g}", global, local));
                    }
                    return {};
                  }});

  defs.push_back({"T1-iii", "unitary covariance", false,
                  [](Instance& in, SeededRng& rng, const VerifyOptions& o) -> Outcome {
                    const DensityMatrix rho = random_density(in.da, in.da, rng);
                    const Matrix u = haar_unitary(in.da, rng);
                    const DensityMatrix rotated(u * rho.matrix() * u.adjoint());
                    const double lhs = t_channel(rotated, in.phi, in.alpha);
                    const double rhs = t_channel(rho, conjugate(in.phi, u), in.alpha);
                    if (std::abs(lhs - rhs) > o.tol) {
                      return fail(fmt::format("T(U rho U+) {:.12g} vs T(rho, U+ Phi U) {:.12g}", lhs, rhs));
                    }
                    return {};
                  }});

  defs.push_back({"T1-iv", "positive linearity in the channel", false,
                  [](Instance& in, SeededRng& rng, const VerifyOptions& o) -> Outcome {
                    const DensityMatrix rho = random_density(in.da, in.da, rng);
                    const KrausMap other = random_channel_any(in.da, rng);
                    const double c[2] = {rng.uniform(0.1, 2.0), rng.uniform(0.1, 2.0)};
                    const KrausMap maps[2] = {in.phi, other};
                    const double mixed = t_channel(rho, positive_mix(c, maps), in.alpha);
                    const double sum =
                        c[0] * t_channel(rho, in.phi, in.alpha) + c[1] * t_channel(rho, other, in.alpha);
                    if (std::abs(mixed - sum) > o.tol) {
                      return fail(fmt::format("T(mix) {:.12g} vs weighted sum {:.12g}", mixed, sum));
                    }
                    return {};
                  }});

  defs.push_back({"T1-v", "decrease under partial trace", false,
                  [](Instance& in, SeededRng&, const VerifyOptions& o) -> Outcome {
                    const double global = t_channel(in.rho_ab, lift_left(in.phi, in.db), in.alpha);
                    const double local = t_channel(reduced_a(in), in.phi, in.alpha);
                    if (global < local - o.tol) {
                      return fail(fmt::format("T(rhoAB) {:.12g} < T(rhoA) {:.12g}", global, local));
                    }
                    return {};
                  }});

  defs.push_back({"T1-vi", "convexity in the state", false,
                  [](Instance& in, SeededRng& rng, const VerifyOptions& o) -> Outcome {
                    const Vector p = random_probability(3, rng);
                    Matrix mix = Matrix::Zero(in.da, in.da);
                    double avg = 0.0;
                    for (int j = 0; j < 3; ++j) {
                      const DensityMatrix r = random_density(in.da, rng.uniform_int(1, static_cast<int>(in.da)), rng);
                      mix += p[j] * r.matrix();
                      avg += p[j].real() * t_channel(r, in.phi, in.alpha);
                    }
                    const double of_mix = t_channel(DensityMatrix(mix), in.phi, in.alpha);
                    if (avg < of_mix - o.tol) {
                      return fail(fmt::format("sum p T(rho_j) {:.12g} < T(sum p rho_j) {:.12g}", avg, of_mix));
                    }
                    return {};
                  }});

  defs.push_back({"F-convexity", "t -> tr rho^t Phi(rho^(1-t)) is midpoint convex on a 21-point grid", false,
                  [](Instance& in, SeededRng& rng, const VerifyOptions& o) -> Outcome {
                    const DensityMatrix rho = random_density(in.da, in.da, rng);
                    std::vector<double> f(21);
                    for (int k = 0; k <= 20; ++k) f[k] = channel_overlap(rho, in.phi, k / 20.0);
                    for (int i = 1; i < 20; ++i) {
                      for (int h = 1; i - h >= 0 && i + h <= 20; ++h) {
                        if (f[i - h] + f[i + h] < 2.0 * f[i] - o.tol) {
                          return fail(fmt::format("F({})+F({}) = {:.12g} < 2F({}) = {:.12g}", (i - h) / 20.0,
                                                  (i + h) / 20.0, f[i - h] + f[i + h], i / 20.0, 2.0 * f[i]));
                        }
                      }
                    }
                    return {};
                  }});

  defs.push_back({"F-endpoints", "F(0) = 1 and F(1) <= 1", false,
                  [](Instance& in, SeededRng& rng, const VerifyOptions& o) -> Outcome {
                    const DensityMatrix rho = random_density(in.da, in.da, rng);
                    const double f0 = channel_overlap(rho, in.phi, 0.0);
                    const double f1 = channel_overlap(rho, in.phi, 1.0);
                    if (std::abs(f0 - 1.0) > o.tol || f1 > 1.0 + o.tol) {
                      return fail(fmt::format("F(0) = {:.12g}, F(1) = {:.12g}", f0, f1));
                    }
                    return {};
                  }});

  defs.push_back({"T2-i", "D^T >= 0, and = 0 on product states", false,
                  [](Instance& in, SeededRng& rng, const VerifyOptions& o) -> Outcome {
                    const double dt = dt_value(in.state(), in.phi, in.alpha);
                    const BipartiteState prod =
                        product_state(random_density(in.da, in.da, rng), random_density(in.db, in.db, rng));
                    const double dt_prod = dt_value(prod, in.phi, in.alpha);
                    if (dt < -o.tol || std::abs(dt_prod) > o.tol) {
                      return fail(fmt::format("D^T {:.12g}, product-state D^T {:.12g}", dt, dt_prod));
                    }
                    return {};
                  }});

  defs.push_back({"T2-ii", "local unitary covariance of D^T", false,
                  [](Instance& in, SeededRng& rng, const VerifyOptions& o) -> Outcome {
                    const Matrix ua = haar_unitary(in.da, rng);
                    const Matrix ub = haar_unitary(in.db, rng);
                    const Matrix w = kron(ua, ub);
                    const BipartiteState rotated(in.da, in.db, Matrix(w * in.rho_ab.matrix() * w.adjoint()));
                    const double lhs = dt_value(rotated, in.phi, in.alpha);
                    const double rhs = dt_value(in.state(), conjugate(in.phi, ua), in.alpha);
                    if (std::abs(lhs - rhs) > o.tol) {
                      return fail(fmt::format("rotated D^T {:.12g} vs conjugated-channel D^T {:.12g}", lhs, rhs));
                    }
                    return {};
                  }});

  defs.push_back({"T2-iii", "contractivity under channels on B", false,
                  [](Instance& in, SeededRng& rng, const VerifyOptions& o) -> Outcome {
                    const QuantumChannel phi_b = random_channel_any(in.db, rng);
                    const BipartiteState after(in.da, in.db, lift_right(phi_b, in.da).apply(in.rho_ab.matrix()));
                    const double before_dt = dt_value(in.state(), in.phi, in.alpha);
                    const double after_dt = dt_value(after, in.phi, in.alpha);
                    if (after_dt > before_dt + o.tol) {
                      return fail(fmt::format("D^T after Phi_B {:.12g} > before {:.12g}", after_dt, before_dt));
                    }
                    return {};
                  }});

  defs.push_back({"hermitian-collapse", "T = I for Hermitian operators", false,
                  [](Instance& in, SeededRng& rng, const VerifyOptions&) -> Outcome {
                    const DensityMatrix rho = random_density(in.da, in.da, rng);
                    const Matrix a = random_hermitian(in.da, rng);
                    const double t = mwyd_skew(rho, a, in.params());
                    const double i = gwyd_skew(rho, a, in.params());
                    if (std::abs(t - i) > kIdentityTol) {
                      return fail(fmt::format("T {:.15g} vs I {:.15g}", t, i));
                    }
                    return {};
                  }});

  defs.push_back({"pure-collapse", "T = V on pure states", false,
                  [](Instance& in, SeededRng& rng, const VerifyOptions&) -> Outcome {
                    const DensityMatrix rho = random_density(in.da, 1, rng);
                    const Matrix k = ginibre(in.da, in.da, rng);
                    const double t = mwyd_skew(rho, k, in.params());
                    const double v = variance(rho, k);
                    if (std::abs(t - v) > kIdentityTol) {
                      return fail(fmt::format("T {:.15g} vs V {:.15g}", t, v));
                    }
                    return {};
                  }});

  defs.push_back({"alpha-half", "D^T = D at alpha = 1/2", false,
                  [](Instance& in, SeededRng&, const VerifyOptions&) -> Outcome {
                    const CorrelationTerms terms = correlation_terms(in.state(), in.phi, MeasureParams(0.5));
                    if (std::abs(terms.dt() - terms.d()) > kIdentityTol) {
                      return fail(fmt::format("D^T {:.15g} vs D {:.15g}", terms.dt(), terms.d()));
                    }
                    return {};
                  }});

  defs.push_back({"projective-identity", "T(rho, Pi) = I(rho, Pi) = diagonal formula", false,
                  [](Instance& in, SeededRng& rng, const VerifyOptions&) -> Outcome {
                    const DensityMatrix rho = random_density(in.da, in.da, rng);
                    const MeasurementBasis basis(haar_unitary(in.da, rng));
                    const QuantumChannel pi = projective_channel(basis);
                    const double diag = projective_skew(rho, basis, in.params());
                    const double i = gwyd_channel(rho, pi, in.params());
                    const double t = mwyd_channel(rho, pi, in.params());
                    if (std::abs(diag - i) > kIdentityTol || std::abs(diag - t) > kIdentityTol) {
                      return fail(fmt::format("formula {:.15g}, I {:.15g}, T {:.15g}", diag, i, t));
                    }
                    return {};
                  }});

  defs.push_back({"twirl-depolarizing", "twirl closed form = depolarizing-channel D^T", false,
                  [](Instance& in, SeededRng&, const VerifyOptions&) -> Outcome {
                    const double twirl = twirl_corr_closed(in.state(), in.params());
                    const double depol = corr_t(in.state(), depolarizing_channel(in.da), in.params());
                    if (std::abs(twirl - depol) > kIdentityTol) {
                      return fail(fmt::format("closed form {:.15g} vs depolarizing {:.15g}", twirl, depol));
                    }
                    return {};
                  }});

  defs.push_back({"opt-reevaluation", "optima reproduce through the generic measure", true,
                  [](Instance& in, SeededRng&, const VerifyOptions&) -> Outcome {
                    OptimaCache& c = *in.optima;
                    const auto db = c.state.dim_b();
                    auto basis = [](const OptResult& r) { return basis_from_unitary(unitary_from_params(r.argopt)); };
                    const double checks[4][2] = {
                        {c.max_proj().value, corr_t(c.state, projective_channel(basis(c.max_proj())), c.params)},
                        {c.min_proj().value, corr_t(c.state, projective_channel(basis(c.min_proj())), c.params)},
                        {c.max_unitary().value,
                         corr_t(c.state, unitary_channel(unitary_from_params(c.max_unitary().argopt)), c.params)},
                        {c.geo().value, mwyd_channel(c.state.state(),
                                                     lift_left(projective_channel(basis(c.geo())), db),
                                                     MeasureParams(0.5))}};
                    for (const auto& [reported, generic] : checks) {
                      if (std::abs(reported - generic) > kReevalTol) {
                        return fail(fmt::format("reported {:.15g} vs re-evaluated {:.15g}", reported, generic));
                      }
                    }
                    return {};
                  }});

  defs.push_back({"opt-ordering", "max-proj >= min-proj >= 0", true,
                  [](Instance& in, SeededRng&, const VerifyOptions&) -> Outcome {
                    OptimaCache& c = *in.optima;
                    const double hi = c.max_proj().value;
                    const double lo = c.min_proj().value;
                    if (hi < lo - kReevalTol || lo < -kReevalTol) {
                      return fail(fmt::format("max {:.12g}, min {:.12g}", hi, lo));
                    }
                    return {};
                  }});

  defs.push_back({"opt-covariance", "optima invariant under local unitaries", true,
                  [](Instance& in, SeededRng& rng, const VerifyOptions&) -> Outcome {
                    OptimaCache& c = *in.optima;
                    const Matrix w =
                        kron(haar_unitary(c.state.dim_a(), rng), haar_unitary(c.state.dim_b(), rng));
                    const BipartiteState rotated(c.state.dim_a(), c.state.dim_b(),
                                                 Matrix(w * c.state.matrix() * w.adjoint()));
                    const double pairs[3][2] = {
                        {c.max_proj().value, max_corr_projective(rotated, c.params, c.budget).value},
                        {c.min_proj().value, min_corr_projective(rotated, c.params, c.budget).value},
                        {c.max_unitary().value, max_corr_unitary(rotated, c.params, c.budget).value}};
                    for (const auto& [before, after] : pairs) {
                      if (std::abs(before - after) > kOptimizerTol) {
                        return fail(fmt::format("optimum {:.12g} vs rotated {:.12g}", before, after));
                      }
                    }
                    return {};
                  }});

  defs.push_back({"opt-contractivity", "optima do not increase under channels on B", true,
                  [](Instance& in, SeededRng& rng, const VerifyOptions&) -> Outcome {
                    OptimaCache& c = *in.optima;
                    const QuantumChannel phi_b = random_channel_any(c.state.dim_b(), rng);
                    const BipartiteState after(c.state.dim_a(), c.state.dim_b(),
                                               lift_right(phi_b, c.state.dim_a()).apply(c.state.matrix()));
                    const double pairs[3][2] = {
                        {c.max_proj().value, max_corr_projective(after, c.params, c.budget).value},
                        {c.min_proj().value, min_corr_projective(after, c.params, c.budget).value},
                        {c.max_unitary().value, max_corr_unitary(after, c.params, c.budget).value}};
                    for (const auto& [before, later] : pairs) {
                      if (later > before + kOptimizerTol) {
                        return fail(fmt::format("optimum {:.12g} rose to {:.12g}", before, later));
                      }
                    }
                    return {};
                  }});

  defs.push_back({"opt-trace", "best-so-far trace is monotone", true,
                  [](Instance& in, SeededRng&, const VerifyOptions&) -> Outcome {
                    OptimaCache& c = *in.optima;
                    auto monotone = [](const OptResult& r, bool increasing) {
                      for (std::size_t i = 1; i < r.trace.size(); ++i) {
                        const double step = r.trace[i].best_value - r.trace[i - 1].best_value;
                        if (increasing ? step < 0.0 : step > 0.0) return false;
                      }
                      return true;
                    };
                    if (!monotone(c.max_proj(), true) || !monotone(c.min_proj(), false) ||
                        !monotone(c.max_unitary(), true) || !monotone(c.geo(), false)) {
                      return fail("best-so-far trace moved the wrong way");
                    }
                    return {};
                  }});
  return defs;
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(properties.begin(), properties.end(), [](const auto& p) { return p.ok(); });
}

const PropertyReport* VerifyReport::find(const std::string& id) const {
  for (const auto& p : properties)
    if (p.id == id) return &p;
  return nullptr;
}

std::vector<std::string> property_ids() {
  std::vector<std::string> ids;
  for (const auto& d : definitions()) ids.push_back(d.id);
  return ids;
}

VerifyReport run_verification(const VerifyOptions& options) {
  if (options.instances < 1 || options.min_dim < 2 || options.max_dim < options.min_dim) {
    throw Error(ErrorKind::InvalidArgument,
                fmt::format("invalid verify options: {} instances, dims {}..{}", options.instances,
                            options.min_dim, options.max_dim));
  }
  if (options.alpha) MeasureParams check(*options.alpha);

  const auto defs = definitions();
  VerifyReport report;
  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < defs.size(); ++k) {
    const bool wanted = options.only.empty() ||
                        std::find(options.only.begin(), options.only.end(), defs[k].id) != options.only.end();
    if (!wanted || (defs[k].optimizer && options.optimizer_stride <= 0)) continue;
    active.push_back(k);
    report.properties.push_back({defs[k].id, defs[k].description, 0, 0, std::nullopt});
  }

  for (int i = 0; i < options.instances; ++i) {
    const std::uint64_t seed = derive_seed(options.seed, static_cast<std::uint64_t>(i));
    SeededRng rng(seed);
    const Eigen::Index da = options.channel ? options.channel->dim() : rng.uniform_int(options.min_dim, options.max_dim);
    const Eigen::Index db = rng.uniform_int(options.min_dim, options.max_dim);
    const double alpha = options.alpha ? *options.alpha : rng.uniform(0.05, 0.95);
    KrausMap phi = options.channel ? *options.channel : KrausMap(random_channel_any(da, rng));
    DensityMatrix rho_ab = random_density(da * db, da * db, rng);

    std::optional<OptimaCache> optima;
    const bool run_optimizer = options.optimizer_stride > 0 && i % options.optimizer_stride == 0;
    if (run_optimizer) {
      SeededRng opt_rng = rng.split(1000);
      const Eigen::Index opt_db = opt_rng.uniform_int(2, 3);
      BipartiteState s(2, opt_db, random_density(2 * opt_db, 2 * opt_db, opt_rng));
      OptBudget budget;
      budget.restarts = options.optimizer_restarts;
      budget.seed = seed;
      optima.emplace(OptimaCache{std::move(s), MeasureParams(alpha), budget, opt_rng.split(1), {}});
    }
    Instance instance{i, seed, da, db, alpha, std::move(phi), std::move(rho_ab), optima ? &*optima : nullptr};

    for (std::size_t a = 0; a < active.size(); ++a) {
      const auto& def = defs[active[a]];
      if (def.optimizer && !run_optimizer) continue;
      SeededRng prop_rng = rng.split(active[a] + 1);
      Outcome outcome;
      try {
        outcome = def.check(instance, prop_rng, options);
      } catch (const std::exception& e) {
        outcome = std::string("exception: ") + e.what();
      }
      auto& rep = report.properties[a];
      ++rep.checked;
      if (!outcome) {
        ++rep.passed;
      } else if (!rep.first_failure) {
        rep.first_failure = PropertyFailure{i, seed, *outcome};
      }
    }
  }
  return report;
}

std::string format_report(const VerifyOptions& options, const VerifyReport& report) {
  std::string out = fmt::format("verify: instances={} dims={}..{} seed={} tol={:.3g} alpha={}{}\n",
                                options.instances, options.min_dim, options.max_dim, options.seed, options.tol,
                                options.alpha ? fmt::format("{:.12g}", *options.alpha) : std::string("random"),
                                options.channel ? " channel=file" : "");
  int failed = 0;
  for (const auto& p : report.properties) {
    out += fmt::format("{:<20} {:>4}/{:<4} {}  {}\n", p.id, p.passed, p.checked, p.ok() ? "PASS" : "FAIL",
                       p.description);
    if (!p.ok()) ++failed;
  }
  if (failed == 0) {
    out += fmt::format("result: PASS ({} properties)\n", report.properties.size());
    return out;
  }
  for (const auto& p : report.properties) {
    if (p.ok()) continue;
    const auto& f = *p.first_failure;
    out += fmt::format("first failure of {}: instance {} (seed {}): {}\n", p.id, f.instance, f.instance_seed,
                       f.detail);
  }
  out += fmt::format("result: FAIL ({} of {} properties)\n", failed, report.properties.size());
  return out;
}

}  // namespace skewcorr
