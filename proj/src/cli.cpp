#include "skewcorr/cli.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "skewcorr/measures.hpp"
#include "skewcorr/sampling.hpp"
#include "skewcorr/state_io.hpp"

namespace skewcorr::cli {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return kDimensionMismatch;
    case ErrorKind::Io: return kIo;
    case ErrorKind::NotConverged: return kNotConverged;
    case ErrorKind::FormDisagreement:
    case ErrorKind::NegativeCorrelation: return kPropertyFailure;
    default: return kValidation;
  }
}

namespace {

std::string num(double x) { return fmt::format("{:.12g}", x); }

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("'{}' is not a number", text));
  }
  return value;
}

int parse_int(std::string_view text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("'{}' is not an integer", text));
  }
  return value;
}

std::vector<double> grid(const Axis& axis, int steps) {
  if (!axis.is_range()) return {axis.lo};
  if (steps < 2) throw Error(ErrorKind::InvalidArgument, fmt::format("{} grid steps for a range", steps));
  std::vector<double> out;
  const double n = steps - 1;
  for (int k = 0; k < steps; ++k) out.push_back(axis.lo * ((n - k) / n) + axis.hi * (k / n));
  return out;
}

void emit(const std::optional<std::filesystem::path>& path, const std::string& text, std::ostream& out) {
  if (path) {
    write_text_file(*path, text);
  } else {
    out << text;
  }
}

void print_unitary(const Matrix& u, std::ostream& out) {
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    std::string row = " ";
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      row += fmt::format(" {:.12g}{:+.12g}i", u(i, j).real(), u(i, j).imag());
    }
    out << row << "\n";
  }
}

Matrix maximally_entangled(Eigen::Index d) {
  Vector psi = Vector::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) psi[i * d + i] = 1.0 / std::sqrt(static_cast<double>(d));
  return psi * psi.adjoint();
}

int require_dims(const GenArgs& args, std::size_t count) {
  if (args.dims.size() != count) {
    throw Error(ErrorKind::InvalidArgument,
                fmt::format("gen {} takes {} dimension(s), got {}", args.kind, count, args.dims.size()));
  }
  for (int d : args.dims) {
    if (d < 1) throw Error(ErrorKind::InvalidArgument, fmt::format("dimension {} < 1", d));
  }
  return 0;
}

}  // namespace

Axis parse_axis(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const double v = parse_double(text);
    return {v, v};
  }
  const double lo = parse_double(std::string_view(text).substr(0, colon));
  const double hi = parse_double(std::string_view(text).substr(colon + 1));
  if (hi < lo) throw Error(ErrorKind::InvalidArgument, fmt::format("empty range '{}'", text));
  return {lo, hi};
}

std::vector<SweepRow> sweep_example1(const SweepArgs& args) {
  const Axis alpha_axis = parse_axis(args.alpha);
  const Axis p_axis = parse_axis(args.p);
  int alpha_steps = 1;
  int p_steps = 1;
  const auto comma = args.steps.find(',');
  if (comma != std::string::npos) {
    alpha_steps = parse_int(std::string_view(args.steps).substr(0, comma));
    p_steps = parse_int(std::string_view(args.steps).substr(comma + 1));
  } else {
    alpha_steps = p_steps = parse_int(args.steps);
  }
  const BipartiteState state = example1_state();
  std::vector<SweepRow> rows;
  for (double alpha : grid(alpha_axis, alpha_steps)) {
    const MeasureParams params(alpha);
    for (double p : grid(p_axis, p_steps)) {
      const CorrelationTerms terms = correlation_terms(state, amplitude_damping(p), params);
      rows.push_back({alpha, p, terms.dt(), terms.d(), example1_closed_dt(p, alpha), example1_closed_d(p, alpha)});
    }
  }
  return rows;
}

std::string format_csv(const std::vector<SweepRow>& rows) {
  std::string out = std::string(kSweepHeader) + "\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{}\n", num(r.alpha), num(r.p), num(r.dt), num(r.d), num(r.dt_closed),
                       num(r.d_closed));
  }
  return out;
}

int cmd_measure(const MeasureArgs& args, std::ostream& out) {
  const BipartiteState state = read_state_file(args.state);
  const KrausMap phi = args.allow_nontp ? read_kraus_file(args.channel) : KrausMap(read_channel_file(args.channel));
  const MeasureParams params(args.alpha);
  const CorrelationTerms terms = correlation_terms(state, phi, params);
  if (!args.allow_nontp) {
    // Trace-preserving channels also go through the checked evaluators.
    const QuantumChannel channel(phi);
    corr_t(state, channel, params);
    corr_i(state, channel, params);
  }
  out << "dims = " << state.dim_a() << "x" << state.dim_b() << "\n";
  out << "alpha = " << num(args.alpha) << "\n";
  out << "t_global = " << num(terms.t_global) << "\n";
  out << "t_local = " << num(terms.t_local) << "\n";
  out << "dt = " << num(terms.dt()) << "\n";
  out << "d = " << num(terms.d()) << "\n";
  return kOk;
}

int cmd_sweep_example1(const SweepArgs& args, std::ostream& out) {
  emit(args.out, format_csv(sweep_example1(args)), out);
  return kOk;
}

int cmd_optimize(const OptimizeArgs& args, std::ostream& out) {
  const BipartiteState state = read_state_file(args.state);
  const bool fixed_half = args.objective == "geo-discord" || args.objective == "min-nondisturb";
  if (!fixed_half && !args.alpha) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("objective {} needs --alpha", args.objective));
  }
  const double alpha = fixed_half ? 0.5 : *args.alpha;
  const MeasureParams params(alpha);

  OptResult result;
  if (args.objective == "max-proj") {
    result = max_corr_projective(state, params, args.budget);
  } else if (args.objective == "min-proj") {
    result = min_corr_projective(state, params, args.budget);
  } else if (args.objective == "max-unitary") {
    result = max_corr_unitary(state, params, args.budget);
  } else if (args.objective == "geo-discord") {
    result = geometric_discord(state, args.budget);
  } else if (args.objective == "min-nondisturb") {
    result = min_nondisturbing_max(state, args.budget);
  } else {
    throw Error(ErrorKind::InvalidArgument, fmt::format("unknown objective '{}'", args.objective));
  }

  out << "objective = " << args.objective << "\n";
  out << "alpha = " << num(alpha) << "\n";
  out << "value = " << num(result.value) << "\n";
  out << "restarts = " << result.restarts_used << "\n";
  out << "converged = " << (result.converged ? "true" : "false") << "\n";
  out << "trace (restart, best so far):\n";
  for (const auto& [restart, best] : result.trace) out << "  " << restart << " " << num(best) << "\n";
  out << "unitary:\n";
  print_unitary(unitary_from_params(result.argopt), out);
  return kOk;
}

int cmd_twirl(const TwirlArgs& args, std::ostream& out) {
  const BipartiteState state = read_state_file(args.state);
  const MeasureParams params(args.alpha);
  const double closed = twirl_corr_closed(state, params);
  const double depol = corr_t(state, depolarizing_channel(state.dim_a()), params);
  SeededRng rng(args.seed);
  const McEstimate mc = mc_twirl_corr(state, params, args.n, rng);
  const double gap = std::abs(mc.mean - closed);
  const bool pass = gap <= 4.0 * mc.std_error;
  out << "closed_form = " << num(closed) << "\n";
  out << "depolarizing = " << num(depol) << "\n";
  out << "monte_carlo = " << num(mc.mean) << " +- " << num(mc.std_error) << " (n = " << mc.n_samples
      << ", seed = " << args.seed << ")\n";
  out << "consistency = " << (pass ? "PASS" : "FAIL") << " (|mc - closed| = " << num(gap)
      << ", 4 stderr = " << num(4.0 * mc.std_error) << ")\n";
  return pass ? kOk : kPropertyFailure;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  VerifyOptions options = args.options;
  if (args.channel) {
    options.channel = args.allow_nontp ? read_kraus_file(*args.channel) : KrausMap(read_channel_file(*args.channel));
  }
  const VerifyReport report = run_verification(options);
  out << format_report(options, report);
  return report.all_passed() ? kOk : kPropertyFailure;
}

int cmd_gen(const GenArgs& args, std::ostream& out) {
  SeededRng rng(args.seed);
  const auto dim = [&](std::size_t i) { return static_cast<Eigen::Index>(args.dims[i]); };
  std::string text;
  if (args.kind == "density") {
    require_dims(args, 2);
    const auto n = dim(0) * dim(1);
    text = dump_state(BipartiteState(dim(0), dim(1), random_density(n, args.rank > 0 ? args.rank : n, rng)));
  } else if (args.kind == "product") {
    require_dims(args, 2);
    const DensityMatrix ra = random_density(dim(0), dim(0), rng);
    const DensityMatrix rb = random_density(dim(1), dim(1), rng);
    text = dump_state(product_state(ra, rb));
  } else if (args.kind == "cq-state") {
    require_dims(args, 2);
    text = dump_state(random_classical_quantum(dim(0), dim(1), rng));
  } else if (args.kind == "bell") {
    require_dims(args, 2);
    if (dim(0) != dim(1)) {
      throw Error(ErrorKind::DimensionMismatch, "maximally entangled state needs equal dimensions");
    }
    text = dump_state(BipartiteState(dim(0), dim(1), maximally_entangled(dim(0))));
  } else if (args.kind == "example1") {
    if (!args.dims.empty()) require_dims(args, 0);
    text = dump_state(example1_state());
  } else if (args.kind == "channel") {
    require_dims(args, 1);
    text = dump_kraus(random_channel(dim(0), args.kraus, rng));
  } else if (args.kind == "depolarizing") {
    require_dims(args, 1);
    text = dump_kraus(depolarizing_channel(dim(0)));
  } else if (args.kind == "amplitude-damping") {
    if (!args.dims.empty() && !(args.dims.size() == 1 && args.dims[0] == 2)) {
      throw Error(ErrorKind::InvalidArgument, "amplitude damping acts on a qubit");
    }
    text = dump_kraus(amplitude_damping(args.p));
  } else {
    throw Error(ErrorKind::InvalidArgument, fmt::format("unknown kind '{}'", args.kind));
  }
  emit(args.out, text, out);
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Channel-relative skew information and correlation measures"};
  app.require_subcommand(1);

  MeasureArgs measure;
  auto* measure_cmd = app.add_subcommand("measure", "Evaluate T, D^T and D for a state and a channel on A");
  measure_cmd->add_option("state", measure.state, "State file")->required();
  measure_cmd->add_option("channel", measure.channel, "Channel file")->required();
  measure_cmd->add_option("--alpha", measure.alpha, "Skew parameter in (0, 1)")->required();
  measure_cmd->add_flag("--allow-nontp", measure.allow_nontp, "Accept non-trace-preserving Kraus maps");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep-example1", "Amplitude-damping example sweep as CSV");
  sweep_cmd->add_option("--alpha", sweep.alpha, "alpha value or lo:hi range")->capture_default_str();
  sweep_cmd->add_option("--p", sweep.p, "damping value or lo:hi range")->capture_default_str();
  sweep_cmd->add_option("--steps", sweep.steps, "grid points per range, n or n_alpha,n_p")->capture_default_str();
  std::string sweep_out;
  sweep_cmd->add_option("--out", sweep_out, "Output CSV path (default stdout)");

  OptimizeArgs optimize;
  double optimize_alpha = 0.0;
  auto* optimize_cmd = app.add_subcommand("optimize", "Optimize correlations over measurements or unitaries on A");
  optimize_cmd->add_option("state", optimize.state, "State file")->required();
  optimize_cmd->add_option("objective", optimize.objective, "Objective")
      ->required()
      ->check(CLI::IsMember({"max-proj", "min-proj", "max-unitary", "geo-discord", "min-nondisturb"}));
  auto* alpha_opt = optimize_cmd->add_option("--alpha", optimize_alpha, "Skew parameter in (0, 1)");
  optimize_cmd->add_option("--restarts", optimize.budget.restarts)->capture_default_str();
  optimize_cmd->add_option("--max-evals", optimize.budget.max_evals)->capture_default_str();
  optimize_cmd->add_option("--tol", optimize.budget.tol)->capture_default_str();
  optimize_cmd->add_option("--seed", optimize.budget.seed)->capture_default_str();

  TwirlArgs twirl;
  auto* twirl_cmd = app.add_subcommand("twirl", "Twirling-channel correlation: closed form, depolarizing, Monte Carlo");
  twirl_cmd->add_option("state", twirl.state, "State file")->required();
  twirl_cmd->add_option("--alpha", twirl.alpha)->capture_default_str();
  twirl_cmd->add_option("--n", twirl.n, "Monte Carlo samples")->capture_default_str();
  twirl_cmd->add_option("--seed", twirl.seed)->capture_default_str();

  VerifyArgs verify;
  std::string verify_dims = "2:4";
  double verify_alpha = 0.0;
  std::string verify_channel;
  auto* verify_cmd = app.add_subcommand("verify", "Randomized property suite");
  verify_cmd->add_option("--dims", verify_dims, "max dimension, or min:max")->capture_default_str();
  verify_cmd->add_option("--n", verify.options.instances, "instances")->capture_default_str();
  verify_cmd->add_option("--seed", verify.options.seed)->capture_default_str();
  verify_cmd->add_option("--tol", verify.options.tol)->capture_default_str();
  auto* verify_alpha_opt = verify_cmd->add_option("--alpha", verify_alpha, "Pin alpha for every instance");
  verify_cmd->add_option("--channel", verify_channel, "Use this channel on A instead of random ones");
  verify_cmd->add_flag("--allow-nontp", verify.allow_nontp, "Accept a non-trace-preserving --channel");
  verify_cmd->add_option("--optimizer-stride", verify.options.optimizer_stride,
                         "run optimizer properties every k-th instance (0 disables)")
      ->capture_default_str();
  verify_cmd->add_option("--only", verify.options.only, "Run only these property ids");

  GenArgs gen;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "Write a state or channel file");
  gen_cmd->add_option("kind", gen.kind, "Kind")
      ->required()
      ->check(CLI::IsMember(
          {"density", "channel", "cq-state", "bell", "example1", "product", "depolarizing", "amplitude-damping"}));
  gen_cmd->add_option("dims", gen.dims, "Dimensions");
  gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
  gen_cmd->add_option("--kraus", gen.kraus, "Kraus operators of a random channel")->capture_default_str();
  gen_cmd->add_option("--rank", gen.rank, "Rank of a random density matrix (0 = full)")->capture_default_str();
  gen_cmd->add_option("--p", gen.p, "Amplitude damping probability")->capture_default_str();
  gen_cmd->add_option("--out", gen_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kValidation;
  }

  try {
    if (*measure_cmd) return cmd_measure(measure, out);
    if (*sweep_cmd) {
      if (!sweep_out.empty()) sweep.out = sweep_out;
      return cmd_sweep_example1(sweep, out);
    }
    if (*optimize_cmd) {
      if (alpha_opt->count() > 0) optimize.alpha = optimize_alpha;
      return cmd_optimize(optimize, out);
    }
    if (*twirl_cmd) return cmd_twirl(twirl, out);
    if (*verify_cmd) {
      const Axis dims = parse_axis(verify_dims);
      const bool has_min = verify_dims.find(':') != std::string::npos;
      verify.options.min_dim = has_min ? static_cast<int>(dims.lo) : 2;
      verify.options.max_dim = static_cast<int>(dims.hi);
      if (verify_alpha_opt->count() > 0) verify.options.alpha = verify_alpha;
      if (!verify_channel.empty()) verify.channel = verify_channel;
      return cmd_verify(verify, out);
    }
    if (*gen_cmd) {
      if (!gen_out.empty()) gen.out = gen_out;
      return cmd_gen(gen, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return kValidation;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace skewcorr::cli
