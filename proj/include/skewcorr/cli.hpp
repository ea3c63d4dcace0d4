#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "skewcorr/optimize.hpp"
#include "skewcorr/verify.hpp"

namespace skewcorr::cli {

enum ExitCode : int {
  kOk = 0,
  kPropertyFailure = 1,
  kValidation = 2,
  kDimensionMismatch = 3,
  kIo = 4,
  kNotConverged = 5,
};

int exit_code_for(ErrorKind kind);

struct MeasureArgs {
  std::filesystem::path state;
  std::filesystem::path channel;
  double alpha = 0.5;
  bool allow_nontp = false;
};

/// Grid axis written as "v" or "lo:hi".
struct Axis {
  double lo;
  double hi;
  bool is_range() const { return lo != hi; }
};
Axis parse_axis(const std::string& text);

struct SweepArgs {
  std::string alpha = "0.05:0.95";
  std::string p = "0.25";
  /// "n" for the single ranged axis, or "n_alpha,n_p".
  std::string steps = "19";
  std::optional<std::filesystem::path> out;
};

struct SweepRow {
  double alpha;
  double p;
  double dt;
  double d;
  double dt_closed;
  double d_closed;
};

inline constexpr const char* kSweepHeader = "alpha,p,dt,d,dt_closed,d_closed";

/// Rows ordered alpha-major, p-minor.
std::vector<SweepRow> sweep_example1(const SweepArgs& args);
std::string format_csv(const std::vector<SweepRow>& rows);

struct OptimizeArgs {
  std::filesystem::path state;
  std::string objective;  // max-proj, min-proj, max-unitary, geo-discord, min-nondisturb
  std::optional<double> alpha;
  OptBudget budget;
};

struct TwirlArgs {
  std::filesystem::path state;
  double alpha = 0.5;
  long n = 20000;
  std::uint64_t seed = 42;
};

struct VerifyArgs {
  VerifyOptions options;
  std::optional<std::filesystem::path> channel;
  bool allow_nontp = false;
};

struct GenArgs {
  std::string kind;  // density, channel, cq-state, bell, example1, product, depolarizing, amplitude-damping
  std::vector<int> dims;
  std::uint64_t seed = 42;
  int kraus = 2;
  int rank = 0;  // 0 means full rank
  double p = 0.25;
  std::optional<std::filesystem::path> out;
};

int cmd_measure(const MeasureArgs& args, std::ostream& out);
int cmd_sweep_example1(const SweepArgs& args, std::ostream& out);
int cmd_optimize(const OptimizeArgs& args, std::ostream& out);
int cmd_twirl(const TwirlArgs& args, std::ostream& out);
int cmd_verify(const VerifyArgs& args, std::ostream& out);
int cmd_gen(const GenArgs& args, std::ostream& out);

/// Full command line including the program name. Library errors are
/// reported on `err` and mapped to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace skewcorr::cli
