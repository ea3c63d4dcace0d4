#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skewcorr/channels.hpp"

namespace skewcorr {

struct VerifyOptions {
  int instances = 200;
  int min_dim = 2;
  int max_dim = 4;
  std::uint64_t seed = 42;
  double tol = 1e-8;
  /// Fixed alpha for every instance; otherwise uniform on [0.05, 0.95].
  std::optional<double> alpha;
  /// Replaces the random channel on A (may be non-trace-preserving).
  std::optional<KrausMap> channel;
  /// Optimizer properties run on every `optimizer_stride`-th instance;
  /// 0 disables them.
  int optimizer_stride = 20;
  int optimizer_restarts = 8;
  /// Restrict the run to these property ids; empty runs all.
  std::vector<std::string> only;
};

struct PropertyFailure {
  int instance;
  std::uint64_t instance_seed;
  std::string detail;
};

struct PropertyReport {
  std::string id;
  std::string description;
  int checked = 0;
  int passed = 0;
  std::optional<PropertyFailure> first_failure;

  bool ok() const { return passed == checked; }
};

struct VerifyReport {
  std::vector<PropertyReport> properties;

  bool all_passed() const;
  const PropertyReport* find(const std::string& id) const;
};

/// Ids of every property, in report order.
std::vector<std::string> property_ids();

VerifyReport run_verification(const VerifyOptions& options);
/// Deterministic plain-text summary, one line per property.
std::string format_report(const VerifyOptions& options, const VerifyReport& report);

}  // namespace skewcorr
