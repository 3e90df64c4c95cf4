#pragma once

// The verification suite: run configuration, the registry of checks, and
// deterministic JSON serialization of reports and points.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "flatsym/cohomology.hpp"
#include "flatsym/report.hpp"

namespace flatsym {

struct RunConfig {
  /// n of SU(n); 2 or 3.
  int group = 2;
  int genus = 2;
  /// beta = e^{2 pi i k / n} I.
  int beta_index = 1;
  std::uint64_t seed = 20240607;
  /// Scale: 100 reproduces the reference sample counts; 0 runs nothing.
  std::size_t samples = 100;
  double fd_step = 1e-4;
  int fd_order = 4;
  int quad_order = 24;
  /// Per-check tolerance overrides by check id.
  std::map<std::string, double> tolerances;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

/// Sample count for a check whose reference count is `base` at samples = 100.
std::size_t scaled_samples(const RunConfig &config, std::size_t base);

/// Every check id produced by run_all for this config, in report order.
std::vector<std::string> check_ids(const RunConfig &config);

VerificationReport run_all(const RunConfig &config);

/// Runs the group of checks containing `id` and keeps only that id. Throws
/// std::invalid_argument for an unknown id.
VerificationReport run_check(const RunConfig &config, const std::string &id);

/// 0 when every check passed, 2 otherwise.
int exit_code(const VerificationReport &report);

/// Stable-order JSON: schema, config echo, checks, summary, wall time.
std::string report_json(const VerificationReport &report, const RunConfig &config,
                        double wall_seconds);

/// {"group", "genus", "target", "residual", "point"} with matrices as row-major
/// arrays of [re, im] pairs.
std::string point_json(const RepPoint &h, const GroupPoint &target);

/// Reads the "point" field written by point_json. Throws std::invalid_argument.
RepPoint parse_point_json(const std::string &text);

struct DimsRow {
  std::string label;
  ComplexSummary summary;
};

std::string dims_json(const std::vector<DimsRow> &rows, const RunConfig &config);
std::string dims_table(const std::vector<DimsRow> &rows);

/// Parses "central:k" or "word:<w>" and returns the target element t.
/// Throws std::invalid_argument for a malformed target.
GroupPoint parse_target(const std::string &target, const RunConfig &config);

} // namespace flatsym
