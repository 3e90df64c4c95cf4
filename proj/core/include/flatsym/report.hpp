#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace flatsym {

/// Whether `value` must stay below or above `tolerance`.
enum class Bound { upper, lower };

struct CheckResult {
  std::string id;
  std::string description;
  /// ASCII statement of the identity being checked.
  std::string anchor;
  std::size_t samples = 0;
  /// Worst residual over samples (upper bound), or smallest observed value
  /// (lower bound, e.g. a singular value).
  double max_residual = 0.0;
  double tolerance = 0.0;
  Bound bound = Bound::upper;
  bool pass = true;
  std::uint64_t seed = 0;
  /// Free-form remark, e.g. a flagged dimension anomaly.
  std::string note;
  /// Fails the check regardless of the value (e.g. a violated precondition).
  bool flagged = false;

  /// Recomputes `pass` from value, tolerance, bound and flag.
  void settle();
};

/// Accumulates a worst-case residual over samples.
class ResidualTracker {
public:
  void add(double residual);
  double worst() const { return worst_; }
  std::size_t count() const { return count_; }

private:
  double worst_ = 0.0;
  std::size_t count_ = 0;
};

/// Accumulates the smallest value over samples (lower-bound checks).
class MinimumTracker {
public:
  void add(double value);
  double least() const;
  std::size_t count() const { return count_; }

private:
  double least_ = 0.0;
  std::size_t count_ = 0;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool all_passed() const;
  const CheckResult *find(const std::string &id) const;
  void append(const VerificationReport &other);
  void add(CheckResult check);
};

CheckResult make_upper_check(std::string id, std::string description, std::string anchor,
                             const ResidualTracker &t, double tolerance, std::uint64_t seed);
CheckResult make_lower_check(std::string id, std::string description, std::string anchor,
                             const MinimumTracker &t, double tolerance, std::uint64_t seed);

} // namespace flatsym
