#include "flatsym/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace flatsym {

void CheckResult::settle() {
  pass = !flagged &&
         (bound == Bound::upper ? max_residual <= tolerance : max_residual > tolerance);
}

void ResidualTracker::add(double residual) {
  ++count_;
  if (std::isnan(residual) || std::isnan(worst_))
    worst_ = std::numeric_limits<double>::quiet_NaN();
  else
    worst_ = std::max(worst_, std::abs(residual));
}

void MinimumTracker::add(double value) {
  if (count_ == 0 || std::isnan(value) || value < least_)
    least_ = value;
  ++count_;
}

double MinimumTracker::least() const {
  return count_ == 0 ? std::numeric_limits<double>::infinity() : least_;
}

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.pass; });
}

const CheckResult *VerificationReport::find(const std::string &id) const {
  for (const auto &c : checks)
    if (c.id == id)
      return &c;
  return nullptr;
}

void VerificationReport::append(const VerificationReport &other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

void VerificationReport::add(CheckResult check) { checks.push_back(std::move(check)); }

CheckResult make_upper_check(std::string id, std::string description, std::string anchor,
                             const ResidualTracker &t, double tolerance, std::uint64_t seed) {
  CheckResult c;
  c.id = std::move(id);
  c.description = std::move(description);
  c.anchor = std::move(anchor);
  c.samples = t.count();
  c.max_residual = t.worst();
  c.tolerance = tolerance;
  c.bound = Bound::upper;
  c.seed = seed;
  c.settle();
  return c;
}

CheckResult make_lower_check(std::string id, std::string description, std::string anchor,
                             const MinimumTracker &t, double tolerance, std::uint64_t seed) {
  CheckResult c;
  c.id = std::move(id);
  c.description = std::move(description);
  c.anchor = std::move(anchor);
  c.samples = t.count();
  c.max_residual = t.least();
  c.tolerance = tolerance;
  c.bound = Bound::lower;
  c.seed = seed;
  c.settle();
  return c;
}

} // namespace flatsym
