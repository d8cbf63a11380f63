#pragma once

#include <string>

namespace bandpos {

/// A set of exponents of the form [t, inf) or N ∪ [t, inf), with N = {1, 2, 3, ...}.
struct PowerSet {
  double tail_threshold = 0.0;
  bool includes_naturals = false;

  static PowerSet tail(double t) { return {t, false}; }
  static PowerSet naturals_and_tail(double t) { return {t, true}; }

  /// Membership for any real r. Negative r is never a member; r = 0 is a
  /// member only of a plain tail set with t <= 0 (N excludes 0).
  bool contains(double r) const;

  /// "[t, ∞)" or "ℕ ∪ [t, ∞)"; N ∪ [t, ∞) with t <= 1 collapses to the interval.
  std::string to_string() const;

  /// Set equality: N ∪ [t, inf) with 0 < t <= 1 equals [t, inf).
  friend bool operator==(const PowerSet& a, const PowerSet& b);
};

}  // namespace bandpos
