#include "bandpos/power_set.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

namespace bandpos {

namespace {

std::string format_threshold(double t) {
  std::ostringstream os;
  os.precision(12);
  os << t;
  return os.str();
}

// (lower end, closed at lower end, naturals strictly below the tail)
std::tuple<double, bool, bool> canonical(const PowerSet& s) {
  if (!s.includes_naturals) return {std::max(s.tail_threshold, 0.0), true, false};
  if (s.tail_threshold > 1.0) return {s.tail_threshold, true, true};
  if (s.tail_threshold > 0.0) return {s.tail_threshold, true, false};
  return {0.0, false, false};  // (0, inf)
}

}  // namespace

bool PowerSet::contains(double r) const {
  if (!(r >= 0.0)) return false;
  if (r == 0.0) return !includes_naturals && tail_threshold <= 0.0;
  if (r >= tail_threshold) return true;
  return includes_naturals && std::floor(r) == r;
}

std::string PowerSet::to_string() const {
  const auto [lo, closed, naturals] = canonical(*this);
  const std::string interval = (closed ? "[" : "(") + format_threshold(lo) + ", ∞)";
  return naturals ? "ℕ ∪ " + interval : interval;
}

bool operator==(const PowerSet& a, const PowerSet& b) { return canonical(a) == canonical(b); }

}  // namespace bandpos
