#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <cmath>
#include <string>
#include <string_view>

namespace bandpos {

/// Exact rational scalar (GMP). Every finite double converts to it exactly.
using Rational = mpq_class;

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const Rational&) { return true; }

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.get_d(); }

/// Parses "p/q", "-3", "0.25" or "1.5e-3" into an exact rational.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when q == 1).
std::string to_string(const Rational& x);

}  // namespace bandpos

namespace Eigen {

template <>
struct NumTraits<bandpos::Rational> : GenericNumTraits<bandpos::Rational> {
  using Real = bandpos::Rational;
  using NonInteger = bandpos::Rational;
  using Nested = bandpos::Rational;
  using Literal = bandpos::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 20,
    MulCost = 40
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

namespace internal {

// mpq_class has no conversion operator; go through get_d().
template <>
struct cast_impl<bandpos::Rational, double> {
  static inline double run(const bandpos::Rational& x) { return x.get_d(); }
};

}  // namespace internal

}  // namespace Eigen
