#pragma once

// Scalar types and working-precision control.
//
// Every numeric routine in the library is a template over the real scalar.
// Two instantiations exist: `double` (machine precision) and `BigReal`, an
// MPFR-backed float whose precision is chosen at run time in decimal digits.

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Core>

namespace hadamard {

using BigReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                              boost::multiprecision::et_off>;

}  // namespace hadamard

namespace Eigen {

template <>
struct NumTraits<hadamard::BigReal> : GenericNumTraits<hadamard::BigReal> {
  using Big = hadamard::BigReal;
  using Real = Big;
  using NonInteger = Big;
  using Nested = Big;
  using Literal = Big;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 10,
    MulCost = 40
  };
  static Big epsilon() { return std::numeric_limits<Big>::epsilon(); }
  static Big dummy_precision() { return 1000 * epsilon(); }
  static Big highest() { return (std::numeric_limits<Big>::max)(); }
  static Big lowest() { return std::numeric_limits<Big>::lowest(); }
  static Big infinity() { return std::numeric_limits<Big>::infinity(); }
  static Big quiet_NaN() { return std::numeric_limits<Big>::quiet_NaN(); }
  static int digits10() { return static_cast<int>(Big::default_precision()); }
};

}  // namespace Eigen

namespace hadamard {

template <class Real>
using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
template <class Real>
using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

/// Working precision: IEEE double, or MPFR with a decimal digit count.
struct Precision {
  enum class Mode { machine, arbitrary };

  static constexpr unsigned kDefaultDigits = 50;
  static constexpr unsigned kMinDigits = 30;

  Mode mode = Mode::machine;
  unsigned digits = 16;

  static Precision machine() { return {}; }
  /// Throws std::invalid_argument when digits < 30.
  static Precision arbitrary(unsigned digits = kDefaultDigits);
  /// Machine precision for digits <= 17, arbitrary otherwise.
  static Precision from_digits(unsigned digits);

  bool is_arbitrary() const { return mode == Mode::arbitrary; }
};

/// Sets the default BigReal precision and restores the previous value on
/// destruction. The MPFR default is process-wide, so scopes with different
/// digit counts must not overlap across threads.
class DigitsScope {
 public:
  explicit DigitsScope(unsigned digits) : saved_(BigReal::default_precision()) {
    BigReal::default_precision(digits);
  }
  ~DigitsScope() { BigReal::default_precision(saved_); }
  DigitsScope(const DigitsScope&) = delete;
  DigitsScope& operator=(const DigitsScope&) = delete;

 private:
  unsigned saved_;
};

/// Calls `f(Real{})` with Real = double or BigReal according to `prec`.
/// For BigReal the digit count is in force for the duration of the call.
template <class F>
decltype(auto) dispatch(const Precision& prec, F&& f) {
  if (!prec.is_arbitrary()) return std::forward<F>(f)(double{});
  DigitsScope scope(prec.digits);
  return std::forward<F>(f)(BigReal{});
}

template <class Real>
Real pi() {
  if constexpr (std::is_same_v<Real, double>) {
    return 3.14159265358979323846264338327950288;
  } else {
    Real r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
  }
}

template <class Real>
Real two_pi() {
  return 2 * pi<Real>();
}

/// Decimal digits carried by Real in the current scope.
template <class Real>
unsigned working_digits() {
  if constexpr (std::is_same_v<Real, double>) {
    return 16;
  } else {
    return BigReal::default_precision();
  }
}

/// Machine epsilon of Real in the current scope.
template <class Real>
Real epsilon() {
  return std::numeric_limits<Real>::epsilon();
}

template <class Real>
Real parse_real(std::string_view text);

template <class Real>
std::string format_real(const Real& x, int digits);

template <class Real>
double to_double(const Real& x) {
  return static_cast<double>(x);
}

/// Reduces an angle into [0, 2*pi).
template <class Real>
Real wrap_angle(const Real& x) {
  using std::floor;
  const Real period = two_pi<Real>();
  Real r = x - period * floor(x / period);
  if (r >= period) r -= period;
  if (r < 0) r += period;
  return r;
}

/// Reduces an angle difference into (-pi, pi].
template <class Real>
Real wrap_difference(const Real& x) {
  Real r = wrap_angle(x);
  if (r > pi<Real>()) r -= two_pi<Real>();
  return r;
}

}  // namespace hadamard
