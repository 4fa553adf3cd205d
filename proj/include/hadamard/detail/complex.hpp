#pragma once

// Minimal complex arithmetic that works for any real scalar, including
// BigReal (std::complex is only specified for the builtin float types).

#include <cmath>

namespace hadamard::detail {

template <class Real>
struct Cx {
  Real re{};
  Real im{};

  static Cx polar(const Real& phase) {
    using std::cos;
    using std::sin;
    return {cos(phase), sin(phase)};
  }

  Cx conj() const { return {re, -im}; }
  Real norm2() const { return re * re + im * im; }

  friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
  friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cx operator*(const Cx& a, const Cx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  Cx& operator+=(const Cx& b) {
    re += b.re;
    im += b.im;
    return *this;
  }
};

}  // namespace hadamard::detail
