#include "hadamard/precision.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

#include "hadamard/errors.hpp"

namespace hadamard {

Precision Precision::arbitrary(unsigned digits) {
  if (digits < kMinDigits) {
    throw InvalidInput("arbitrary precision needs at least " + std::to_string(kMinDigits) + " digits, got " +
                       std::to_string(digits));
  }
  return {Mode::arbitrary, digits};
}

Precision Precision::from_digits(unsigned digits) {
  if (digits <= 17) return machine();
  return arbitrary(std::max(digits, kMinDigits));
}

template <>
double parse_real<double>(std::string_view text) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  while (first != last && *first == ' ') ++first;
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) throw InvalidInput("not a decimal number: '" + std::string(text) + "'");
  return value;
}

template <>
BigReal parse_real<BigReal>(std::string_view text) {
  try {
    return BigReal(std::string(text));
  } catch (const std::exception&) {
    throw InvalidInput("not a decimal number: '" + std::string(text) + "'");
  }
}

template <>
std::string format_real<double>(const double& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

template <>
std::string format_real<BigReal>(const BigReal& x, int digits) {
  return x.str(digits, std::ios_base::fmtflags{});
}

}  // namespace hadamard
