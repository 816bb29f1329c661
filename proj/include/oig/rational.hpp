#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

#include "oig/error.hpp"

namespace oig {

using Rational = boost::rational<std::int64_t>;

/// Parses "3", "0.125" or "1/80" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational { throw InputError("not a rational number: '" + std::string(text) + "'"); };
  if (text.empty()) return fail();
  auto parse_int = [&](std::string_view s) -> std::int64_t {
    if (s.empty()) fail();
    std::int64_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') fail();
      if (v > (INT64_MAX - 9) / 10) fail();
      v = v * 10 + (c - '0');
    }
    return v;
  };
  bool negative = false;
  if (text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  Rational out;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::int64_t den = parse_int(text.substr(slash + 1));
    if (den == 0) return fail();
    out = Rational(parse_int(text.substr(0, slash)), den);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 15 || (dot == 0 && frac.empty())) return fail();
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const std::int64_t whole = dot == 0 ? 0 : parse_int(text.substr(0, dot));
    out = Rational(whole * scale + (frac.empty() ? 0 : parse_int(frac)), scale);
  } else {
    out = Rational(parse_int(text));
  }
  return negative ? -out : out;
}

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// ceil(r) for non-negative r.
inline std::int64_t ceil_nonneg(const Rational& r) {
  return (r.numerator() + r.denominator() - 1) / r.denominator();
}

}  // namespace oig
