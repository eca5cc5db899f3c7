#pragma once

// Exact weight arithmetic.
//
// Every distance the library computes is a WeightValue: a non-negative 128-bit
// integer numerator over a denominator that is fixed per object (a graph
// overlay, a scale graph, a hopset). Original graph weights embed by
// multiplying with that denominator, so comparisons never round.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "hopsets/errors.hpp"

namespace hopsets {

__extension__ using Int128 = __int128;
__extension__ using UInt128 = unsigned __int128;

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr Int128 kInt128Max = static_cast<Int128>(~UInt128{0} >> 1);

inline std::string to_string(Int128 value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  UInt128 magnitude = negative ? UInt128(0) - static_cast<UInt128>(value) : static_cast<UInt128>(value);
  std::string digits;
  while (magnitude != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(magnitude % 10)));
    magnitude /= 10;
  }
  if (negative) digits.push_back('-');
  return {digits.rbegin(), digits.rend()};
}

inline Int128 parse_int128(std::string_view text) {
  if (text.empty()) throw ParseError(0, "empty integer");
  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) throw ParseError(0, "malformed integer '" + std::string(text) + "'");
  UInt128 magnitude = 0;
  const UInt128 limit = static_cast<UInt128>(kInt128Max);
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c < '0' || c > '9') throw ParseError(0, "malformed integer '" + std::string(text) + "'");
    magnitude = magnitude * 10 + static_cast<UInt128>(c - '0');
    if (magnitude > limit) throw ParseError(0, "integer out of 128-bit range '" + std::string(text) + "'");
  }
  const auto value = static_cast<Int128>(magnitude);
  return negative ? -value : value;
}

inline Int128 checked_mul(Int128 a, Int128 b) {
  Int128 out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("128-bit weight overflow in multiplication");
  return out;
}

inline Int128 checked_add(Int128 a, Int128 b) {
  Int128 out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("128-bit weight overflow in addition");
  return out;
}

inline BigInt to_bigint(Int128 value) {
  const bool negative = value < 0;
  UInt128 magnitude = negative ? UInt128(0) - static_cast<UInt128>(value) : static_cast<UInt128>(value);
  BigInt out = static_cast<std::uint64_t>(magnitude >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(magnitude);
  return negative ? BigInt(-out) : out;
}

// Position of the most significant set bit, or -1 for zero.
inline long msb_or_zero(const BigInt& value) {
  return value == 0 ? -1 : static_cast<long>(boost::multiprecision::msb(value));
}

inline Int128 to_int128(const BigInt& value) {
  const BigInt magnitude = abs(value);
  if (msb_or_zero(magnitude) >= 127) throw OverflowError("value exceeds the 128-bit weight budget");
  const auto high = static_cast<std::uint64_t>(magnitude >> 64);
  const auto low = static_cast<std::uint64_t>(magnitude & BigInt(std::numeric_limits<std::uint64_t>::max()));
  const auto out = static_cast<Int128>((static_cast<UInt128>(high) << 64) | low);
  return value < 0 ? -out : out;
}

// floor(q) for q >= 0.
inline BigInt floor_nonnegative(const Rational& q) {
  return numerator(q) / denominator(q);
}

// ceil(q) for q >= 0.
inline BigInt ceil_nonnegative(const Rational& q) {
  const BigInt num = numerator(q);
  const BigInt den = denominator(q);
  return (num + den - 1) / den;
}

class WeightValue {
 public:
  using Rep = Int128;

  constexpr WeightValue() = default;

  static constexpr WeightValue from_raw(Rep raw) { return WeightValue(raw); }
  static constexpr WeightValue zero() { return WeightValue(0); }
  static constexpr WeightValue infinity() { return WeightValue(kInfinityRep); }

  // An integer weight expressed over `denominator`.
  static WeightValue from_integer(Rep value, Rep denominator) {
    return WeightValue(checked_mul(value, denominator));
  }

  constexpr Rep raw() const { return raw_; }
  constexpr bool is_infinite() const { return raw_ == kInfinityRep; }
  constexpr bool is_finite() const { return raw_ != kInfinityRep; }

  friend WeightValue operator+(WeightValue a, WeightValue b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    const Rep sum = checked_add(a.raw_, b.raw_);
    if (sum == kInfinityRep) throw OverflowError("weight sum collides with the infinity sentinel");
    return WeightValue(sum);
  }

  WeightValue& operator+=(WeightValue other) { return *this = *this + other; }

  friend constexpr auto operator<=>(WeightValue a, WeightValue b) = default;

  Rational as_rational(Rep denominator) const {
    return Rational(to_bigint(raw_), to_bigint(denominator));
  }

  double as_double(Rep denominator) const {
    if (is_infinite()) return std::numeric_limits<double>::infinity();
    return static_cast<double>(raw_) / static_cast<double>(denominator);
  }

  std::string to_string() const { return is_infinite() ? "inf" : hopsets::to_string(raw_); }

 private:
  static constexpr Rep kInfinityRep = kInt128Max;
  constexpr explicit WeightValue(Rep raw) : raw_(raw) {}

  Rep raw_ = 0;
};

// Accepts "3", "0.3", "-1.25" and "3/10". Decimal input is converted exactly.
inline Rational parse_rational(std::string_view text) {
  const std::string source(text);
  auto fail = [&]() -> Rational { throw ParseError(0, "malformed number '" + source + "'"); };
  if (text.empty()) return fail();
  auto digits_only = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  // cpp_int reads a leading 0 as an octal prefix.
  auto decimal = [](std::string_view s) {
    while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
    return BigInt(std::string(s));
  };
  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational out;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!digits_only(num) || !digits_only(den)) return fail();
    const BigInt d = decimal(den);
    if (d == 0) throw ParseError(0, "zero denominator in '" + source + "'");
    out = Rational(decimal(num), d);
  } else {
    const auto dot = text.find('.');
    const auto whole = text.substr(0, dot);
    const auto frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (whole.empty() && frac.empty()) return fail();
    if ((!whole.empty() && !digits_only(whole)) || (!frac.empty() && !digits_only(frac))) return fail();
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const BigInt num = decimal(std::string(whole.empty() ? "0" : whole) + std::string(frac));
    out = Rational(num, scale);
  }
  return negative ? Rational(-out) : out;
}

// "3/10", or "2" for integers.
inline std::string format_rational(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace hopsets
