#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace calibkit {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational scalar. Stored reduced with positive denominator; arithmetic
/// never overflows.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& q) { return q.str(); }

inline Rational rational_from_string(const std::string& s) {
  try {
    return Rational(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational literal: '" + s + "'");
  }
}

inline double to_double(const Rational& q) { return static_cast<double>(q); }

/// Exact integer k-th root, or nullopt if n is not a perfect k-th power.
inline std::optional<BigInt> exact_kth_root(const BigInt& n, unsigned k) {
  if (k == 0) return std::nullopt;
  if (n < 0) {
    if (k % 2 == 0) return std::nullopt;
    auto r = exact_kth_root(-n, k);
    if (!r) return std::nullopt;
    return -*r;
  }
  if (n == 0 || n == 1 || k == 1) return n;
  BigInt lo = 0, hi = 1;
  while (boost::multiprecision::pow(hi, k) < n) hi <<= 1;
  while (lo < hi) {
    BigInt mid = (lo + hi) / 2;
    if (boost::multiprecision::pow(mid, k) < n)
      lo = mid + 1;
    else
      hi = mid;
  }
  return boost::multiprecision::pow(lo, k) == n ? std::optional<BigInt>(lo) : std::nullopt;
}

/// Exact rational k-th root (numerator and denominator must both be perfect powers).
inline std::optional<Rational> exact_kth_root(const Rational& q, unsigned k) {
  auto rn = exact_kth_root(numerator(q), k);
  if (!rn) return std::nullopt;
  auto rd = exact_kth_root(denominator(q), k);
  if (!rd) return std::nullopt;
  return Rational(*rn, *rd);
}

inline std::optional<Rational> exact_sqrt(const Rational& q) { return exact_kth_root(q, 2); }

}  // namespace calibkit
