#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace mgraphon {

// Expression templates off: every operation yields a plain value.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

inline BigInt factorial(std::uint64_t k) {
  BigInt r = 1;
  for (std::uint64_t t = 2; t <= k; ++t) r *= t;
  return r;
}

// k!! = k (k-2) (k-4) ...; 0!! = (-1)!! = 1.
inline BigInt double_factorial(std::int64_t k) {
  BigInt r = 1;
  for (std::int64_t t = k; t > 1; t -= 2) r *= t;
  return r;
}

// x^{(k)} = x (x+1) ... (x+k-1), 1 for k = 0.
inline Rational rising_factorial(const Rational& x, std::uint64_t k) {
  Rational r = 1;
  for (std::uint64_t t = 0; t < k; ++t) r *= x + t;
  return r;
}

// (x)_k = x (x-1) ... (x-k+1), 1 for k = 0.
inline Rational falling_factorial(const Rational& x, std::uint64_t k) {
  Rational r = 1;
  for (std::uint64_t t = 0; t < k; ++t) r *= x - t;
  return r;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace mgraphon
