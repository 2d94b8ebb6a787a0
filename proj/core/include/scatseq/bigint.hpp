#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace scatseq {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Raised when a precondition on the caller's input is violated.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a requested computation would exceed the configured work budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string to_decimal(const BigInt& v) { return v.str(); }

inline BigInt ipow(const BigInt& base, std::uint64_t exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp != 0) {
    if (exp & 1U) result *= b;
    exp >>= 1U;
    if (exp != 0) b *= b;
  }
  return result;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(a, b);
}

/// Non-negative residue of `v` modulo `m` (m > 0).
inline std::uint64_t mod_u64(const BigInt& v, std::uint64_t m) {
  BigInt r = v % m;
  if (r < 0) r += m;
  return r.convert_to<std::uint64_t>();
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) result = mulmod_u64(result, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1U;
  }
  return result;
}

}  // namespace scatseq
