#pragma once

/**
 * @file arith.hpp
 * @brief Rational integer helpers shared by every module: primality,
 * squarefree parts, sieving, overflow-checked products and logarithms of
 * arbitrary-precision integers.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace sysarith {

__extension__ using int128 = __int128;
__extension__ using uint128 = unsigned __int128;

using bigint = boost::multiprecision::cpp_int;

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<uint128>(a) * b % m);
}

} // namespace detail

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) result = detail::mulmod(result, base, m);
    base = detail::mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

/// Deterministic Miller-Rabin for the full 64-bit range.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  r = std::min<std::uint64_t>(r, 0xFFFFFFFFULL);
  while (r > 0 && r * r > n) --r;
  while (r < 0xFFFFFFFFULL && (r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline bool is_perfect_square(std::uint64_t n) {
  const auto r = isqrt(n);
  return r * r == n;
}

/// True iff no prime square divides n. Requires n >= 1.
inline bool is_squarefree(std::uint64_t n) {
  if (n == 0) throw input_error("is_squarefree: n must be positive");
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return false;
  }
  return true;
}

/// Squarefree part of a nonzero integer, sign preserved: n = s * m^2.
inline std::int64_t squarefree_part(std::int64_t n) {
  if (n == 0) throw input_error("squarefree_part: n must be nonzero");
  const std::int64_t sign = n < 0 ? -1 : 1;
  auto m = static_cast<std::uint64_t>(n < 0 ? -n : n);
  std::uint64_t result = 1;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e % 2 == 1) result *= p;
  }
  result *= m;
  return sign * static_cast<std::int64_t>(result);
}

struct PrimePower {
  std::uint64_t prime;
  int exponent;
};

inline std::vector<PrimePower> factorize(std::uint64_t n) {
  std::vector<PrimePower> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

/// Radical (product of distinct prime divisors) of |n|.
inline std::uint64_t radical(std::uint64_t n) {
  std::uint64_t r = 1;
  for (const auto& pp : factorize(n)) r *= pp.prime;
  return r;
}

/// Primes p <= n by the sieve of Eratosthenes.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

/// The first `count` primes.
inline std::vector<std::uint64_t> first_primes(std::size_t count) {
  std::uint64_t limit = 32;
  while (true) {
    auto ps = primes_up_to(limit);
    if (ps.size() >= count) {
      ps.resize(count);
      return ps;
    }
    limit *= 2;
  }
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("checked_mul: 64-bit overflow");
  return r;
}

/// a*b clamped to UINT64_MAX.
inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) return std::numeric_limits<std::uint64_t>::max();
  return r;
}

/// Natural log of a positive arbitrary-precision integer, ~53 bits relative.
inline double log_of(const bigint& v) {
  if (v <= 0) throw std::domain_error("log_of: argument must be positive");
  const auto bits = boost::multiprecision::msb(v);
  if (bits < 960) return std::log(v.convert_to<double>());
  const auto shift = bits - 62;
  const bigint top = v >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

/// Parses a comma separated list of unsigned integers ("2,11,13").
inline std::vector<std::uint64_t> parse_uint_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  if (text.empty()) return out;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    auto token = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const auto first = token.find_first_not_of(' ');
    const auto last = token.find_last_not_of(' ');
    token = first == std::string::npos ? std::string{} : token.substr(first, last - first + 1);
    if (token.empty() || token.size() > 19 || token.find_first_not_of("0123456789") != std::string::npos) {
      throw input_error("malformed integer list: '" + text + "'");
    }
    out.push_back(std::stoull(token));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

} // namespace sysarith
