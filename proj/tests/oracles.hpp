#pragma once

// Brute-force reference implementations. Nothing here calls into the library
// beyond plain data types, so the tests compare two independent computations.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

__extension__ using int128 = __int128;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

inline bool is_squarefree(std::int64_t n) {
  if (n < 0) n = -n;
  if (n == 0) return false;
  for (std::int64_t q = 2; q * q <= n; ++q) {
    if (n % (q * q) == 0) return false;
  }
  return true;
}

inline std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

/// Legendre-style symbol by listing squares: 0, 1 or -1.
inline int legendre(std::int64_t a, std::int64_t p) {
  const auto r = mod(a, p);
  if (r == 0) return 0;
  for (std::int64_t x = 1; x < p; ++x) {
    if (x * x % p == r) return 1;
  }
  return -1;
}

enum class Split { split, inert, ramified };

/// Splitting of p in Q(sqrt d) from the roots of the minimal polynomial of
/// the ring-of-integers generator modulo p (Dedekind-Kummer).
inline Split split_q(std::int64_t d, std::int64_t p) {
  std::int64_t b = 0;
  std::int64_t c = 0;  // x^2 + b x + c
  if (mod(d, 4) == 1) {
    b = -1;
    c = -(d - 1) / 4;
  } else {
    c = -d;
  }
  std::vector<std::int64_t> roots;
  for (std::int64_t x = 0; x < p; ++x) {
    if (mod(x * x + b * x + c, p) == 0) roots.push_back(x);
  }
  if (roots.empty()) return Split::inert;
  if (roots.size() == 1) return Split::ramified;
  // A repeated root shows up once; two distinct roots mean split.
  return Split::split;
}

inline std::int64_t fund_disc(std::int64_t d) { return mod(d, 4) == 1 ? d : 4 * d; }

/// Regulator of Q(sqrt d) by searching for the least y >= 1 with
/// D y^2 +- 4 a perfect square; the unit is (x + y sqrt D) / 2.
inline std::optional<double> regulator(std::int64_t d, std::int64_t max_y = 20'000'000) {
  const std::int64_t D = fund_disc(d);
  for (std::int64_t y = 1; y <= max_y; ++y) {
    const int128 base = static_cast<int128>(D) * y * y;
    for (int s : {-4, 4}) {
      const int128 v = base + s;
      if (v <= 0) continue;
      auto x = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<long double>(v))));
      for (std::int64_t t = x - 1; t <= x + 1; ++t) {
        if (t > 0 && static_cast<int128>(t) * t == v) {
          const long double u = (t + y * std::sqrt(static_cast<long double>(D))) / 2.0L;
          return static_cast<double>(std::log(u));
        }
      }
    }
  }
  return std::nullopt;
}

/// log((t + sqrt(t^2 - 4)) / 2).
inline double trace_length(std::int64_t t) {
  const long double tt = static_cast<long double>(t);
  return static_cast<double>(std::log((tt + std::sqrt(tt * tt - 4.0L)) / 2.0L));
}

// ---------------------------------------------------------------------------
// Gaussian integers as (re, im) pairs.

using G = std::pair<std::int64_t, std::int64_t>;

inline G mul(G a, G b) { return {a.first * b.first - a.second * b.second, a.first * b.second + a.second * b.first}; }
inline std::int64_t norm(G a) { return a.first * a.first + a.second * a.second; }

/// Prime elements of Z[i] up to units, as first-quadrant representatives
/// (re > 0, im >= 0), with norm <= bound.
inline std::vector<G> gaussian_primes(std::int64_t bound) {
  std::vector<G> out;
  for (std::int64_t a = 1; a * a <= bound; ++a) {
    for (std::int64_t b = 0; a * a + b * b <= bound; ++b) {
      const auto n = a * a + b * b;
      if (b == 0) {
        if (is_prime(static_cast<std::uint64_t>(a)) && a % 4 == 3) out.push_back({a, 0});
      } else if (is_prime(static_cast<std::uint64_t>(n))) {
        out.push_back({a, b});
      }
    }
  }
  return out;
}

/// True iff pi divides z in Z[i].
inline bool divides(G pi, G z) {
  const G c{pi.first, -pi.second};
  const G num = mul(z, c);
  const auto n = norm(pi);
  return num.first % n == 0 && num.second % n == 0;
}

/// Is z congruent to a square modulo m (m | z allowed)? Brute force over a
/// full residue system a + bi, 0 <= a, b < N(m).
inline bool square_mod(G z, G m) {
  const auto n = norm(m);
  // n Z[i] lies inside (m), so residues mod n cover every class mod m.
  auto reduce = [&](G v) { return G{mod(v.first, n), mod(v.second, n)}; };
  std::vector<G> sq;
  for (std::int64_t a = 0; a < n; ++a) {
    for (std::int64_t b = 0; b < n; ++b) sq.push_back(reduce(mul({a, b}, {a, b})));
  }
  std::sort(sq.begin(), sq.end());
  sq.erase(std::unique(sq.begin(), sq.end()), sq.end());
  for (const auto& s : sq) {
    if (divides(m, {z.first - s.first, z.second - s.second})) return true;
  }
  return false;
}

/// Is z a square modulo the odd prime pi? For a degree-one prime the rational
/// residues 0..p-1 already cover the residue field; for an inert prime use
/// a + bi with 0 <= a, b < p.
inline bool square_mod_odd_prime(G z, G pi) {
  const auto n = norm(pi);
  const bool degree_one = is_prime(static_cast<std::uint64_t>(n));
  const auto q = degree_one ? n : static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(n))));
  for (std::int64_t a = 0; a < q; ++a) {
    for (std::int64_t b = 0; b < (degree_one ? 1 : q); ++b) {
      const G sq = mul({a, b}, {a, b});
      if (divides(pi, {z.first - sq.first, z.second - sq.second})) return true;
    }
  }
  return false;
}

/// Splitting of the prime (pi) of Z[i] in Q(i)(sqrt delta).
/// Odd pi: delta a nonzero square mod pi. pi = 1 + i: delta a unit that is a
/// square mod (1+i)^9, which exceeds the Hensel threshold (1+i)^5.
inline Split split_qi(G pi, G delta) {
  if (divides(pi, delta)) {
    // Only squarefree-class deltas are fed in, so pi | delta means ramified.
    return Split::ramified;
  }
  if (norm(pi) == 2) {
    const G lambda9 = mul(mul(mul({1, 1}, {1, 1}), mul({1, 1}, {1, 1})), mul(mul({1, 1}, {1, 1}), mul({1, 1}, {1, 1})));
    const G m = mul(lambda9, {1, 1});
    if (square_mod(delta, m)) return Split::split;
    // Unramified iff delta is a square mod (1+i)^4 = 4 up to the standard
    // criterion; a unit that is not a square mod 4 ramifies.
    return square_mod(delta, {4, 0}) ? Split::inert : Split::ramified;
  }
  return square_mod(delta, pi) ? Split::split : Split::inert;
}

/// zeta_{Q(i)}(2) = (1/4) sum over nonzero a + bi of 1 / (a^2 + b^2)^2.
inline double zeta_qi_2_lattice(std::int64_t norm_bound) {
  long double s = 0;
  const auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(norm_bound)));
  for (std::int64_t a = -r; a <= r; ++a) {
    for (std::int64_t b = -r; b <= r; ++b) {
      const auto n = a * a + b * b;
      if (n == 0 || n > norm_bound) continue;
      s += 1.0L / (static_cast<long double>(n) * n);
    }
  }
  return static_cast<double>(s / 4.0L);
}

/// All subsets of the given cardinality with prod (p - 1) < bound, sorted by
/// (product, elements).
inline std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>> naive_prime_sets(std::uint64_t bound,
                                                                                          std::size_t cardinality) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p <= bound + 1; ++p) {
    if (is_prime(p)) primes.push_back(p);
  }
  std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>> out;
  std::vector<std::uint64_t> cur;
  auto rec = [&](auto&& self, std::size_t start, std::uint64_t prod) -> void {
    if (cur.size() == cardinality) {
      out.push_back({prod, cur});
      return;
    }
    for (std::size_t j = start; j < primes.size(); ++j) {
      const auto next = prod * (primes[j] - 1);
      if (next >= bound) break;
      cur.push_back(primes[j]);
      self(self, j + 1, next);
      cur.pop_back();
    }
  };
  rec(rec, 0, 1);
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace oracle
