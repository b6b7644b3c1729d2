#pragma once

/**
 * @file gaussian.hpp
 * @brief Arithmetic in Z[i]: canonical prime ideals, quadratic residue
 * symbols, quadratic extensions Q(i)(sqrt delta) with their relative
 * discriminants, and discriminant-bounded enumeration of those extensions.
 *
 * Z[i] is a PID, so every ideal is written by a canonical generator:
 * the associate with re > 0, im >= 0. The two primes above a split p are
 * (a+bi) with a > b > 0 and its conjugate ideal (b+ai); the first sorts
 * first. The dyadic prime is lambda = (1+i).
 */

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arith.hpp"
#include "real_quadratic.hpp"

namespace sysarith {

struct GaussianInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  [[nodiscard]] std::uint64_t norm() const {
    return static_cast<std::uint64_t>(re * re) + static_cast<std::uint64_t>(im * im);
  }
  [[nodiscard]] GaussianInt conj() const { return {re, -im}; }
  [[nodiscard]] bool is_zero() const { return re == 0 && im == 0; }
  [[nodiscard]] bool is_unit() const { return norm() == 1; }

  friend GaussianInt operator+(GaussianInt a, GaussianInt b) { return {a.re + b.re, a.im + b.im}; }
  friend GaussianInt operator-(GaussianInt a, GaussianInt b) { return {a.re - b.re, a.im - b.im}; }
  friend GaussianInt operator-(GaussianInt a) { return {-a.re, -a.im}; }
  friend GaussianInt operator*(GaussianInt a, GaussianInt b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const GaussianInt&, const GaussianInt&) = default;
  friend auto operator<=>(const GaussianInt&, const GaussianInt&) = default;
};

inline constexpr GaussianInt gaussian_one{1, 0};
inline constexpr GaussianInt gaussian_i{0, 1};
inline constexpr GaussianInt gaussian_lambda{1, 1};

inline std::string to_string(const GaussianInt& z) {
  if (z.im == 0) return std::to_string(z.re);
  if (z.re == 0) return (z.im == 1 ? "" : z.im == -1 ? "-" : std::to_string(z.im)) + "i";
  std::string s = std::to_string(z.re);
  s += z.im < 0 ? "-" : "+";
  const auto m = z.im < 0 ? -z.im : z.im;
  if (m != 1) s += std::to_string(m);
  return s + "i";
}

namespace detail {

inline std::int64_t round_div(int128 num, int128 den) {
  // den > 0; nearest integer, halves rounded up.
  int128 q = num / den;
  int128 r = num % den;
  if (r < 0) {
    r += den;
    --q;
  }
  if (2 * r >= den) ++q;
  return static_cast<std::int64_t>(q);
}

} // namespace detail

/// True iff d | x in Z[i]. d must be nonzero.
inline bool divides(GaussianInt d, GaussianInt x) {
  const auto n = static_cast<int128>(d.norm());
  const int128 re = static_cast<int128>(x.re) * d.re + static_cast<int128>(x.im) * d.im;
  const int128 im = static_cast<int128>(x.im) * d.re - static_cast<int128>(x.re) * d.im;
  return re % n == 0 && im % n == 0;
}

/// x / d, assuming d | x.
inline GaussianInt exact_div(GaussianInt x, GaussianInt d) {
  const auto n = static_cast<int128>(d.norm());
  const int128 re = static_cast<int128>(x.re) * d.re + static_cast<int128>(x.im) * d.im;
  const int128 im = static_cast<int128>(x.im) * d.re - static_cast<int128>(x.re) * d.im;
  return {static_cast<std::int64_t>(re / n), static_cast<std::int64_t>(im / n)};
}

/// Remainder of x modulo d with nearest-integer quotient; N(r) <= N(d)/2.
inline GaussianInt reduce_mod(GaussianInt x, GaussianInt d) {
  const auto n = static_cast<int128>(d.norm());
  const int128 re = static_cast<int128>(x.re) * d.re + static_cast<int128>(x.im) * d.im;
  const int128 im = static_cast<int128>(x.im) * d.re - static_cast<int128>(x.re) * d.im;
  const GaussianInt q{detail::round_div(re, n), detail::round_div(im, n)};
  return x - q * d;
}

/// The associate of z with re > 0 and im >= 0.
inline GaussianInt first_quadrant_associate(GaussianInt z) {
  if (z.is_zero()) return z;
  for (int k = 0; k < 4; ++k) {
    if (z.re > 0 && z.im >= 0) return z;
    z = z * gaussian_i;
  }
  return z;
}

enum class PrimeKind { ramified, split, inert };

inline const char* to_string(PrimeKind k) {
  switch (k) {
    case PrimeKind::ramified: return "ramified";
    case PrimeKind::split: return "split";
    case PrimeKind::inert: return "inert";
  }
  return "?";
}

/// Splitting of a rational prime in Q(i)/Q.
inline Splitting splitting_in_qi(std::uint64_t p) {
  if (!is_prime(p)) throw input_error("splitting_in_qi: " + std::to_string(p) + " is not prime");
  if (p == 2) return Splitting::ramified;
  return p % 4 == 1 ? Splitting::split : Splitting::inert;
}

/// A nonzero prime ideal of Z[i] given by its canonical generator.
struct GaussianPrimeIdeal {
  GaussianInt gen;
  std::uint64_t norm = 0;
  PrimeKind kind = PrimeKind::ramified;

  [[nodiscard]] bool is_dyadic() const { return norm == 2; }
  [[nodiscard]] std::uint64_t rational_prime() const { return kind == PrimeKind::inert ? isqrt(norm) : norm; }
  [[nodiscard]] GaussianPrimeIdeal conj() const {
    if (kind != PrimeKind::split) return *this;
    return {{gen.im, gen.re}, norm, kind};
  }

  friend bool operator==(const GaussianPrimeIdeal& a, const GaussianPrimeIdeal& b) { return a.gen == b.gen; }
  /// Ascending norm; the a > b generator of a split pair first.
  friend std::strong_ordering operator<=>(const GaussianPrimeIdeal& a, const GaussianPrimeIdeal& b) {
    if (auto c = a.norm <=> b.norm; c != 0) return c;
    return b.gen.re <=> a.gen.re;
  }
};

inline std::string to_string(const GaussianPrimeIdeal& p) { return "(" + to_string(p.gen) + ")"; }

/// The prime ideals of Z[i] above the rational prime p, in canonical order.
inline std::vector<GaussianPrimeIdeal> gaussian_primes_above(std::uint64_t p) {
  switch (splitting_in_qi(p)) {
    case Splitting::ramified: return {{gaussian_lambda, 2, PrimeKind::ramified}};
    case Splitting::inert: return {{{static_cast<std::int64_t>(p), 0}, p * p, PrimeKind::inert}};
    case Splitting::split: break;
  }
  for (std::uint64_t b = 1; 2 * b * b < p; ++b) {
    const auto rest = p - b * b;
    if (!is_perfect_square(rest)) continue;
    const auto a = static_cast<std::int64_t>(isqrt(rest));
    const auto bi = static_cast<std::int64_t>(b);
    return {{{a, bi}, p, PrimeKind::split}, {{bi, a}, p, PrimeKind::split}};
  }
  throw std::logic_error("gaussian_primes_above: no two-square decomposition");
}

/// All prime ideals with norm <= bound, ascending by norm.
inline std::vector<GaussianPrimeIdeal> gaussian_primes_up_to_norm(std::uint64_t bound) {
  std::vector<GaussianPrimeIdeal> out;
  for (std::uint64_t p : primes_up_to(bound)) {
    if (p % 4 == 3 && p > bound / p) continue;
    for (const auto& ideal : gaussian_primes_above(p)) out.push_back(ideal);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Prime ideals of the given absolute norm (empty if none exists).
inline std::vector<GaussianPrimeIdeal> gaussian_primes_of_norm(std::uint64_t norm) {
  if (is_prime(norm)) {
    if (norm % 4 == 3) return {};
    return gaussian_primes_above(norm);
  }
  if (is_perfect_square(norm)) {
    const auto p = isqrt(norm);
    if (is_prime(p) && p % 4 == 3) return gaussian_primes_above(p);
  }
  return {};
}

/// The canonical prime ideal generated by a Gaussian prime.
inline GaussianPrimeIdeal ideal_of(GaussianInt prime_element) {
  const auto g = first_quadrant_associate(prime_element);
  const auto n = g.norm();
  for (const auto& ideal : gaussian_primes_of_norm(n)) {
    if (ideal.gen == g) return ideal;
  }
  throw input_error("ideal_of: " + to_string(prime_element) + " is not a Gaussian prime");
}

namespace detail {

inline GaussianInt mulmod(GaussianInt a, GaussianInt b, GaussianInt m) {
  return reduce_mod(reduce_mod(a, m) * reduce_mod(b, m), m);
}

inline GaussianInt powmod(GaussianInt base, std::uint64_t e, GaussianInt m) {
  GaussianInt r = reduce_mod(gaussian_one, m);
  base = reduce_mod(base, m);
  while (e != 0) {
    if (e & 1U) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1U;
  }
  return r;
}

/// delta == x^2 (mod lambda^k) for some x.
inline bool is_square_mod_lambda_power(GaussianInt delta, int k) {
  GaussianInt modulus = gaussian_one;
  for (int j = 0; j < k; ++j) modulus = modulus * gaussian_lambda;
  // Residues mod lambda^k, k <= 6, are represented by a + bi with 0 <= a, b < 8.
  for (std::int64_t a = 0; a < 8; ++a) {
    for (std::int64_t b = 0; b < 8; ++b) {
      const GaussianInt x{a, b};
      if (divides(modulus, delta - x * x)) return true;
    }
  }
  return false;
}

} // namespace detail

/// Quadratic residue symbol [delta / p] for an odd prime ideal: 0 if p | delta,
/// otherwise delta^((Np - 1)/2) mod p read as +-1.
inline int quad_residue_symbol(GaussianInt delta, const GaussianPrimeIdeal& p) {
  if (p.norm % 2 == 0) throw input_error("quad_residue_symbol: ideal must have odd norm");
  if (divides(p.gen, delta)) return 0;
  const auto r = detail::powmod(delta, (p.norm - 1) / 2, p.gen);
  if (divides(p.gen, r - gaussian_one)) return 1;
  if (divides(p.gen, r + gaussian_one)) return -1;
  throw std::logic_error("quad_residue_symbol: Euler criterion produced a non-sign");
}

/// Relative discriminant of Q(i)(sqrt delta)/Q(i): the odd part (product of
/// odd primes dividing delta) times lambda^two_exponent.
struct RelativeDiscriminant {
  GaussianInt odd_part = gaussian_one;
  int two_exponent = 0;
  std::uint64_t norm = 1;

  friend bool operator==(const RelativeDiscriminant&, const RelativeDiscriminant&) = default;
};

/// A quadratic extension Q(i)(sqrt delta)/Q(i), delta in canonical squarefree
/// form u * prod(p) with u in {1, i} and distinct canonical prime generators.
class GaussianQuadExt {
public:
  /// Canonicalizes any nonzero delta that is not a square times a unit.
  static GaussianQuadExt from(GaussianInt delta);

  [[nodiscard]] const GaussianInt& delta() const { return delta_; }
  [[nodiscard]] bool unit_is_i() const { return unit_is_i_; }
  [[nodiscard]] const std::vector<GaussianPrimeIdeal>& primes() const { return primes_; }
  [[nodiscard]] const RelativeDiscriminant& rel_disc() const { return disc_; }
  [[nodiscard]] std::uint64_t rel_disc_norm() const { return disc_.norm; }
  /// Absolute discriminant |Delta_{F/Q}| = 16 * N(rel disc).
  [[nodiscard]] std::uint64_t absolute_disc() const { return 16 * disc_.norm; }
  [[nodiscard]] bool divisible_by_lambda() const { return !primes_.empty() && primes_.front().is_dyadic(); }

  [[nodiscard]] GaussianQuadExt conj() const { return from(delta_.conj()); }

  friend bool operator==(const GaussianQuadExt& a, const GaussianQuadExt& b) { return a.delta_ == b.delta_; }

private:
  GaussianInt delta_;
  bool unit_is_i_ = false;
  std::vector<GaussianPrimeIdeal> primes_;
  RelativeDiscriminant disc_;
};

inline std::string to_string(const GaussianQuadExt& e) { return "Q(i)(sqrt(" + to_string(e.delta()) + "))"; }

namespace detail {

struct SquarefreeClass {
  bool unit_is_i = false;
  std::vector<GaussianPrimeIdeal> primes;  // ascending
};

inline SquarefreeClass squarefree_class(GaussianInt delta) {
  if (delta.is_zero()) throw input_error("GaussianQuadExt: delta must be nonzero");
  SquarefreeClass out;
  GaussianInt rest = delta;
  for (const auto& pp : factorize(delta.norm())) {
    for (const auto& ideal : gaussian_primes_above(pp.prime)) {
      int e = 0;
      while (divides(ideal.gen, rest)) {
        rest = exact_div(rest, ideal.gen);
        ++e;
      }
      if (e % 2 == 1) out.primes.push_back(ideal);
    }
  }
  // rest is a unit; modulo squares the unit group is {1, i}.
  out.unit_is_i = rest.im != 0;
  std::sort(out.primes.begin(), out.primes.end());
  return out;
}

inline RelativeDiscriminant compute_rel_disc(const GaussianInt& delta, const std::vector<GaussianPrimeIdeal>& primes) {
  RelativeDiscriminant disc;
  bool dyadic = false;
  for (const auto& p : primes) {
    if (p.is_dyadic()) {
      dyadic = true;
      continue;
    }
    disc.odd_part = disc.odd_part * p.gen;
    disc.norm = checked_mul(disc.norm, p.norm);
  }
  if (dyadic) {
    disc.two_exponent = 5;
  } else {
    // Local square class at lambda: the deepest level k <= 4 at which delta is
    // congruent to a square fixes the conductor; k = 4 means unramified.
    int k = 4;
    while (k > 1 && !is_square_mod_lambda_power(delta, k)) --k;
    if (k == 2) throw std::logic_error("relative_discriminant: even square-class defect");
    disc.two_exponent = k >= 4 ? 0 : 5 - k;
  }
  disc.norm = checked_mul(disc.norm, std::uint64_t{1} << disc.two_exponent);
  return disc;
}

} // namespace detail

inline GaussianQuadExt GaussianQuadExt::from(GaussianInt delta) {
  auto cls = detail::squarefree_class(delta);
  if (cls.primes.empty() && !cls.unit_is_i) {
    throw degenerate_input_error("GaussianQuadExt: " + to_string(delta) + " is a square up to units");
  }
  GaussianQuadExt ext;
  ext.unit_is_i_ = cls.unit_is_i;
  ext.delta_ = cls.unit_is_i ? gaussian_i : gaussian_one;
  for (const auto& p : cls.primes) ext.delta_ = ext.delta_ * p.gen;
  ext.primes_ = std::move(cls.primes);
  ext.disc_ = detail::compute_rel_disc(ext.delta_, ext.primes_);
  return ext;
}

inline RelativeDiscriminant relative_discriminant(GaussianInt delta) { return GaussianQuadExt::from(delta).rel_disc(); }

/// Splitting of a prime ideal of Z[i] in the extension.
inline Splitting splitting_in_ext(const GaussianPrimeIdeal& p, const GaussianQuadExt& ext) {
  if (p.is_dyadic()) {
    if (ext.rel_disc().two_exponent > 0) return Splitting::ramified;
    // A lambda-unit is a local square iff it is a square modulo 4 * lambda.
    return detail::is_square_mod_lambda_power(ext.delta(), 5) ? Splitting::split : Splitting::inert;
  }
  switch (quad_residue_symbol(ext.delta(), p)) {
    case 1: return Splitting::split;
    case 0: return Splitting::ramified;
    default: return Splitting::inert;
  }
}

/// Every quadratic extension of Q(i) with N(rel disc) <= bound, ordered by
/// (rel_disc_norm, delta). Over-covers candidate deltas, then filters exactly.
inline std::vector<GaussianQuadExt> quad_exts_with_disc_below(double bound) {
  if (!(bound >= 1)) throw input_error("quad_exts_with_disc_below: bound must be >= 1");
  const auto limit = static_cast<std::uint64_t>(std::floor(bound));
  std::vector<GaussianPrimeIdeal> odd;
  for (const auto& p : gaussian_primes_up_to_norm(std::max<std::uint64_t>(limit, 2))) {
    if (!p.is_dyadic()) odd.push_back(p);
  }
  std::vector<GaussianQuadExt> out;
  auto emit = [&](GaussianInt odd_product, std::uint64_t odd_norm) {
    for (GaussianInt unit : {gaussian_one, gaussian_i}) {
      for (bool with_lambda : {false, true}) {
        if (with_lambda && odd_norm > limit / 32) continue;
        GaussianInt delta = unit * odd_product;
        if (with_lambda) delta = delta * gaussian_lambda;
        if (delta == gaussian_one) continue;
        auto ext = GaussianQuadExt::from(delta);
        if (ext.rel_disc_norm() <= limit) out.push_back(std::move(ext));
      }
    }
  };
  // Depth-first over squarefree products of odd primes with norm <= limit.
  auto recurse = [&](auto&& self, std::size_t start, GaussianInt product, std::uint64_t norm) -> void {
    emit(product, norm);
    for (std::size_t j = start; j < odd.size(); ++j) {
      if (odd[j].norm > limit / norm) break;
      self(self, j + 1, product * odd[j].gen, norm * odd[j].norm);
    }
  };
  recurse(recurse, 0, gaussian_one, 1);
  std::sort(out.begin(), out.end(), [](const GaussianQuadExt& a, const GaussianQuadExt& b) {
    if (a.rel_disc_norm() != b.rel_disc_norm()) return a.rel_disc_norm() < b.rel_disc_norm();
    return a.delta() < b.delta();
  });
  return out;
}

/// Number of Q-isomorphism classes in a list of extensions closed under
/// complex conjugation (delta and its conjugate give isomorphic quartic fields).
inline std::size_t count_conjugation_orbits(const std::vector<GaussianQuadExt>& exts) {
  std::size_t self_conjugate = 0;
  for (const auto& e : exts) {
    if (e.conj() == e) ++self_conjugate;
  }
  return (exts.size() + self_conjugate) / 2;
}

} // namespace sysarith
