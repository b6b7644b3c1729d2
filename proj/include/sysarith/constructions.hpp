#pragma once

/**
 * @file constructions.hpp
 * @brief Same-systole families, greedy set-cover algebras and the bound
 * evaluators used to size them.
 *
 * Family: given B with systole field L, adjoin a fixed prime p0 and a moving
 * prime p_i, both outside Ram(B) and non-split in L. L still embeds into every
 * B_i, and factor(B_i) = factor(B) (p0 - 1)(p_i - 1).
 *
 * Cover: every quadratic field of discriminant <= e^{2+2x} must see a split
 * ramified prime. Greedy picks the prime hitting the most uncovered fields,
 * drops primes made redundant by later picks, then applies the torsion and
 * parity fixes. Fix primes are labeled since they may be redundant.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <vector>

#include "geodesics.hpp"
#include "quaternion.hpp"
#include "search.hpp"
#include "volume.hpp"

namespace sysarith {

/// The field of the shortest closed geodesic (regulator length convention).
inline QuadFieldQ systole_field_q(const QuaternionAlgebraQ& b, double cap) {
  auto s = exact_systole_q(b, LengthMode::paper, cap);
  if (!s) throw no_candidate_error("systole_field_q: no closed geodesic shorter than the cap");
  return s->field;
}

struct FamilyEntry {
  std::size_t index = 0;  // 1-based
  QuaternionAlgebraQ algebra;
  std::uint64_t factor = 0;
  std::uint64_t p0 = 0;
  std::uint64_t pi = 0;
  /// Splitting type in L of every ramified prime; none is split.
  std::vector<std::pair<std::uint64_t, Splitting>> embedding_certificate;
  bool torsion_free = false;
};

namespace detail {

inline std::vector<std::pair<std::uint64_t, Splitting>> embedding_certificate_q(const QuadFieldQ& field,
                                                                               const QuaternionAlgebraQ& b) {
  std::vector<std::pair<std::uint64_t, Splitting>> out;
  for (auto p : b.ram()) out.emplace_back(p, splitting_type_q(field, p));
  return out;
}

} // namespace detail

/// First `count` members of the family B_i with Ram(B_i) = Ram(B) u {p0, p_i}.
/// Throws precondition_error if L does not embed into B, logic_error if a
/// generated entry violates the family invariants.
inline std::vector<FamilyEntry> same_systole_family_q(const QuaternionAlgebraQ& b, const QuadFieldQ& field,
                                                      std::size_t count) {
  require_admissible(b);
  if (!embeds_q(field, b)) {
    throw precondition_error("same_systole_family_q: Q(sqrt " + std::to_string(field.d()) + ") does not embed");
  }
  std::vector<FamilyEntry> out;
  if (count == 0) return out;

  const std::uint64_t base_factor = area_factor(b);
  const bool base_torsion_free = torsion_free_q(b);
  std::optional<std::uint64_t> p0;
  for (std::uint64_t p = 2; out.size() < count; ++p) {
    if (!is_prime(p) || b.contains(p)) continue;
    if (splitting_type_q(field, p) == Splitting::split) continue;
    if (!p0) {
      p0 = p;
      continue;
    }
    auto ram = b.ram();
    ram.push_back(*p0);
    ram.push_back(p);
    FamilyEntry e;
    e.index = out.size() + 1;
    e.algebra = QuaternionAlgebraQ(std::move(ram));
    e.factor = area_factor(e.algebra);
    e.p0 = *p0;
    e.pi = p;
    e.embedding_certificate = detail::embedding_certificate_q(field, e.algebra);
    e.torsion_free = torsion_free_q(e.algebra);

    if (e.factor != checked_mul(checked_mul(base_factor, *p0 - 1), p - 1)) {
      throw std::logic_error("same_systole_family_q: factor identity fails");
    }
    if (!embeds_q(field, e.algebra)) throw std::logic_error("same_systole_family_q: field no longer embeds");
    if (base_torsion_free && !e.torsion_free) throw std::logic_error("same_systole_family_q: torsion not inherited");
    out.push_back(std::move(e));
  }
  return out;
}

/// max over n >= 2 of factor_n / (n^2 factor_{n-1}).
inline double growth_check(const std::vector<FamilyEntry>& family) {
  if (family.size() < 2) throw input_error("growth_check: needs at least 2 entries");
  double c = 0;
  for (std::size_t n = 2; n <= family.size(); ++n) {
    const double ratio = static_cast<double>(family[n - 1].factor) /
                         (static_cast<double>(n * n) * static_cast<double>(family[n - 2].factor));
    c = std::max(c, ratio);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Covers over Q

inline constexpr double max_cover_field_bound = 2.0e6;

/// Real quadratic fields with fundamental discriminant <= bound, by d.
inline std::vector<QuadFieldQ> real_quadratic_fields_with_disc_below(double bound) {
  if (bound > max_cover_field_bound) throw input_error("discriminant bound too large for a desk-scale cover");
  std::vector<QuadFieldQ> out;
  const auto limit = static_cast<std::int64_t>(std::floor(bound));
  for (std::int64_t d = 2; d <= limit; ++d) {
    if (!is_squarefree(static_cast<std::uint64_t>(d))) continue;
    if (fundamental_discriminant(d) <= limit) out.emplace_back(d);
  }
  return out;
}

inline std::uint64_t least_split_prime(const QuadFieldQ& field) {
  for (std::uint64_t p = 2;; ++p) {
    if (is_prime(p) && splitting_type_q(field, p) == Splitting::split) return p;
  }
}

struct CoverResultQ {
  QuaternionAlgebraQ algebra;
  std::vector<QuadFieldQ> fields;
  std::vector<std::uint64_t> certificate;  // per field: least ramified prime splitting in it
  std::vector<std::uint64_t> fix_primes;   // added for torsion or parity
  bool exact = false;
};

namespace detail {

/// Greedy set cover over a finite candidate list with a reverse-delete pass.
/// `masks[j]` is the set of fields covered by candidate j; candidates are in
/// tie-break order. Returns chosen candidate indices in pick order.
inline std::vector<std::size_t> greedy_cover(const std::vector<FieldMask>& masks, std::size_t field_count) {
  std::vector<std::size_t> chosen;
  FieldMask covered(field_count);
  while (!covered.all()) {
    std::size_t best = masks.size();
    std::size_t best_gain = 0;
    for (std::size_t j = 0; j < masks.size(); ++j) {
      const std::size_t gain = (masks[j] - covered).count();
      if (gain > best_gain) {
        best_gain = gain;
        best = j;
      }
    }
    if (best == masks.size()) throw std::logic_error("greedy_cover: candidates do not cover every field");
    covered |= masks[best];
    chosen.push_back(best);
  }
  // Reverse delete: drop a pick if the others still cover everything.
  for (std::size_t k = chosen.size(); k-- > 0;) {
    FieldMask rest(field_count);
    for (std::size_t m = 0; m < chosen.size(); ++m) {
      if (m != k) rest |= masks[chosen[m]];
    }
    if (rest.all()) chosen.erase(chosen.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return chosen;
}

inline std::uint64_t smallest_unused_prime(const std::set<std::uint64_t>& used, bool (*want)(std::uint64_t)) {
  for (std::uint64_t p = 2;; ++p) {
    if (is_prime(p) && !used.contains(p) && want(p)) return p;
  }
}

} // namespace detail

/// Even prime set under which no real quadratic field with discriminant
/// <= e^{2+2x} embeds. exact = true replaces greedy by the exhaustive least
/// factor search (first set lexicographically) and is limited to x <= 1.5.
inline CoverResultQ cover_algebra_2d(double x, bool require_torsion_free = false, bool exact = false) {
  if (!(x >= 0)) throw input_error("cover_algebra_2d: x must be >= 0");
  if (exact && x > 1.5) throw input_error("cover_algebra_2d: exact cover is limited to x <= 1.5");
  CoverResultQ result;
  result.fields = real_quadratic_fields_with_disc_below(std::exp(2.0 + 2.0 * x));
  result.exact = exact;

  if (exact) {
    auto s = detail::minimal_cover_q(result.fields, require_torsion_free);
    result.algebra = s.optimal_sets.front();
  } else {
    std::uint64_t limit = 2;
    for (const auto& f : result.fields) limit = std::max(limit, least_split_prime(f));
    const auto candidates = primes_up_to(limit);
    SplitTableQ table(result.fields);
    std::vector<FieldMask> masks;
    for (auto p : candidates) masks.push_back(table.mask(p));
    std::set<std::uint64_t> used;
    for (auto j : detail::greedy_cover(masks, result.fields.size())) used.insert(candidates[j]);

    auto add_fix = [&](std::uint64_t p) {
      used.insert(p);
      result.fix_primes.push_back(p);
    };
    if (require_torsion_free) {
      const bool has_i = std::any_of(used.begin(), used.end(), [](auto p) { return p % 4 == 1; });
      const bool has_rho = std::any_of(used.begin(), used.end(), [](auto p) { return p % 3 == 1; });
      if (!has_i && !has_rho) {
        add_fix(detail::smallest_unused_prime(used, [](std::uint64_t p) { return p % 12 == 1; }));
      } else if (!has_i) {
        add_fix(detail::smallest_unused_prime(used, [](std::uint64_t p) { return p % 4 == 1; }));
      } else if (!has_rho) {
        add_fix(detail::smallest_unused_prime(used, [](std::uint64_t p) { return p % 3 == 1; }));
      }
    }
    while (used.size() < 2 || used.size() % 2 != 0) {
      add_fix(detail::smallest_unused_prime(used, [](std::uint64_t) { return true; }));
    }
    result.algebra = QuaternionAlgebraQ(std::vector<std::uint64_t>(used.begin(), used.end()));
  }
  result.certificate = certificate_q(result.fields, result.algebra);
  return result;
}

// ---------------------------------------------------------------------------
// Covers over Q(i)

struct CoverResultQi {
  QuaternionAlgebraQi algebra;
  std::vector<GaussianQuadExt> fields;
  std::vector<GaussianPrimeIdeal> certificate;
  std::vector<GaussianPrimeIdeal> fix_ideals;
};

inline std::uint64_t least_split_norm(const GaussianQuadExt& ext) {
  for (std::uint64_t n = 2;; ++n) {
    for (const auto& p : gaussian_primes_of_norm(n)) {
      if (splitting_in_ext(p, ext) == Splitting::split) return n;
    }
  }
}

/// Greedy analog over Q(i): candidates are all prime ideals up to the
/// largest least-split norm, ties broken by ideal order (norm, then canonical).
inline CoverResultQi cover_algebra_3d(double x, bool require_torsion_free = false, unsigned workers = 1) {
  if (!(x >= 0)) throw input_error("cover_algebra_3d: x must be >= 0");
  const double bound = std::exp(2.0 + 2.0 * x);
  if (bound > 1.0e5) throw input_error("cover_algebra_3d: discriminant bound too large for a desk-scale cover");
  CoverResultQi result;
  result.fields = quad_exts_with_disc_below(bound);
  std::uint64_t limit = 2;
  for (const auto& f : result.fields) limit = std::max(limit, least_split_norm(f));

  SplitTableQi table(result.fields, gaussian_primes_up_to_norm(limit), workers);
  std::vector<FieldMask> masks;
  for (std::size_t j = 0; j < table.pool().size(); ++j) masks.push_back(table.mask(j));
  std::vector<GaussianPrimeIdeal> used;
  for (auto j : detail::greedy_cover(masks, result.fields.size())) used.push_back(table.pool()[j]);

  auto is_used = [&](const GaussianPrimeIdeal& p) { return std::find(used.begin(), used.end(), p) != used.end(); };
  auto smallest_unused = [&](auto want) {
    for (std::uint64_t n = 2;; ++n) {
      for (const auto& p : gaussian_primes_of_norm(n)) {
        if (!is_used(p) && want(p)) return p;
      }
    }
  };
  auto add_fix = [&](const GaussianPrimeIdeal& p) {
    used.push_back(p);
    result.fix_ideals.push_back(p);
  };
  auto zeta8 = [](const GaussianPrimeIdeal& p) { return !p.is_dyadic() && quad_residue_symbol({2, 0}, p) == 1; };
  auto zeta12 = [](const GaussianPrimeIdeal& p) { return !p.is_dyadic() && quad_residue_symbol({3, 0}, p) == 1; };
  if (require_torsion_free) {
    const bool has8 = std::any_of(used.begin(), used.end(), zeta8);
    const bool has12 = std::any_of(used.begin(), used.end(), zeta12);
    if (!has8 && !has12) {
      add_fix(smallest_unused([&](const GaussianPrimeIdeal& p) { return zeta8(p) && zeta12(p); }));
    } else if (!has8) {
      add_fix(smallest_unused(zeta8));
    } else if (!has12) {
      add_fix(smallest_unused(zeta12));
    }
  }
  while (used.size() < 2 || used.size() % 2 != 0) {
    add_fix(smallest_unused([](const GaussianPrimeIdeal&) { return true; }));
  }
  result.algebra = QuaternionAlgebraQi(std::move(used));
  result.certificate = certificate_qi(result.fields, result.algebra);
  return result;
}

/// All prime ideals of Z[i] with norm <= c0 |D|^2 e^{2+2x}, |D| = 4: the
/// ramification set used in the existence proof, for comparison with covers.
inline std::vector<GaussianPrimeIdeal> threshold_ideal_set_qi(double x, double c0 = 1.0) {
  if (!(x >= 0) || !(c0 > 0)) throw input_error("threshold_ideal_set_qi: need x >= 0 and c0 > 0");
  const double bound = c0 * 16.0 * std::exp(2.0 + 2.0 * x);
  if (bound > 1.0e7) throw input_error("threshold_ideal_set_qi: norm bound too large");
  return gaussian_primes_up_to_norm(static_cast<std::uint64_t>(std::floor(bound)));
}

/// log of the volume constant times prod (N p - 1), safe for huge sets.
inline double log_volume_qi(const std::vector<GaussianPrimeIdeal>& ideals) {
  double s = std::log(volume_constant_qi());
  for (const auto& p : ideals) s += std::log(static_cast<double>(p.norm - 1));
  return s;
}

// ---------------------------------------------------------------------------
// Bound evaluators

/// log prod_{p <= x} p.
inline double primorial_log_bound(double x) {
  if (!(x >= 2)) throw input_error("primorial_log_bound: x must be >= 2");
  if (x > 1.0e9) throw input_error("primorial_log_bound: x too large");
  double s = 0;
  for (auto p : primes_up_to(static_cast<std::uint64_t>(std::floor(x)))) s += std::log(static_cast<double>(p));
  return s;
}

/// Prime threshold 2 c1 e^{(2+2x) c2} of the area majorant.
inline double theorem_threshold_2d(double x, double c1, double c2) {
  if (!(c1 >= 1) || !(c2 >= 1)) throw input_error("theorem bound constants must be >= 1");
  if (!(x >= 0)) throw input_error("theorem bound: x must be >= 0");
  return 2.0 * c1 * std::exp((2.0 + 2.0 * x) * c2);
}

/// log of (pi/3) prod_{p < threshold} p.
inline double theorem_area_log_bound_2d(double x, double c1, double c2) {
  const double t = theorem_threshold_2d(x, c1, c2);
  if (t > 1.0e9) throw input_error("theorem_area_log_bound_2d: prime threshold too large");
  double s = std::log(std::numbers::pi / 3.0);
  for (auto p : primes_up_to(static_cast<std::uint64_t>(std::ceil(t)) + 1)) {
    if (static_cast<double>(p) < t) s += std::log(static_cast<double>(p));
  }
  return s;
}

struct MultiquadraticDisc {
  bigint disc;  // absolute value
  int r = 0;
  std::uint64_t rad = 1;
};

/// |disc| of Q(sqrt a_1, ..., sqrt a_m) as the product of the quadratic
/// subfield discriminants, written as (2^r rad(a_1...a_m))^{2^{m-1}}.
inline MultiquadraticDisc multiquadratic_discriminant(const std::vector<std::int64_t>& a) {
  if (a.empty() || a.size() > 8) throw input_error("multiquadratic_discriminant: need 1 to 8 generators");
  std::vector<std::int64_t> primes_seen;
  std::vector<std::vector<std::int64_t>> supports;  // -1 plus prime factors
  for (auto v : a) {
    if (v == 0 || v == 1) throw input_error("multiquadratic_discriminant: generators must not be 0 or 1");
    const auto mag = static_cast<std::uint64_t>(v < 0 ? -v : v);
    if (mag > (std::uint64_t{1} << 40)) throw input_error("multiquadratic_discriminant: generator too large");
    if (mag > 1 && !is_squarefree(mag)) throw input_error("multiquadratic_discriminant: generators must be squarefree");
    std::vector<std::int64_t> s;
    if (v < 0) s.push_back(-1);
    for (const auto& pp : factorize(mag)) s.push_back(static_cast<std::int64_t>(pp.prime));
    supports.push_back(std::move(s));
  }
  const std::size_t m = a.size();
  MultiquadraticDisc out;
  out.disc = 1;
  std::uint64_t rad_all = 1;
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    std::map<std::int64_t, int> parity;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1) {
        for (auto q : supports[i]) parity[q] ^= 1;
      }
    }
    bigint d = 1;
    for (const auto& [q, odd] : parity) {
      if (odd) d *= q;
    }
    if (d == 1) throw input_error("multiquadratic_discriminant: generators are dependent modulo squares");
    const auto dv = d.convert_to<std::int64_t>();
    const auto fd = fundamental_discriminant(dv);
    out.disc *= static_cast<std::uint64_t>(fd < 0 ? -fd : fd);
  }
  for (const auto& s : supports) {
    for (auto q : s) {
      if (q > 0 && rad_all % static_cast<std::uint64_t>(q) != 0) rad_all *= static_cast<std::uint64_t>(q);
    }
  }
  out.rad = rad_all;
  const std::size_t power = std::size_t{1} << (m - 1);
  for (int r : {0, 2, 3}) {
    bigint base = bigint(rad_all) << r;
    bigint v = 1;
    for (std::size_t k = 0; k < power; ++k) v *= base;
    if (v == out.disc) {
      out.r = r;
      return out;
    }
  }
  throw std::logic_error("multiquadratic_discriminant: product is not of the form (2^r rad)^{2^{m-1}}");
}

/// e^{2(n+x)}: relative-discriminant norm bound for a closed geodesic of
/// length <= x over a base field of degree n.
inline double silverman_disc_bound(int n, double x) {
  if (n < 1) throw input_error("silverman_disc_bound: n must be >= 1");
  if (!(x >= 0)) throw input_error("silverman_disc_bound: x must be >= 0");
  return std::exp(2.0 * (n + x));
}

/// Absolute discriminant form over Q(i): 16 e^{2(2+x)}.
inline double silverman_disc_bound_qi(double x) { return 16.0 * silverman_disc_bound(2, x); }

} // namespace sysarith
