#pragma once

/**
 * @file quaternion.hpp
 * @brief Quaternion algebras over Q and Q(i) described by their finite
 * ramification sets, with the embedding obstruction for quadratic
 * extensions, torsion-freeness tests and the monotonicity check.
 *
 * A quadratic extension L/k embeds into B iff no prime ramified in B splits
 * in L. Every maximal order of B then contains the integral elements of L up
 * to conjugacy, so nothing here depends on the choice of maximal order.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arith.hpp"
#include "gaussian.hpp"
#include "real_quadratic.hpp"

namespace sysarith {

/// Quaternion algebra over Q, unramified at infinity, given by its finite
/// ramification set. Empty and odd sets are representable for predicate
/// testing; search and volume paths call require_admissible().
class QuaternionAlgebraQ {
public:
  QuaternionAlgebraQ() = default;
  explicit QuaternionAlgebraQ(std::vector<std::uint64_t> ram) : ram_(std::move(ram)) {
    std::sort(ram_.begin(), ram_.end());
    if (std::adjacent_find(ram_.begin(), ram_.end()) != ram_.end()) {
      throw input_error("QuaternionAlgebraQ: ramified primes must be distinct");
    }
    for (auto p : ram_) {
      if (!is_prime(p)) throw input_error("QuaternionAlgebraQ: " + std::to_string(p) + " is not prime");
    }
  }

  [[nodiscard]] const std::vector<std::uint64_t>& ram() const { return ram_; }
  [[nodiscard]] bool is_admissible() const { return ram_.size() >= 2 && ram_.size() % 2 == 0; }
  [[nodiscard]] bool contains(std::uint64_t p) const { return std::binary_search(ram_.begin(), ram_.end(), p); }
  [[nodiscard]] bool ram_subset_of(const QuaternionAlgebraQ& other) const {
    return std::includes(other.ram_.begin(), other.ram_.end(), ram_.begin(), ram_.end());
  }

  friend bool operator==(const QuaternionAlgebraQ&, const QuaternionAlgebraQ&) = default;

private:
  std::vector<std::uint64_t> ram_;
};

/// Quaternion algebra over Q(i) given by a set of prime ideals of Z[i].
class QuaternionAlgebraQi {
public:
  QuaternionAlgebraQi() = default;
  explicit QuaternionAlgebraQi(std::vector<GaussianPrimeIdeal> ram) : ram_(std::move(ram)) {
    std::sort(ram_.begin(), ram_.end());
    if (std::adjacent_find(ram_.begin(), ram_.end()) != ram_.end()) {
      throw input_error("QuaternionAlgebraQi: ramified ideals must be distinct");
    }
  }

  [[nodiscard]] const std::vector<GaussianPrimeIdeal>& ram() const { return ram_; }
  [[nodiscard]] bool is_admissible() const { return ram_.size() >= 2 && ram_.size() % 2 == 0; }
  [[nodiscard]] bool ram_subset_of(const QuaternionAlgebraQi& other) const {
    return std::includes(other.ram_.begin(), other.ram_.end(), ram_.begin(), ram_.end());
  }
  [[nodiscard]] std::vector<std::uint64_t> norms() const {
    std::vector<std::uint64_t> out;
    for (const auto& p : ram_) out.push_back(p.norm);
    return out;
  }
  [[nodiscard]] QuaternionAlgebraQi conj() const {
    std::vector<GaussianPrimeIdeal> c;
    for (const auto& p : ram_) c.push_back(p.conj());
    return QuaternionAlgebraQi(std::move(c));
  }

  friend bool operator==(const QuaternionAlgebraQi&, const QuaternionAlgebraQi&) = default;

private:
  std::vector<GaussianPrimeIdeal> ram_;
};

template <typename Algebra>
void require_admissible(const Algebra& b) {
  if (!b.is_admissible()) {
    throw input_error("quaternion algebra must have an even number (>= 2) of ramified primes, got " +
                      std::to_string(b.ram().size()));
  }
}

/// The least ramified prime splitting in the field (an obstruction
/// certificate), or nullopt if the field embeds.
inline std::optional<std::uint64_t> obstructing_prime_q(const QuadFieldQ& field, const QuaternionAlgebraQ& b) {
  for (auto p : b.ram()) {
    if (splitting_type_q(field, p) == Splitting::split) return p;
  }
  return std::nullopt;
}

inline bool embeds_q(const QuadFieldQ& field, const QuaternionAlgebraQ& b) {
  return !obstructing_prime_q(field, b).has_value();
}

inline std::optional<GaussianPrimeIdeal> obstructing_prime_qi(const GaussianQuadExt& ext, const QuaternionAlgebraQi& b) {
  for (const auto& p : b.ram()) {
    if (splitting_in_ext(p, ext) == Splitting::split) return p;
  }
  return std::nullopt;
}

inline bool embeds_qi(const GaussianQuadExt& ext, const QuaternionAlgebraQi& b) {
  return !obstructing_prime_qi(ext, b).has_value();
}

/// Needs a ramified prime split in Q(i)/Q (p = 1 mod 4) and one split in
/// Q(sqrt -3)/Q (p = 1 mod 3); one prime may serve both.
inline bool torsion_free_q(const QuaternionAlgebraQ& b) {
  const auto& r = b.ram();
  const bool has_i = std::any_of(r.begin(), r.end(), [](auto p) { return p % 4 == 1; });
  const bool has_rho = std::any_of(r.begin(), r.end(), [](auto p) { return p % 3 == 1; });
  return has_i && has_rho;
}

/// Over k = Q(i) the cyclotomic quadratic extensions are k(zeta_8) = k(sqrt 2)
/// and k(zeta_12) = k(sqrt 3); each needs an odd ramified prime splitting in it.
inline bool torsion_free_qi(const QuaternionAlgebraQi& b) {
  bool zeta8 = false;
  bool zeta12 = false;
  for (const auto& p : b.ram()) {
    if (p.is_dyadic()) continue;
    zeta8 = zeta8 || quad_residue_symbol({2, 0}, p) == 1;
    zeta12 = zeta12 || quad_residue_symbol({3, 0}, p) == 1;
  }
  return zeta8 && zeta12;
}

/// Checks, over a finite pool, that every field obstructed in A stays
/// obstructed in B. Requires ram(A) to be a subset of ram(B).
inline bool excluded_fields_subset(const QuaternionAlgebraQ& a, const QuaternionAlgebraQ& b,
                                   const std::vector<QuadFieldQ>& pool) {
  if (!a.ram_subset_of(b)) throw precondition_error("excluded_fields_subset: ram(A) is not contained in ram(B)");
  return std::all_of(pool.begin(), pool.end(), [&](const QuadFieldQ& f) { return embeds_q(f, a) || !embeds_q(f, b); });
}

inline bool excluded_fields_subset(const QuaternionAlgebraQi& a, const QuaternionAlgebraQi& b,
                                   const std::vector<GaussianQuadExt>& pool) {
  if (!a.ram_subset_of(b)) throw precondition_error("excluded_fields_subset: ram(A) is not contained in ram(B)");
  return std::all_of(pool.begin(), pool.end(),
                     [&](const GaussianQuadExt& f) { return embeds_qi(f, a) || !embeds_qi(f, b); });
}

/// All real quadratic fields Q(sqrt d) with 2 <= d <= max_d, ascending.
inline std::vector<QuadFieldQ> real_quadratic_fields_up_to(std::int64_t max_d) {
  std::vector<QuadFieldQ> out;
  for (std::int64_t d = 2; d <= max_d; ++d) {
    if (is_squarefree(static_cast<std::uint64_t>(d))) out.emplace_back(d);
  }
  return out;
}

} // namespace sysarith
