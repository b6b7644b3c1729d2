#pragma once

/**
 * @file search.hpp
 * @brief Minimal-coarea search over Q and certified (best-effort) search
 * over Q(i) for quaternion algebras whose arithmetic quotients have systole
 * at least a given bound.
 *
 * Over Q the search runs in four steps:
 *   1. list the real quadratic fields with Reg_d < l;
 *   2. find a candidate algebra obstructing all of them among small subsets
 *      of the first 25 primes; its area factor A bounds the optimum;
 *   3. bound |Ram(B)| by the smallest primes' product of (p - 1);
 *   4. walk even-size prime sets by ascending area factor (<= A) and return
 *      every set of the least factor that obstructs all listed fields.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "enumerate.hpp"
#include "gaussian.hpp"
#include "parallel.hpp"
#include "quaternion.hpp"
#include "real_quadratic.hpp"
#include "volume.hpp"

namespace sysarith {

using FieldMask = boost::dynamic_bitset<std::uint64_t>;

/// Per-prime bitmask of the listed fields in which that prime splits.
/// Masks over Q are computed on demand.
class SplitTableQ {
public:
  explicit SplitTableQ(std::vector<QuadFieldQ> fields, DyadicRule rule = DyadicRule::discriminant)
      : fields_(std::move(fields)), rule_(rule), scratch_(fields_.size()) {}

  [[nodiscard]] const std::vector<QuadFieldQ>& fields() const { return fields_; }
  [[nodiscard]] DyadicRule rule() const { return rule_; }

  const FieldMask& mask(std::uint64_t p) {
    auto it = masks_.find(p);
    if (it != masks_.end()) return it->second;
    FieldMask m(fields_.size());
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      if (splitting_type_q(fields_[i], p, rule_) == Splitting::split) m.set(i);
    }
    return masks_.emplace(p, std::move(m)).first->second;
  }

  bool covers(const std::vector<std::uint64_t>& primes) {
    if (fields_.empty()) return true;
    scratch_.reset();
    for (auto p : primes) {
      scratch_ |= mask(p);
      if (scratch_.all()) return true;
    }
    return false;
  }

private:
  std::vector<QuadFieldQ> fields_;
  DyadicRule rule_;
  std::unordered_map<std::uint64_t, FieldMask> masks_;
  FieldMask scratch_;
};

/// Certificate over Q: for each field, the least ramified prime splitting in it.
inline std::vector<std::uint64_t> certificate_q(const std::vector<QuadFieldQ>& fields, const QuaternionAlgebraQ& b,
                                                DyadicRule rule = DyadicRule::discriminant) {
  std::vector<std::uint64_t> out;
  out.reserve(fields.size());
  for (const auto& f : fields) {
    std::optional<std::uint64_t> hit;
    for (auto p : b.ram()) {
      if (splitting_type_q(f, p, rule) == Splitting::split) {
        hit = p;
        break;
      }
    }
    if (!hit) throw std::logic_error("certificate_q: field Q(sqrt " + std::to_string(f.d()) + ") embeds");
    out.push_back(*hit);
  }
  return out;
}

struct SearchResultQ {
  double systole_bound = 0;
  std::uint64_t optimal_factor = 0;
  std::vector<QuaternionAlgebraQ> optimal_sets;  // lexicographic
  std::vector<QuadFieldQ> excluded_fields;
  std::vector<std::vector<std::uint64_t>> certificates;  // per optimal set, per field
  bool exhaustive = true;
  QuaternionAlgebraQ candidate;
  std::uint64_t candidate_factor = 0;
  std::size_t max_cardinality = 0;
  std::uint64_t rejected_below_optimum = 0;
  DyadicRule rule = DyadicRule::discriminant;
};

/// Largest even 2k with prod over the 2k smallest primes of (p - 1) < bound
/// (0 if none).
inline std::size_t max_ram_cardinality(std::uint64_t bound) {
  std::size_t best = 0;
  std::uint64_t product = 1;
  std::size_t count = 0;
  for (std::size_t want = 1;; want *= 2) {
    const auto ps = first_primes(want * 32);
    for (; count < ps.size(); ++count) {
      product = saturating_mul(product, ps[count] - 1);
      if (product >= bound) return best;
      if ((count + 1) % 2 == 0) best = count + 1;
    }
  }
}

namespace detail {

inline std::vector<std::size_t> even_cardinalities(std::size_t from, std::size_t to) {
  std::vector<std::size_t> out;
  for (std::size_t c = from; c <= to; c += 2) out.push_back(c);
  return out;
}

/// First set, by ascending area factor then lexicographically, among subsets
/// of `pool` with the given cardinalities that obstructs every field.
inline std::optional<QuaternionAlgebraQ> first_obstructing_subset(SplitTableQ& table,
                                                                  const std::vector<std::uint64_t>& pool,
                                                                  const std::vector<std::size_t>& cards,
                                                                  bool require_torsion_free) {
  std::vector<std::uint64_t> weights;
  for (auto p : pool) weights.push_back(p - 1);
  MergedSubsetEnumerator stream(weights, cards, std::numeric_limits<std::uint64_t>::max());
  while (auto s = stream.next()) {
    std::vector<std::uint64_t> primes;
    for (auto i : s->indices) primes.push_back(pool[i]);
    if (!table.covers(primes)) continue;
    QuaternionAlgebraQ b(primes);
    if (require_torsion_free && !torsion_free_q(b)) continue;
    return b;
  }
  return std::nullopt;
}

inline QuaternionAlgebraQ candidate_for_fields(SplitTableQ& table, bool require_torsion_free) {
  if (auto b = first_obstructing_subset(table, first_primes(25), {2, 4, 6}, require_torsion_free)) return *b;
  // Widened pool: first 50 primes, up to 8 ramified primes.
  if (auto b = first_obstructing_subset(table, first_primes(50), {2, 4, 6, 8}, require_torsion_free)) return *b;
  throw no_candidate_error("no candidate algebra among subsets of the first 50 primes");
}

/// Steps 2-4 for an explicit field list.
inline SearchResultQ minimal_cover_q(std::vector<QuadFieldQ> fields, bool require_torsion_free,
                                     DyadicRule rule = DyadicRule::discriminant) {
  SearchResultQ result;
  result.rule = rule;
  SplitTableQ table(fields, rule);
  result.candidate = candidate_for_fields(table, require_torsion_free);
  result.candidate_factor = area_factor(result.candidate);
  const std::uint64_t bound = result.candidate_factor + 1;  // factors <= A
  result.max_cardinality = max_ram_cardinality(bound);

  const auto primes = primes_up_to(PrimeSetStream::prime_limit(bound, 2));
  std::vector<std::uint64_t> weights;
  weights.reserve(primes.size());
  for (auto p : primes) weights.push_back(p - 1);
  MergedSubsetEnumerator stream(weights, even_cardinalities(2, result.max_cardinality), bound);

  // Full masks are cached for small primes only. Large primes occur in few
  // sets each and are tested lazily against the fields still uncovered.
  const std::size_t cached = std::min<std::size_t>(primes.size(), 1U << 14);
  std::vector<FieldMask> masks(cached);
  std::vector<char> ready(cached, 0);
  FieldMask acc(fields.size());
  std::vector<std::uint64_t> large;
  auto covers = [&](const std::vector<std::uint32_t>& indices) {
    if (fields.empty()) return true;
    acc.reset();
    large.clear();
    for (auto i : indices) {
      if (i >= cached) {
        large.push_back(primes[i]);
        continue;
      }
      if (!ready[i]) {
        masks[i] = table.mask(primes[i]);
        ready[i] = 1;
      }
      acc |= masks[i];
    }
    if (large.empty()) return acc.all();
    acc.flip();
    for (auto k = acc.find_first(); k != FieldMask::npos; k = acc.find_next(k)) {
      const bool hit = std::any_of(large.begin(), large.end(), [&](std::uint64_t p) {
        return splitting_type_q(fields[k], p, rule) == Splitting::split;
      });
      if (!hit) return false;
    }
    return true;
  };

  std::optional<std::uint64_t> best;
  std::vector<QuaternionAlgebraQ> winners;
  while (auto s = stream.next()) {
    if (best && s->product > *best) break;
    bool ok = covers(s->indices);
    std::vector<std::uint64_t> set;
    if (ok) {
      for (auto i : s->indices) set.push_back(primes[i]);
      if (require_torsion_free) ok = torsion_free_q(QuaternionAlgebraQ(set));
    }
    if (!ok) {
      if (!best) ++result.rejected_below_optimum;
      continue;
    }
    best = s->product;
    winners.emplace_back(std::move(set));
  }
  if (!best) throw std::logic_error("minimal_cover_q: the candidate algebra was not re-found");
  std::sort(winners.begin(), winners.end(), [](const auto& a, const auto& b) { return a.ram() < b.ram(); });
  result.optimal_factor = *best;
  result.optimal_sets = std::move(winners);
  for (const auto& b : result.optimal_sets) result.certificates.push_back(certificate_q(fields, b, rule));
  result.excluded_fields = std::move(fields);
  return result;
}

} // namespace detail

/// Step 2: some admissible algebra, drawn from subsets of the first 25 primes
/// of size 2, 4 or 6 (widened to 50 primes and size 8 if needed), into which
/// none of the fields with Reg_d < l embed. Ascending area factor.
inline QuaternionAlgebraQ candidate_algebra_2d(double l, bool require_torsion_free = false) {
  if (!(l > 0)) throw input_error("candidate_algebra_2d: systole bound must be positive");
  SplitTableQ table(fields_with_regulator_below(l));
  return detail::candidate_for_fields(table, require_torsion_free);
}

/// All ramification sets of least area factor with systole >= l (regulator
/// length convention), sorted lexicographically.
/// `rule` other than the default reads 2 off d mod 8, for comparison with
/// tables computed that way.
inline SearchResultQ minimal_algebra_2d(double l, bool require_torsion_free = false, unsigned workers = 1,
                                        DyadicRule rule = DyadicRule::discriminant) {
  if (!(l > 0)) throw input_error("minimal_algebra_2d: systole bound must be positive");
  auto result = detail::minimal_cover_q(fields_with_regulator_below(l, workers), require_torsion_free, rule);
  result.systole_bound = l;
  return result;
}

// ---------------------------------------------------------------------------
// Q(i)

/// Split masks of a fixed prime-ideal pool against a fixed extension list.
class SplitTableQi {
public:
  SplitTableQi(std::vector<GaussianQuadExt> fields, std::vector<GaussianPrimeIdeal> pool, unsigned workers = 1)
      : fields_(std::move(fields)), pool_(std::move(pool)) {
    masks_ = parallel_map(pool_.size(), workers, [&](std::size_t j) {
      FieldMask m(fields_.size());
      for (std::size_t i = 0; i < fields_.size(); ++i) {
        if (splitting_in_ext(pool_[j], fields_[i]) == Splitting::split) m.set(i);
      }
      return m;
    });
  }

  [[nodiscard]] const std::vector<GaussianQuadExt>& fields() const { return fields_; }
  [[nodiscard]] const std::vector<GaussianPrimeIdeal>& pool() const { return pool_; }
  [[nodiscard]] const FieldMask& mask(std::size_t j) const { return masks_[j]; }

  template <typename IndexRange>
  [[nodiscard]] bool covers(const IndexRange& indices) const {
    if (fields_.empty()) return true;
    FieldMask acc(fields_.size());
    for (auto j : indices) {
      acc |= masks_[j];
      if (acc.all()) return true;
    }
    return acc.all();
  }

private:
  std::vector<GaussianQuadExt> fields_;
  std::vector<GaussianPrimeIdeal> pool_;
  std::vector<FieldMask> masks_;
};

inline std::vector<GaussianPrimeIdeal> certificate_qi(const std::vector<GaussianQuadExt>& fields,
                                                      const QuaternionAlgebraQi& b) {
  std::vector<GaussianPrimeIdeal> out;
  out.reserve(fields.size());
  for (const auto& f : fields) {
    auto p = obstructing_prime_qi(f, b);
    if (!p) throw std::logic_error("certificate_qi: " + to_string(f) + " embeds");
    out.push_back(*p);
  }
  return out;
}

/// Relative-discriminant norm bound e^{2(l+2)} for extensions of Q(i) that
/// may carry a closed geodesic shorter than l.
inline double qi_field_bound(double l) { return std::exp(2.0 * (l + 2.0)); }

struct SearchResultQi {
  double systole_bound = 0;
  double volume = 0;
  std::uint64_t factor = 0;
  std::vector<QuaternionAlgebraQi> sets;  // all sets of the least factor found
  std::vector<GaussianQuadExt> excluded_fields;
  std::vector<std::vector<GaussianPrimeIdeal>> certificates;
  bool exhaustive = false;  // optimality over all of Z[i] is never claimed
  std::uint64_t nodes = 0;
};

/// Least-volume admissible ideal set drawn from ideals of norm <= pool_norm_bound
/// that obstructs every extension with N(rel disc) <= e^{2(l+2)}, found by
/// ordered enumeration within `budget` frontier expansions.
inline SearchResultQi valid_algebra_3d(double l, std::uint64_t pool_norm_bound, std::uint64_t budget = 5'000'000,
                                       unsigned workers = 1) {
  if (!(l > 0)) throw input_error("valid_algebra_3d: systole bound must be positive");
  if (budget < 1) throw input_error("valid_algebra_3d: budget must be >= 1");
  SplitTableQi table(quad_exts_with_disc_below(qi_field_bound(l)), gaussian_primes_up_to_norm(pool_norm_bound),
                     workers);
  const auto& pool = table.pool();
  std::vector<std::uint64_t> weights;
  for (const auto& p : pool) weights.push_back(p.norm - 1);
  const std::size_t max_card = std::min(pool.size() - pool.size() % 2, max_subset_size);
  MergedSubsetEnumerator stream(weights, detail::even_cardinalities(2, max_card),
                                std::numeric_limits<std::uint64_t>::max());

  SearchResultQi result;
  result.systole_bound = l;
  std::optional<std::uint64_t> best;
  while (auto s = stream.next()) {
    if (best && s->product > *best) break;
    if (stream.nodes_expanded() > budget) break;
    if (!table.covers(s->indices)) continue;
    best = s->product;
    std::vector<GaussianPrimeIdeal> ideals;
    for (auto j : s->indices) ideals.push_back(pool[j]);
    result.sets.emplace_back(std::move(ideals));
  }
  result.nodes = stream.nodes_expanded();
  if (!best) {
    throw no_candidate_error("valid_algebra_3d: no valid ideal set within the work budget (" +
                             std::to_string(budget) + " nodes)");
  }
  result.factor = *best;
  result.volume = volume_constant_qi() * static_cast<double>(*best);
  for (const auto& b : result.sets) result.certificates.push_back(certificate_qi(table.fields(), b));
  result.excluded_fields = table.fields();
  return result;
}

struct AssignmentResult {
  QuaternionAlgebraQi algebra;
  bool passes = false;
  std::optional<GaussianQuadExt> unobstructed;  // first extension that embeds
  std::size_t unobstructed_count = 0;
};

struct ExclusionReport {
  bool valid = false;
  std::size_t field_count = 0;
  std::vector<AssignmentResult> assignments;
};

/// Tries every choice of concrete prime ideals consistent with an
/// absolute-norm multiset; valid iff some choice obstructs every extension
/// with N(rel disc) <= e^{2(l+2)}.
inline ExclusionReport verify_exclusion_3d(const std::vector<std::uint64_t>& norms, double l, unsigned workers = 1) {
  std::map<std::uint64_t, std::size_t> multiplicity;
  for (auto n : norms) ++multiplicity[n];
  std::vector<std::vector<std::vector<GaussianPrimeIdeal>>> groups;  // per norm: candidate choices
  for (const auto& [n, m] : multiplicity) {
    const auto ideals = gaussian_primes_of_norm(n);
    if (ideals.empty()) throw input_error("no prime ideal of Z[i] has norm " + std::to_string(n));
    if (m > ideals.size()) {
      throw input_error("norm " + std::to_string(n) + " occurs " + std::to_string(m) + " times but only " +
                        std::to_string(ideals.size()) + " prime ideal(s) have that norm");
    }
    std::vector<std::vector<GaussianPrimeIdeal>> choices;
    if (m == ideals.size()) {
      choices.push_back(ideals);
    } else {  // m == 1, two conjugate ideals
      for (const auto& ideal : ideals) choices.push_back({ideal});
    }
    groups.push_back(std::move(choices));
  }

  std::vector<QuaternionAlgebraQi> algebras;
  std::vector<std::size_t> pick(groups.size(), 0);
  while (true) {
    std::vector<GaussianPrimeIdeal> ram;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      for (const auto& ideal : groups[g][pick[g]]) ram.push_back(ideal);
    }
    algebras.emplace_back(std::move(ram));
    std::size_t g = 0;
    while (g < groups.size() && ++pick[g] == groups[g].size()) pick[g++] = 0;
    if (g == groups.size()) break;
  }

  const auto fields = quad_exts_with_disc_below(qi_field_bound(l));
  ExclusionReport report;
  report.field_count = fields.size();
  report.assignments = parallel_map(algebras.size(), workers, [&](std::size_t a) {
    AssignmentResult r;
    r.algebra = algebras[a];
    for (const auto& f : fields) {
      if (!embeds_qi(f, r.algebra)) continue;
      if (!r.unobstructed) r.unobstructed = f;
      ++r.unobstructed_count;
    }
    r.passes = r.unobstructed_count == 0;
    return r;
  });
  report.valid = std::any_of(report.assignments.begin(), report.assignments.end(),
                             [](const AssignmentResult& r) { return r.passes; });
  return report;
}

} // namespace sysarith
