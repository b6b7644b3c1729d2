#pragma once

/**
 * @file real_quadratic.hpp
 * @brief Real quadratic fields Q(sqrt d): Kronecker symbols, prime
 * splitting, fundamental units by continued fractions, regulators and the
 * regulator-bounded field scan.
 *
 * Units are stored exactly as u = (x + y sqrt(disc)) / 2 with
 * x^2 - disc y^2 = 4 N(u). Logarithms are only taken at the end.
 */

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <vector>

#include "arith.hpp"
#include "parallel.hpp"

namespace sysarith {

enum class Splitting { split, inert, ramified };

inline const char* to_string(Splitting s) {
  switch (s) {
    case Splitting::split: return "split";
    case Splitting::inert: return "inert";
    case Splitting::ramified: return "ramified";
  }
  return "?";
}

/// Fundamental discriminant of Q(sqrt d) for squarefree d != 1.
inline std::int64_t fundamental_discriminant(std::int64_t d) {
  const std::int64_t r = ((d % 4) + 4) % 4;
  return r == 1 ? d : 4 * d;
}

/// Kronecker symbol (D/p) for a prime p and any integer D.
inline int kronecker_prime(std::int64_t disc, std::uint64_t p) {
  if (p == 2) {
    if (disc % 2 == 0) return 0;
    const std::int64_t r = ((disc % 8) + 8) % 8;
    return (r == 1 || r == 7) ? 1 : -1;
  }
  const auto pi = static_cast<std::int64_t>(p);
  const auto a = static_cast<std::uint64_t>(((disc % pi) + pi) % pi);
  if (a == 0) return 0;
  return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

/// Kronecker symbol (disc(Q(sqrt d)) / p). Throws input_error if p is not prime.
inline int kronecker_symbol(std::int64_t d, std::uint64_t p) {
  if (!is_prime(p)) throw input_error("kronecker_symbol: " + std::to_string(p) + " is not prime");
  const std::int64_t s = squarefree_part(d);
  if (s == 1) return 1;
  return kronecker_prime(fundamental_discriminant(s), p);
}

/// A real quadratic field Q(sqrt d), d squarefree >= 2.
class QuadFieldQ {
public:
  explicit QuadFieldQ(std::int64_t d) : d_(d) {
    if (d < 2 || !is_squarefree(static_cast<std::uint64_t>(d))) {
      throw input_error("QuadFieldQ: d must be squarefree and >= 2, got " + std::to_string(d));
    }
    disc_ = fundamental_discriminant(d);
  }

  [[nodiscard]] std::int64_t d() const { return d_; }
  [[nodiscard]] std::int64_t disc() const { return disc_; }
  /// log of the fundamental unit; memoized process-wide.
  [[nodiscard]] double regulator() const;

  friend bool operator==(const QuadFieldQ& a, const QuadFieldQ& b) { return a.d_ == b.d_; }
  friend auto operator<=>(const QuadFieldQ& a, const QuadFieldQ& b) { return a.d_ <=> b.d_; }

private:
  std::int64_t d_;
  std::int64_t disc_;
};

inline Splitting splitting_type_q(const QuadFieldQ& field, std::uint64_t p) {
  switch (kronecker_prime(field.disc(), p)) {
    case 1: return Splitting::split;
    case 0: return Splitting::ramified;
    default: return Splitting::inert;
  }
}

/// How splitting at p = 2 is decided. `discriminant` is the correct rule.
/// `d_mod_8` reads the Kronecker symbol off d itself, so 2 "splits" whenever
/// d = +-1 mod 8 even though it ramifies for d = 3 mod 4; kept only to
/// reproduce published tables computed that way.
enum class DyadicRule { discriminant, d_mod_8 };

inline const char* to_string(DyadicRule r) { return r == DyadicRule::discriminant ? "discriminant" : "d-mod-8"; }

inline Splitting splitting_type_q(const QuadFieldQ& field, std::uint64_t p, DyadicRule rule) {
  if (p == 2 && rule == DyadicRule::d_mod_8) {
    switch (kronecker_prime(field.d(), 2)) {
      case 1: return Splitting::split;
      case 0: return Splitting::ramified;
      default: return Splitting::inert;
    }
  }
  return splitting_type_q(field, p);
}

/// u = (x + y sqrt(disc)) / 2 > 1 with x^2 - disc y^2 = 4 * norm.
struct FundamentalUnit {
  std::int64_t d = 0;
  bigint x;
  bigint y;
  int norm = 1;

  [[nodiscard]] std::int64_t disc() const { return fundamental_discriminant(d); }

  /// Exact check of x^2 - disc y^2 = +-4.
  [[nodiscard]] bool satisfies_norm_equation() const {
    return x * x - bigint(disc()) * y * y == bigint(4 * norm);
  }

  /// log u, using u = (x + sqrt(x^2 - 4N)) / 2.
  [[nodiscard]] double log() const {
    if (x == 0) {
      // x = 0 only for disc = 4 with y = 1, which is not a real quadratic field.
      throw std::domain_error("FundamentalUnit::log: degenerate unit");
    }
    const double lx = log_of(x);
    const double t = 4.0 * norm * std::exp(-2.0 * lx);
    return lx + std::log((1.0 + std::sqrt(1.0 - t)) / 2.0);
  }

  friend bool operator==(const FundamentalUnit&, const FundamentalUnit&) = default;
};

namespace detail {

/// Expands the reduced quadratic irrational alpha = (b + sqrt D)/2 whose
/// lattice Z + Z alpha is the maximal order. Exact (P, Q) state; convergent
/// denominators in big integers. With a cutoff, stops as soon as the unit is
/// known to exceed e^cutoff.
inline std::optional<FundamentalUnit> expand_unit(std::int64_t d, std::optional<double> cutoff) {
  const std::int64_t disc = fundamental_discriminant(d);
  const auto root = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(disc)));
  std::int64_t b = root;
  if ((b - disc) % 2 != 0) --b;
  const double log_alpha = std::log((static_cast<double>(b) + std::sqrt(static_cast<double>(disc))) / 2.0);

  const std::int64_t p0 = b;
  const std::int64_t q0 = 2;
  std::int64_t p = p0;
  std::int64_t q = q0;
  bigint prev2 = 1;  // q_{-2}
  bigint prev1 = 0;  // q_{-1}
  int period = 0;
  while (true) {
    const std::int64_t a = (p + root) / q;
    bigint cur = a * prev1 + prev2;
    prev2 = std::move(prev1);
    prev1 = std::move(cur);
    p = a * q - p;
    q = (disc - p * p) / q;
    ++period;
    if (p == p0 && q == q0) break;
    // The partial unit q_i alpha + q_{i-1} is below the final unit.
    if (cutoff && log_of(prev1) + log_alpha > *cutoff + 1e-12) return std::nullopt;
  }
  FundamentalUnit u;
  u.d = d;
  u.x = bigint(b) * prev1 + 2 * prev2;
  u.y = prev1;
  u.norm = (period % 2 == 0) ? 1 : -1;
  if (cutoff && u.log() > *cutoff) return std::nullopt;
  return u;
}

} // namespace detail

/// Process-wide memo of fundamental units keyed by d; thread safe.
/// Persisted as a versioned plain-text map "d<TAB>x<TAB>y<TAB>norm".
class RegulatorCache {
public:
  static constexpr const char* header = "# sysarith regulator cache v1";

  static RegulatorCache& global() {
    static RegulatorCache instance;
    return instance;
  }

  void set_enabled(bool on) {
    std::unique_lock lock(mutex_);
    enabled_ = on;
  }

  [[nodiscard]] bool enabled() const {
    std::shared_lock lock(mutex_);
    return enabled_;
  }

  [[nodiscard]] std::optional<FundamentalUnit> find(std::int64_t d) const {
    std::shared_lock lock(mutex_);
    if (!enabled_) return std::nullopt;
    auto it = units_.find(d);
    if (it == units_.end()) return std::nullopt;
    return it->second;
  }

  void store(const FundamentalUnit& u) {
    std::unique_lock lock(mutex_);
    if (enabled_) units_.emplace(u.d, u);
  }

  void clear() {
    std::unique_lock lock(mutex_);
    units_.clear();
  }

  [[nodiscard]] std::size_t size() const {
    std::shared_lock lock(mutex_);
    return units_.size();
  }

  /// Loads entries from a cache file. Returns false (and leaves the cache
  /// untouched) if the file is missing or corrupt; corrupt files produce a
  /// warning on `warn`.
  bool load(const std::string& path, std::ostream& warn = std::cerr) {
    std::ifstream in(path);
    if (!in) return false;
    std::string line;
    if (!std::getline(in, line) || line != header) {
      warn << "warning: ignoring regulator cache '" << path << "': bad header\n";
      return false;
    }
    std::map<std::int64_t, FundamentalUnit> loaded;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream fields(line);
      std::string ds, xs, ys, ns;
      if (!std::getline(fields, ds, '\t') || !std::getline(fields, xs, '\t') || !std::getline(fields, ys, '\t') ||
          !std::getline(fields, ns)) {
        warn << "warning: ignoring regulator cache '" << path << "': malformed line\n";
        return false;
      }
      try {
        FundamentalUnit u;
        u.d = std::stoll(ds);
        u.x = bigint(xs);
        u.y = bigint(ys);
        u.norm = std::stoi(ns);
        if (u.d < 2 || (u.norm != 1 && u.norm != -1) || u.x <= 0 || u.y <= 0 || !u.satisfies_norm_equation()) {
          throw std::invalid_argument("norm equation");
        }
        loaded.emplace(u.d, std::move(u));
      } catch (const std::exception&) {
        warn << "warning: ignoring regulator cache '" << path << "': invalid entry\n";
        return false;
      }
    }
    std::unique_lock lock(mutex_);
    for (auto& [d, u] : loaded) units_.insert_or_assign(d, std::move(u));
    return true;
  }

  bool save(const std::string& path) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out) return false;
    std::shared_lock lock(mutex_);
    out << header << '\n';
    for (const auto& [d, u] : units_) out << d << '\t' << u.x << '\t' << u.y << '\t' << u.norm << '\n';
    return static_cast<bool>(out);
  }

private:
  mutable std::shared_mutex mutex_;
  std::map<std::int64_t, FundamentalUnit> units_;
  bool enabled_ = true;
};

/// Fundamental unit of the maximal order of Q(sqrt d). With a cutoff,
/// returns nullopt when the regulator exceeds it.
inline std::optional<FundamentalUnit> fundamental_unit(std::int64_t d, std::optional<double> cutoff = std::nullopt) {
  if (d < 2 || !is_squarefree(static_cast<std::uint64_t>(d))) {
    throw input_error("fundamental_unit: d must be squarefree and >= 2, got " + std::to_string(d));
  }
  auto& cache = RegulatorCache::global();
  if (auto hit = cache.find(d)) {
    if (cutoff && hit->log() > *cutoff) return std::nullopt;
    return hit;
  }
  auto u = detail::expand_unit(d, cutoff);
  if (u) cache.store(*u);
  return u;
}

inline double regulator(std::int64_t d) { return fundamental_unit(d)->log(); }

inline double QuadFieldQ::regulator() const { return sysarith::regulator(d_); }

/// log((sqrt(d-4) + sqrt d)/2); defined for d >= 4.
inline double regulator_lower_bound(std::int64_t d) {
  if (d < 4) throw input_error("regulator_lower_bound: requires d >= 4, got " + std::to_string(d));
  const auto dd = static_cast<double>(d);
  return std::log(0.5 * (std::sqrt(dd - 4.0) + std::sqrt(dd)));
}

/// All squarefree d >= 2 with Reg_d < bound, ascending. d = 2, 3 are always
/// tested; larger d are scanned until the lower estimate reaches the bound.
inline std::vector<QuadFieldQ> fields_with_regulator_below(double bound, unsigned workers = 1) {
  if (!(bound > 0)) throw input_error("fields_with_regulator_below: bound must be positive");
  std::vector<std::int64_t> candidates{2, 3};
  for (std::int64_t d = 5; regulator_lower_bound(d) < bound; ++d) {
    if (is_squarefree(static_cast<std::uint64_t>(d))) candidates.push_back(d);
  }
  const auto below = parallel_map(candidates.size(), workers, [&](std::size_t i) {
    auto u = fundamental_unit(candidates[i], bound);
    return u.has_value() && u->log() < bound;
  });
  std::vector<QuadFieldQ> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (below[i]) out.emplace_back(candidates[i]);
  }
  return out;
}

} // namespace sysarith
