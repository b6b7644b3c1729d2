#pragma once

/**
 * @file volume.hpp
 * @brief Coarea of principal arithmetic Fuchsian groups over Q and covolume
 * of principal arithmetic Kleinian groups over Q(i).
 *
 *   coarea_Q(B)   = (pi/3) * prod_{p in Ram(B)} (p - 1)
 *   covol_Q(i)(B) = |D|^{3/2} zeta_k(2) / (4 pi^2) * prod (N p - 1),  |D| = 4
 *
 * with zeta_{Q(i)}(2) = zeta(2) * beta(2), beta the Dirichlet beta function.
 * The constant equals Catalan's constant / 3.
 */

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "arith.hpp"
#include "quaternion.hpp"

namespace sysarith {

/// prod (p - 1); 1 for the empty set.
inline std::uint64_t area_factor(const QuaternionAlgebraQ& b) {
  std::uint64_t f = 1;
  for (auto p : b.ram()) f = checked_mul(f, p - 1);
  return f;
}

/// prod (N p - 1); 1 for the empty set.
inline std::uint64_t area_factor(const QuaternionAlgebraQi& b) {
  std::uint64_t f = 1;
  for (const auto& p : b.ram()) f = checked_mul(f, p.norm - 1);
  return f;
}

inline std::uint64_t area_factor_of_norms(const std::vector<std::uint64_t>& norms) {
  std::uint64_t f = 1;
  for (auto n : norms) {
    if (n < 2) throw input_error("area_factor_of_norms: norms must be >= 2");
    f = checked_mul(f, n - 1);
  }
  return f;
}

inline double coarea_q(const QuaternionAlgebraQ& b) {
  require_admissible(b);
  return std::numbers::pi / 3.0 * static_cast<double>(area_factor(b));
}

/// sum_{k>=0} (-1)^k / (2k+1)^2 with the Cohen-Rodriguez Villegas-Zagier
/// acceleration for alternating series.
inline double dirichlet_beta_2() {
  constexpr int n = 40;
  long double d = std::pow(3.0L + std::sqrt(8.0L), n);
  d = (d + 1.0L / d) / 2.0L;
  long double b = -1.0L;
  long double c = -d;
  long double s = 0.0L;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    const long double term = 1.0L / ((2.0L * k + 1.0L) * (2.0L * k + 1.0L));
    s += c * term;
    b = static_cast<long double>(k + n) * static_cast<long double>(k - n) * b /
        ((static_cast<long double>(k) + 0.5L) * static_cast<long double>(k + 1));
  }
  return static_cast<double>(s / d);
}

inline double dedekind_zeta_qi_2() { return std::numbers::pi * std::numbers::pi / 6.0 * dirichlet_beta_2(); }

/// 4^{3/2} zeta_{Q(i)}(2) / (4 pi^2), computed once.
inline double volume_constant_qi() {
  static const double value = 8.0 * dedekind_zeta_qi_2() / (4.0 * std::numbers::pi * std::numbers::pi);
  return value;
}

inline double volume_qi(const QuaternionAlgebraQi& b) {
  require_admissible(b);
  return volume_constant_qi() * static_cast<double>(area_factor(b));
}

/// Volume from an absolute-norm multiset, as the tables list it.
inline double volume_qi_from_norms(const std::vector<std::uint64_t>& norms) {
  return volume_constant_qi() * static_cast<double>(area_factor_of_norms(norms));
}

/// Fixed-point rendering; ties resolve half-even on the exact binary value.
inline std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

inline std::string format_scientific(double v, int significant) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", significant - 1, v);
  return buf;
}

} // namespace sysarith
