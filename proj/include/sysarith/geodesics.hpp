#pragma once

/**
 * @file geodesics.hpp
 * @brief Closed geodesic lengths from traces and exact systoles of
 * quaternion algebras over Q.
 *
 * Two length conventions are exposed:
 *  - paper (regulator): a field Q(sqrt d) embedding into B contributes Reg_d;
 *  - trace: a hyperbolic element of trace t has length
 *    log((t + sqrt(t^2 - 4)) / 2), its field being Q(sqrt(t^2 - 4)).
 * They agree when the fundamental unit has norm +1 and differ by a factor 2
 * when it has norm -1.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>

#include "quaternion.hpp"
#include "real_quadratic.hpp"

namespace sysarith {

enum class LengthMode { paper, trace };

inline const char* to_string(LengthMode m) { return m == LengthMode::paper ? "paper" : "trace"; }

/// Length of the closed geodesic of a hyperbolic element with trace t;
/// doubled for loxodromic elements in dimension 3.
inline double geodesic_length_from_trace(std::int64_t t, int dimension = 2) {
  if (dimension != 2 && dimension != 3) throw input_error("geodesic_length_from_trace: dimension must be 2 or 3");
  const auto at = t < 0 ? -t : t;
  if (at <= 2) throw input_error("geodesic_length_from_trace: |t| <= 2 is not hyperbolic");
  const auto tt = static_cast<double>(at);
  const double len = std::acosh(tt / 2.0);  // = log((t + sqrt(t^2-4))/2)
  return dimension == 3 ? 2.0 * len : len;
}

struct GeodesicCandidate {
  std::int64_t trace = 0;
  QuadFieldQ field;
  double length_trace_mode = 0;
  double length_paper_mode = 0;

  static GeodesicCandidate from_trace(std::int64_t t) {
    const QuadFieldQ f(squarefree_part(t * t - 4));
    return {t, f, geodesic_length_from_trace(t, 2), f.regulator()};
  }
};

struct SystoleResult {
  double length = 0;
  QuadFieldQ field;
  std::optional<std::int64_t> trace;  // set in trace mode
};

/// Exact systole over Q, scanning geodesics of length < cap (regulator mode) or
/// <= cap (trace mode). nullopt means no geodesic below the cap.
inline std::optional<SystoleResult> exact_systole_q(const QuaternionAlgebraQ& b, LengthMode mode, double cap) {
  require_admissible(b);
  if (!(cap > 0)) throw input_error("exact_systole_q: cap must be positive");
  if (mode == LengthMode::paper) {
    // The field list grows like e^{2 cap}; widen the scan one unit at a time.
    for (double step = std::min(1.0, cap);; step = std::min(step + 1.0, cap)) {
      std::optional<SystoleResult> best;
      for (const auto& f : fields_with_regulator_below(step)) {
        if (!embeds_q(f, b)) continue;
        const double reg = f.regulator();
        if (!best || reg < best->length) best = SystoleResult{reg, f, std::nullopt};
      }
      if (best || step >= cap) return best;
    }
  }
  // Lengths increase with t, so the first embeddable trace is the minimum.
  for (std::int64_t t = 3;; ++t) {
    const double len = geodesic_length_from_trace(t, 2);
    if (len > cap) return std::nullopt;
    const QuadFieldQ f(squarefree_part(t * t - 4));
    if (embeds_q(f, b)) return SystoleResult{len, f, t};
  }
}

} // namespace sysarith
