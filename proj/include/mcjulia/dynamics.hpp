#pragma once

// Escape-time dynamics for f_c(zeta) = zeta^p + c over multicomplex numbers.
// A point belongs to the filled-in set when its orbit stays inside the escape
// radius for all tested iterations.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mcjulia/multicomplex.hpp"

namespace mcjulia {

// Smallest radius R with R^p - R >= ||c|| and R > 1: once ||zeta|| exceeds it
// the orbit norm grows monotonically. max(||c||, 2^{1/(p-1)}) satisfies both.
inline double escape_radius(const Multicomplex& c, int p) {
  if (p < 2) throw std::invalid_argument("escape_radius: power must be >= 2");
  return std::max(norm(c), std::pow(2.0, 1.0 / (p - 1)));
}

struct DynamicsParams {
  int p = 2;
  Multicomplex c;
  int max_iter = 100;
  double escape_radius = 2.0;

  static DynamicsParams make(int p, const Multicomplex& c, int max_iter) {
    if (p < 2) throw std::invalid_argument("DynamicsParams: power must be >= 2");
    if (max_iter < 1) throw std::invalid_argument("DynamicsParams: max_iter must be >= 1");
    return DynamicsParams{p, c, max_iter, mcjulia::escape_radius(c, p)};
  }
};

struct EscapeResult {
  bool escaped = false;
  int escape_iter = 0;  // first m with ||zeta_m|| > R; 0 when bounded
};

inline Multicomplex iterate_once(const Multicomplex& zeta, const DynamicsParams& params) {
  require_same_order(zeta, params.c, "iterate_once");
  return pow(zeta, params.p) + params.c;
}

inline EscapeResult escape_time(const Multicomplex& zeta0, const DynamicsParams& params) {
  require_same_order(zeta0, params.c, "escape_time");
  const double r_sq = params.escape_radius * params.escape_radius;
  Multicomplex zeta = zeta0;
  for (int m = 1; m <= params.max_iter; ++m) {
    zeta = iterate_once(zeta, params);
    const double s = norm_sq(zeta);
    if (!(s <= r_sq)) return {true, m};  // catches overflow to inf/nan too
  }
  return {false, 0};
}

inline bool is_member(const Multicomplex& zeta0, const DynamicsParams& params) {
  return !escape_time(zeta0, params).escaped;
}

// Membership via one idempotent split level: zeta0 and c split into two
// order-(n-1) components that iterate independently, so membership at order n
// equals membership of both components (each with its own escape radius,
// same power and iteration count).
inline bool membership_via_decomposition(const Multicomplex& zeta0, const DynamicsParams& params) {
  require_same_order(zeta0, params.c, "membership_via_decomposition");
  if (zeta0.order < 2)
    throw std::invalid_argument("membership_via_decomposition: order must be >= 2");
  const IdempotentSplit z = split(zeta0);
  const IdempotentSplit c = split(params.c);
  const DynamicsParams pe = DynamicsParams::make(params.p, c.e_part, params.max_iter);
  const DynamicsParams pc = DynamicsParams::make(params.p, c.e_conj_part, params.max_iter);
  return is_member(z.e_part, pe) && is_member(z.e_conj_part, pc);
}

}  // namespace mcjulia
