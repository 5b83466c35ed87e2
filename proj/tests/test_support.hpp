#pragma once
// Reference implementations used only by the tests. They recompute results
// through a different route than the library (recursive doubling instead of
// bitmask convolution) so the two can cross-check each other.

#include <cstddef>
#include <vector>

#include "mcjulia/multicomplex.hpp"
#include "mcjulia/rng.hpp"

namespace mctest {

// Product via the doubling construction MC(k) = MC(k-1) + MC(k-1) i_k with
// (a + b i)(c + d i) = (ac - bd) + (ad + bc) i, recursing down to reals.
inline std::vector<double> doubling_mul(const std::vector<double>& a,
                                        const std::vector<double>& b) {
  const std::size_t n = a.size();
  if (n == 1) return {a[0] * b[0]};
  const std::size_t h = n / 2;
  const std::vector<double> a_lo(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(h));
  const std::vector<double> a_hi(a.begin() + static_cast<std::ptrdiff_t>(h), a.end());
  const std::vector<double> b_lo(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(h));
  const std::vector<double> b_hi(b.begin() + static_cast<std::ptrdiff_t>(h), b.end());
  const std::vector<double> ac = doubling_mul(a_lo, b_lo);
  const std::vector<double> bd = doubling_mul(a_hi, b_hi);
  const std::vector<double> ad = doubling_mul(a_lo, b_hi);
  const std::vector<double> bc = doubling_mul(a_hi, b_lo);
  std::vector<double> out(n);
  for (std::size_t k = 0; k < h; ++k) {
    out[k] = ac[k] - bd[k];
    out[h + k] = ad[k] + bc[k];
  }
  return out;
}

inline mcjulia::Multicomplex doubling_product(const mcjulia::Multicomplex& a,
                                              const mcjulia::Multicomplex& b) {
  return mcjulia::Multicomplex::from_coeffs(a.order, doubling_mul(a.coeffs, b.coeffs));
}

inline mcjulia::Multicomplex random_mc(mcjulia::Rng& rng, int order, double lo = -1.0,
                                       double hi = 1.0) {
  mcjulia::Multicomplex out(order);
  for (double& c : out.coeffs) c = rng.uniform(lo, hi);
  return out;
}

// Coefficients k/8 with k in [-16, 16]: exactly representable, and small
// enough that convolutions of a few factors stay exact in double precision.
inline mcjulia::Multicomplex random_dyadic(mcjulia::Rng& rng, int order) {
  mcjulia::Multicomplex out(order);
  for (double& c : out.coeffs)
    c = (static_cast<double>(rng.below(33)) - 16.0) / 8.0;
  return out;
}

// p-th power through mul_direct only; oracle for the transform-based pow.
inline mcjulia::Multicomplex direct_power(const mcjulia::Multicomplex& a, int p) {
  mcjulia::Multicomplex acc = a;
  for (int k = 1; k < p; ++k) acc = mcjulia::mul_direct(acc, a);
  return acc;
}

}  // namespace mctest
