#pragma once

// Order-n multicomplex numbers stored as flat coefficient arrays indexed by
// unit mask. Two multiplication routes are provided: the O(4^n) signed
// convolution (mul_direct, kept as the correctness oracle) and the idempotent
// route (mul_idempotent), which maps a number to 2^{n-1} independent complex
// components, multiplies componentwise, and maps back. The component map is
// the n-fold idempotent split flattened into butterfly passes; the halving in
// the inverse passes is exact in binary floating point, so the flattened form
// is bit-identical to the textbook recursion.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcjulia/units.hpp"

namespace mcjulia {

struct Multicomplex {
  int order = 0;
  std::vector<double> coeffs;  // size 1 << order, coeffs[mask]

  Multicomplex() : coeffs(1, 0.0) {}
  explicit Multicomplex(int n) : order(n), coeffs(std::size_t{1} << check_order(n), 0.0) {}

  static int check_order(int n) {
    if (n < 0 || n > 24) throw std::invalid_argument("multicomplex order out of range: " + std::to_string(n));
    return n;
  }

  static Multicomplex from_real(int n, double x) {
    Multicomplex m(n);
    m.coeffs[0] = x;
    return m;
  }

  static Multicomplex from_unit(int n, UnitMask u, double scale = 1.0) {
    Multicomplex m(n);
    if (u >= m.coeffs.size()) throw std::invalid_argument("unit mask out of range for order");
    m.coeffs[u] = scale;
    return m;
  }

  static Multicomplex from_coeffs(int n, std::vector<double> c) {
    Multicomplex m(n);
    if (c.size() != m.coeffs.size()) throw std::invalid_argument("coefficient count must be 2^order");
    m.coeffs = std::move(c);
    return m;
  }

  double operator[](UnitMask u) const { return coeffs[u]; }
  double& operator[](UnitMask u) { return coeffs[u]; }

  bool is_real() const {
    for (std::size_t k = 1; k < coeffs.size(); ++k)
      if (coeffs[k] != 0.0) return false;
    return true;
  }

  friend bool operator==(const Multicomplex&, const Multicomplex&) = default;
};

inline void require_same_order(const Multicomplex& a, const Multicomplex& b, const char* op) {
  if (a.order != b.order)
    throw std::invalid_argument(std::string(op) + ": operand orders differ");
}

inline Multicomplex add(const Multicomplex& a, const Multicomplex& b) {
  require_same_order(a, b, "add");
  Multicomplex out(a.order);
  for (std::size_t k = 0; k < out.coeffs.size(); ++k) out.coeffs[k] = a.coeffs[k] + b.coeffs[k];
  return out;
}

inline Multicomplex sub(const Multicomplex& a, const Multicomplex& b) {
  require_same_order(a, b, "sub");
  Multicomplex out(a.order);
  for (std::size_t k = 0; k < out.coeffs.size(); ++k) out.coeffs[k] = a.coeffs[k] - b.coeffs[k];
  return out;
}

inline Multicomplex neg(const Multicomplex& a) {
  Multicomplex out(a.order);
  for (std::size_t k = 0; k < out.coeffs.size(); ++k) out.coeffs[k] = -a.coeffs[k];
  return out;
}

inline Multicomplex scale(const Multicomplex& a, double s) {
  Multicomplex out(a.order);
  for (std::size_t k = 0; k < out.coeffs.size(); ++k) out.coeffs[k] = s * a.coeffs[k];
  return out;
}

// Signed convolution over all mask pairs.
inline Multicomplex mul_direct(const Multicomplex& a, const Multicomplex& b) {
  require_same_order(a, b, "mul_direct");
  Multicomplex out(a.order);
  const std::size_t n = a.coeffs.size();
  for (std::size_t p = 0; p < n; ++p) {
    const double ap = a.coeffs[p];
    for (std::size_t q = 0; q < n; ++q) {
      const SignedUnit u = unit_product(static_cast<UnitMask>(p), static_cast<UnitMask>(q));
      out.coeffs[u.mask] += u.sign * ap * b.coeffs[q];
    }
  }
  return out;
}

namespace detail {

// One split level applied in place to every length-`len` sub-block. A block
// eta = (A | B) of order k becomes (A - B*i_{k-1} | A + B*i_{k-1}); written on
// coefficients that is a 4-way butterfly between the quarters.
inline void split_blocks(double* v, std::size_t total, std::size_t len) {
  const std::size_t e = len / 2;
  const std::size_t h = len / 4;
  for (std::size_t base = 0; base < total; base += len) {
    double* a = v + base;
    double* b = v + base + e;
    for (std::size_t k = 0; k < h; ++k) {
      const double a0 = a[k], a1 = a[k + h];
      const double b0 = b[k], b1 = b[k + h];
      a[k] = a0 + b1;
      a[k + h] = a1 - b0;
      b[k] = a0 - b1;
      b[k + h] = a1 + b0;
    }
  }
}

inline void join_blocks(double* v, std::size_t total, std::size_t len) {
  const std::size_t e = len / 2;
  const std::size_t h = len / 4;
  for (std::size_t base = 0; base < total; base += len) {
    double* a = v + base;
    double* b = v + base + e;
    for (std::size_t k = 0; k < h; ++k) {
      const double u0 = a[k], u1 = a[k + h];
      const double v0 = b[k], v1 = b[k + h];
      a[k] = 0.5 * (u0 + v0);
      a[k + h] = 0.5 * (u1 + v1);
      b[k] = 0.5 * (v1 - u1);
      b[k + h] = 0.5 * (u0 - v0);
    }
  }
}

// Fixed-size instantiations let the compiler unroll and vectorize the
// butterflies; the operation order is identical to the loop form, so results
// stay bit-for-bit equal.
template <std::size_t Size, std::size_t Len = Size>
inline void to_components_fixed(double* v) {
  if constexpr (Len >= 4) {
    split_blocks(v, Size, Len);
    to_components_fixed<Size, Len / 2>(v);
  }
}

template <std::size_t Size, std::size_t Len = 4>
inline void from_components_fixed(double* v) {
  if constexpr (Len <= Size) {
    join_blocks(v, Size, Len);
    from_components_fixed<Size, Len * 2>(v);
  }
}

// Forward transform: after this, v holds 2^{n-1} complex components as
// (re, im) pairs, im taken along i1.
inline void to_components(double* v, std::size_t size) {
  switch (size) {
    case 4: return to_components_fixed<4>(v);
    case 8: return to_components_fixed<8>(v);
    case 16: return to_components_fixed<16>(v);
    case 32: return to_components_fixed<32>(v);
    case 64: return to_components_fixed<64>(v);
    default:
      for (std::size_t len = size; len >= 4; len /= 2) split_blocks(v, size, len);
  }
}

inline void from_components(double* v, std::size_t size) {
  switch (size) {
    case 4: return from_components_fixed<4>(v);
    case 8: return from_components_fixed<8>(v);
    case 16: return from_components_fixed<16>(v);
    case 32: return from_components_fixed<32>(v);
    case 64: return from_components_fixed<64>(v);
    default:
      for (std::size_t len = 4; len <= size; len *= 2) join_blocks(v, size, len);
  }
}

inline std::complex<double> cpow_int(std::complex<double> b, int m) {
  std::complex<double> acc(1.0, 0.0);
  while (m > 0) {
    if (m & 1) acc *= b;
    m >>= 1;
    if (m) b *= b;
  }
  return acc;
}

}  // namespace detail

inline Multicomplex mul_idempotent(const Multicomplex& a, const Multicomplex& b) {
  require_same_order(a, b, "mul_idempotent");
  if (a.order <= 1) return mul_direct(a, b);
  const std::size_t size = a.coeffs.size();
  // Stack scratch up to order 7; the transform is cheap enough that heap
  // traffic would otherwise dominate at small orders.
  constexpr std::size_t kStack = 128;
  double xbuf[kStack], ybuf[kStack];
  std::vector<double> xheap, yheap;
  double* x = xbuf;
  double* y = ybuf;
  if (size > kStack) {
    xheap.resize(size);
    yheap.resize(size);
    x = xheap.data();
    y = yheap.data();
  }
  std::copy(a.coeffs.begin(), a.coeffs.end(), x);
  std::copy(b.coeffs.begin(), b.coeffs.end(), y);
  detail::to_components(x, size);
  detail::to_components(y, size);
  for (std::size_t t = 0; t < size; t += 2) {
    const double re = x[t] * y[t] - x[t + 1] * y[t + 1];
    const double im = x[t] * y[t + 1] + x[t + 1] * y[t];
    x[t] = re;
    x[t + 1] = im;
  }
  detail::from_components(x, size);
  Multicomplex out(a.order);
  std::copy(x, x + size, out.coeffs.begin());
  return out;
}

// m-th ring power via componentwise complex exponentiation.
inline Multicomplex pow(const Multicomplex& a, int m) {
  if (m < 1) throw std::invalid_argument("pow: exponent must be >= 1");
  if (a.order == 0) {
    Multicomplex out(0);
    double acc = 1.0, b = a.coeffs[0];
    int e = m;
    while (e > 0) {
      if (e & 1) acc *= b;
      e >>= 1;
      if (e) b *= b;
    }
    out.coeffs[0] = acc;
    return out;
  }
  const std::size_t size = a.coeffs.size();
  std::vector<double> x = a.coeffs;
  if (a.order >= 2) detail::to_components(x.data(), size);
  for (std::size_t t = 0; t < size; t += 2) {
    const auto w = detail::cpow_int({x[t], x[t + 1]}, m);
    x[t] = w.real();
    x[t + 1] = w.imag();
  }
  if (a.order >= 2) detail::from_components(x.data(), size);
  Multicomplex out(a.order);
  out.coeffs = std::move(x);
  return out;
}

struct IdempotentSplit {
  Multicomplex e_part;       // component on the idempotent (1 + i_{n-1} i_n)/2
  Multicomplex e_conj_part;  // component on its conjugate idempotent
};

inline IdempotentSplit split(const Multicomplex& a) {
  if (a.order < 2) throw std::invalid_argument("split: order must be >= 2");
  const std::size_t size = a.coeffs.size();
  std::vector<double> buf = a.coeffs;
  detail::split_blocks(buf.data(), size, size);
  IdempotentSplit s{Multicomplex(a.order - 1), Multicomplex(a.order - 1)};
  const std::size_t e = size / 2;
  s.e_part.coeffs.assign(buf.begin(), buf.begin() + e);
  s.e_conj_part.coeffs.assign(buf.begin() + e, buf.end());
  return s;
}

inline Multicomplex join(const IdempotentSplit& s) {
  require_same_order(s.e_part, s.e_conj_part, "join");
  Multicomplex out(s.e_part.order + 1);
  const std::size_t e = s.e_part.coeffs.size();
  for (std::size_t k = 0; k < e; ++k) {
    out.coeffs[k] = s.e_part.coeffs[k];
    out.coeffs[k + e] = s.e_conj_part.coeffs[k];
  }
  detail::join_blocks(out.coeffs.data(), 2 * e, 2 * e);
  return out;
}

inline double norm_sq(const Multicomplex& a) {
  double s = 0.0;
  for (double c : a.coeffs) s += c * c;
  return s;
}

inline double norm(const Multicomplex& a) { return std::sqrt(norm_sq(a)); }

namespace detail {
inline double norm_sq_halves(const double* v, std::size_t len) {
  if (len == 1) return v[0] * v[0];
  return norm_sq_halves(v, len / 2) + norm_sq_halves(v + len / 2, len / 2);
}
}  // namespace detail

// ||eta||^2 = ||eta1||^2 + ||eta2||^2 over the order-(n-1) halves, recursively.
inline double norm_recursive(const Multicomplex& a) {
  return std::sqrt(detail::norm_sq_halves(a.coeffs.data(), a.coeffs.size()));
}

// ||eta||^2 = (||eta_gamma||^2 + ||eta_gamma*||^2) / 2, applied down to the
// complex components: the mean square of the component magnitudes.
inline double norm_idempotent(const Multicomplex& a) {
  if (a.order <= 1) return norm(a);
  std::vector<double> buf = a.coeffs;
  detail::to_components(buf.data(), buf.size());
  double s = 0.0;
  for (double c : buf) s += c * c;
  return std::sqrt(s / static_cast<double>(std::size_t{1} << (a.order - 1)));
}

inline Multicomplex from_slice_point(double x, double y, double z, int order,
                                     UnitMask u1, UnitMask u2, UnitMask u3) {
  if (u1 == u2 || u1 == u3 || u2 == u3)
    throw std::invalid_argument("from_slice_point: unit masks must be distinct");
  Multicomplex out(order);
  if (u1 >= out.coeffs.size() || u2 >= out.coeffs.size() || u3 >= out.coeffs.size())
    throw std::invalid_argument("from_slice_point: unit mask out of range for order");
  out.coeffs[u1] = x;
  out.coeffs[u2] = y;
  out.coeffs[u3] = z;
  return out;
}

// Tolerance convention for cross-checks: |got - want| <= tol * (1 + |want|).
inline bool approx_equal(double got, double want, double tol = 1e-12) {
  return std::abs(got - want) <= tol * (1.0 + std::abs(want));
}

inline double rel_error(const Multicomplex& got, const Multicomplex& want) {
  double worst = 0.0;
  for (std::size_t k = 0; k < got.coeffs.size(); ++k) {
    const double e = std::abs(got.coeffs[k] - want.coeffs[k]) / (1.0 + std::abs(want.coeffs[k]));
    if (e > worst) worst = e;
  }
  return worst;
}

inline bool approx_equal(const Multicomplex& got, const Multicomplex& want, double tol = 1e-12) {
  require_same_order(got, want, "approx_equal");
  return rel_error(got, want) <= tol;
}

inline Multicomplex operator+(const Multicomplex& a, const Multicomplex& b) { return add(a, b); }
inline Multicomplex operator-(const Multicomplex& a, const Multicomplex& b) { return sub(a, b); }
inline Multicomplex operator-(const Multicomplex& a) { return neg(a); }
inline Multicomplex operator*(double s, const Multicomplex& a) { return scale(a, s); }

// Default product: idempotent route for order >= 2, direct below.
inline Multicomplex operator*(const Multicomplex& a, const Multicomplex& b) {
  return a.order >= 2 ? mul_idempotent(a, b) : mul_direct(a, b);
}

}  // namespace mcjulia
