#pragma once

// Escape-time evaluation specialized to a principal 3D slice with real c.
//
// A slice point and all of its iterates stay inside the span of the signed
// subset products of the triple's units, so the orbit can be tracked as 4 or
// 8 real coordinates with a fixed sign table: product of subsets i and j
// lands on subset i^j with sign = product of the shared units' squares. The
// coordinate Euclidean norm equals the multicomplex norm because the active
// subset products hit pairwise distinct unit masks in every case.
//
// Coordinates are expressed in the frame of the class representative (slots
// permuted to align unit squares, with a relation-sign correction for closed
// triples), so equivalent slices execute the same instruction stream on the
// same table and agree on escape iterations bit for bit.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mcjulia/dynamics.hpp"
#include "mcjulia/rng.hpp"
#include "mcjulia/slices.hpp"

namespace mcjulia {

class SliceKernel {
 public:
  static SliceKernel make(const SliceTriple& t, int p, double c, int max_iter) {
    if (max_iter < 1) throw std::invalid_argument("SliceKernel: max_iter must be >= 1");
    const SliceClass cls = classify(t, p, c);
    const SliceTriple& rep = cls.canonical_representative;

    SliceKernel k;
    k.tag_ = cls.case_tag;
    k.p_ = p;
    k.p_msb_ = std::bit_width(static_cast<unsigned>(p)) - 1;
    k.max_iter_ = max_iter;
    k.c0_ = c;
    const double r = std::max(std::abs(c), std::pow(2.0, 1.0 / (p - 1)));
    k.radius_sq_ = r * r;

    const std::array<int, 3> perm = detail::align_squares(t.squares(), rep.squares());
    std::array<double, 3> sign{1.0, 1.0, 1.0};
    if (cls.case_tag == CaseTag::OddC_Closed)
      sign[2] = detail::triple_product_sign(t) * detail::triple_product_sign(rep);

    // Representative-side layout: which state slot holds each representative
    // coordinate, and the generator squares that drive the sign table.
    const std::array<int, 3> rs = rep.squares();
    std::array<int, 3> gsq{1, 1, 1};
    std::array<int, 3> rep_slot{};
    std::array<double, 3> rep_coeff{1.0, 1.0, 1.0};
    switch (cls.case_tag) {
      case CaseTag::OddC_ContainsOne:
        // Basis (1, u2, u3, u2u3); the coordinate of unit 1 is the real slot.
        k.dim_ = 4;
        gsq = {rs[1], rs[2], 1};
        rep_slot = {0, 1, 2};
        break;
      case CaseTag::OddC_Closed:
        // Basis (1, u1, u2, u1u2); u3 = tau * (u1 u2) folds onto slot 3.
        k.dim_ = 4;
        gsq = {rs[0], rs[1], 1};
        rep_slot = {1, 2, 3};
        rep_coeff[2] = unit_product(rep.units[0], rep.units[1]).sign;
        break;
      default:
        // Full subset basis of (u1, u2, u3). For even p the orbit lives on
        // the even subsets after one step, for odd p with c = 0 on the odd
        // subsets; the inactive block stays exactly zero either way.
        k.dim_ = 8;
        gsq = rs;
        rep_slot = {1, 2, 4};
        break;
    }
    for (int i = 0; i < 3; ++i) {
      const int j = perm[i];
      k.slot_[i] = rep_slot[static_cast<std::size_t>(j)];
      k.coeff_[i] = sign[i] * rep_coeff[static_cast<std::size_t>(j)];
    }
    for (int i = 0; i < k.dim_; ++i) {
      for (int j = 0; j < k.dim_; ++j) {
        double s = 1.0;
        for (int bit = 0; bit < 3; ++bit)
          if ((static_cast<unsigned>(i & j) >> bit) & 1u) s *= gsq[static_cast<std::size_t>(bit)];
        k.table_[i][j] = s;
      }
    }
    return k;
  }

  EscapeResult escape(double x, double y, double z) const {
    double s[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    s[slot_[0]] = coeff_[0] * x;
    s[slot_[1]] = coeff_[1] * y;
    s[slot_[2]] = coeff_[2] * z;
    for (int m = 1; m <= max_iter_; ++m) {
      power_in_place(s);
      s[0] += c0_;
      double q = 0.0;
      for (int i = 0; i < dim_; ++i) q += s[i] * s[i];
      if (!(q <= radius_sq_)) return {true, m};  // also catches inf/nan
    }
    return {false, 0};
  }

  CaseTag tag() const { return tag_; }
  int dim() const { return dim_; }
  int power() const { return p_; }
  int max_iter() const { return max_iter_; }
  double c0() const { return c0_; }
  double radius_sq() const { return radius_sq_; }
  double table(int i, int j) const { return table_[i][j]; }
  const std::array<int, 3>& slots() const { return slot_; }
  const std::array<double, 3>& coeffs() const { return coeff_; }

 private:
  SliceKernel() = default;

  void mul_state(const double* a, const double* b, double* out) const {
    for (int i = 0; i < dim_; ++i) out[i] = 0.0;
    for (int i = 0; i < dim_; ++i) {
      const double ai = a[i];
      for (int j = 0; j < dim_; ++j) out[i ^ j] += table_[i][j] * ai * b[j];
    }
  }

  // s = s^p by square-and-multiply, most significant exponent bit first; the
  // operation sequence depends only on p, never on the data.
  void power_in_place(double* s) const {
    double base[8], acc[8], tmp[8];
    for (int i = 0; i < dim_; ++i) {
      base[i] = s[i];
      acc[i] = s[i];
    }
    for (int b = p_msb_ - 1; b >= 0; --b) {
      mul_state(acc, acc, tmp);
      for (int i = 0; i < dim_; ++i) acc[i] = tmp[i];
      if ((p_ >> b) & 1) {
        mul_state(acc, base, tmp);
        for (int i = 0; i < dim_; ++i) acc[i] = tmp[i];
      }
    }
    for (int i = 0; i < dim_; ++i) s[i] = acc[i];
  }

  CaseTag tag_ = CaseTag::Even;
  int dim_ = 8;
  int p_ = 2;
  int p_msb_ = 1;
  int max_iter_ = 100;
  double c0_ = 0.0;
  double radius_sq_ = 4.0;
  std::array<int, 3> slot_{1, 2, 4};
  std::array<double, 3> coeff_{1.0, 1.0, 1.0};
  double table_[8][8] = {};
};

struct EquivalenceMismatch {
  double x = 0, y = 0, z = 0;
  EscapeResult source, target;
};

struct EquivalenceReport {
  SliceTriple source, target;
  int p = 2;
  double c = 0.0;
  int max_iter = 100;
  int samples = 0;
  int disagreements = 0;
  std::uint64_t seed = kDefaultSeed;
  std::array<int, 3> perm{0, 1, 2};
  std::array<int, 3> signs{1, 1, 1};
  std::vector<EquivalenceMismatch> mismatches;  // first few recorded verbatim

  bool all_exact() const { return disagreements == 0; }
};

// Samples points uniformly in [-R, R]^3 on the source slice, maps each through
// the signed correspondence, and demands the same escape iteration on both
// sides.
inline EquivalenceReport escape_equivalence_check(const SliceTriple& src, const SliceTriple& dst,
                                                  const DynamicsParams& params, int samples,
                                                  std::uint64_t seed = kDefaultSeed) {
  if (!params.c.is_real())
    throw std::invalid_argument(
        "escape_equivalence_check: c must be real (no classification exists for non-real c)");
  const double c0 = params.c.coeffs[0];
  const PhiMap phi = build_phi(src, dst, params.p, c0);  // rejects class mismatch
  const SliceKernel ksrc = SliceKernel::make(src, params.p, c0, params.max_iter);
  const SliceKernel kdst = SliceKernel::make(dst, params.p, c0, params.max_iter);

  EquivalenceReport report;
  report.source = src;
  report.target = dst;
  report.p = params.p;
  report.c = c0;
  report.max_iter = params.max_iter;
  report.samples = samples;
  report.seed = seed;
  report.perm = phi.perm;
  report.signs = phi.signs;

  Rng rng(seed);
  const double radius = params.escape_radius;
  for (int i = 0; i < samples; ++i) {
    const double x = rng.uniform(-radius, radius);
    const double y = rng.uniform(-radius, radius);
    const double z = rng.uniform(-radius, radius);
    const EscapeResult a = ksrc.escape(x, y, z);
    const std::array<double, 3> q = phi_point(phi, {x, y, z});
    const EscapeResult b = kdst.escape(q[0], q[1], q[2]);
    if (a.escaped != b.escaped || a.escape_iter != b.escape_iter) {
      ++report.disagreements;
      if (report.mismatches.size() < 8) report.mismatches.push_back({x, y, z, a, b});
    }
  }
  return report;
}

}  // namespace mcjulia
