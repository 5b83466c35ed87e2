#pragma once

// Principal 3D slices T^p(u1,u2,u3): canonical ordering, structural flags,
// the L/M/S iterate spaces, equivalence classification, and the explicit
// signed basis correspondence (phi) between equivalent slices.
//
// Classification is driven by an invariant signature: parity of p, whether c
// is zero, whether the triple contains 1, whether some pair of units
// multiplies to +-the third (closure), and the multiset of unit squares.
// build_phi then produces a concrete witness map and checks it is
// multiplicative, so the signature-based classes are backed by evidence.

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <array>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcjulia/dynamics.hpp"
#include "mcjulia/multicomplex.hpp"
#include "mcjulia/rng.hpp"
#include "mcjulia/units.hpp"

namespace mcjulia {

struct SliceTriple {
  int order = 3;
  std::array<UnitMask, 3> units{0, 1, 2};  // canonical order

  // Canonical order: 1 first, then imaginary units, then hyperbolic units;
  // ascending mask within a nature.
  static SliceTriple make(int order, UnitMask a, UnitMask b, UnitMask c) {
    if (order < 3) throw std::invalid_argument("SliceTriple: ambient order must be >= 3");
    Multicomplex::check_order(order);
    const UnitMask limit = UnitMask{1} << order;
    if (a >= limit || b >= limit || c >= limit)
      throw std::invalid_argument("SliceTriple: unit mask out of range for order");
    if (a == b || a == c || b == c)
      throw std::invalid_argument("SliceTriple: unit masks must be pairwise distinct");
    std::array<UnitMask, 3> u{a, b, c};
    std::sort(u.begin(), u.end(), unit_less);
    return SliceTriple{order, u};
  }

  bool contains_one() const { return units[0] == 0; }

  std::array<int, 3> squares() const {
    return {unit_square_sign(units[0]), unit_square_sign(units[1]), unit_square_sign(units[2])};
  }

  std::string name() const {
    return "T(" + unit_name(units[0]) + "," + unit_name(units[1]) + "," + unit_name(units[2]) + ")";
  }

  friend bool operator==(const SliceTriple&, const SliceTriple&) = default;
  friend bool operator<(const SliceTriple& a, const SliceTriple& b) {
    if (a.order != b.order) return a.order < b.order;
    return a.units < b.units;
  }
};

inline SliceTriple canonical_order(const SliceTriple& t) {
  return SliceTriple::make(t.order, t.units[0], t.units[1], t.units[2]);
}

// True iff some pair's product is +-the third unit. Since masks xor, the
// three pairings close together: m1^m2 = m3 <=> m1^m2^m3 = 0.
inline bool closure_flag(const SliceTriple& t) {
  return (t.units[0] ^ t.units[1] ^ t.units[2]) == 0;
}

enum class SpaceKind { L, M, S };

inline const char* space_kind_name(SpaceKind k) {
  switch (k) {
    case SpaceKind::L: return "L";
    case SpaceKind::M: return "M";
    default: return "S";
  }
}

namespace detail {

// Product of the chosen units over a 3-bit subset; bit k selects units[k].
inline SignedUnit subset_product(const std::array<SignedUnit, 3>& gens, unsigned sigma) {
  SignedUnit acc{1, 0};
  for (int k = 0; k < 3; ++k)
    if (sigma >> k & 1u) acc = unit_product(acc, gens[k]);
  return acc;
}

inline std::array<SignedUnit, 3> plain_gens(const SliceTriple& t) {
  return {SignedUnit{1, t.units[0]}, SignedUnit{1, t.units[1]}, SignedUnit{1, t.units[2]}};
}

// Sign of the product u1*u2*u3.
inline int triple_product_sign(const SliceTriple& t) {
  return subset_product(plain_gens(t), 7u).sign;
}

// Subsets with even popcount span L, odd popcount span M, all of them span S.
inline std::vector<unsigned> kind_subsets(SpaceKind k) {
  switch (k) {
    case SpaceKind::L: return {0u, 3u, 5u, 6u};
    case SpaceKind::M: return {1u, 2u, 4u, 7u};
    default: return {0u, 1u, 2u, 3u, 4u, 5u, 6u, 7u};
  }
}

}  // namespace detail

struct IterateSpace {
  SpaceKind kind = SpaceKind::L;
  std::vector<SignedUnit> basis;  // subset products of the triple's units
};

// Span of all iterates of points in the slice:
//   p even           -> L = {1, u1u2, u1u3, u2u3}
//   p odd, c = 0     -> M = {u1, u2, u3, u1u2u3}
//   p odd, c != 0    -> M if 1 in the triple or the triple closes, else S
inline IterateSpace iterate_space(const SliceTriple& t, int p, bool c_is_zero) {
  if (p < 2) throw std::invalid_argument("iterate_space: power must be >= 2");
  SpaceKind kind;
  if (p % 2 == 0) {
    kind = SpaceKind::L;
  } else if (c_is_zero || t.contains_one() || closure_flag(t)) {
    kind = SpaceKind::M;
  } else {
    kind = SpaceKind::S;
  }
  const auto gens = detail::plain_gens(t);
  IterateSpace space{kind, {}};
  for (unsigned sigma : detail::kind_subsets(kind))
    space.basis.push_back(detail::subset_product(gens, sigma));
  return space;
}

enum class CaseTag { Even, OddCZero, OddC_ContainsOne, OddC_Closed, OddC_Open };

inline const char* case_tag_name(CaseTag tag) {
  switch (tag) {
    case CaseTag::Even: return "Even";
    case CaseTag::OddCZero: return "OddCZero";
    case CaseTag::OddC_ContainsOne: return "OddC_ContainsOne";
    case CaseTag::OddC_Closed: return "OddC_Closed";
    default: return "OddC_Open";
  }
}

struct SliceClass {
  CaseTag case_tag = CaseTag::Even;
  std::array<int, 3> square_multiset{1, 1, 1};  // sorted ascending, -1 before +1
  SliceTriple canonical_representative;

  friend bool operator==(const SliceClass& a, const SliceClass& b) {
    return a.case_tag == b.case_tag && a.square_multiset == b.square_multiset;
  }
  friend bool operator<(const SliceClass& a, const SliceClass& b) {
    if (a.case_tag != b.case_tag) return a.case_tag < b.case_tag;
    return a.square_multiset < b.square_multiset;
  }
};

namespace detail {

// Fixed representatives per (case, square multiset); every slot classifies
// back to its own class. All live at order 3 except the open {+,+,+} class,
// which has no order-3 member and is represented at order 4.
inline SliceTriple class_representative(CaseTag tag, const std::array<int, 3>& ms) {
  const std::array<int, 3> ppp{1, 1, 1}, mpp{-1, 1, 1}, mmp{-1, -1, 1}, mmm{-1, -1, -1};
  switch (tag) {
    case CaseTag::Even:
    case CaseTag::OddCZero:
      if (ms == ppp) return SliceTriple::make(3, 0, 3, 5);   // (1, j1, j2)
      if (ms == mpp) return SliceTriple::make(3, 0, 1, 3);   // (1, i1, j1)
      if (ms == mmp) return SliceTriple::make(3, 0, 1, 2);   // (1, i1, i2)
      if (ms == mmm) return SliceTriple::make(3, 1, 2, 4);   // (i1, i2, i3)
      break;
    case CaseTag::OddC_ContainsOne:
      if (ms == ppp) return SliceTriple::make(3, 0, 3, 5);   // (1, j1, j2)
      if (ms == mpp) return SliceTriple::make(3, 0, 1, 3);   // (1, i1, j1)
      if (ms == mmp) return SliceTriple::make(3, 0, 1, 2);   // (1, i1, i2)
      break;
    case CaseTag::OddC_Closed:
      if (ms == ppp) return SliceTriple::make(3, 3, 5, 6);   // (j1, j2, j3)
      if (ms == mmp) return SliceTriple::make(3, 1, 2, 3);   // (i1, i2, j1)
      break;
    case CaseTag::OddC_Open:
      if (ms == mmm) return SliceTriple::make(3, 1, 2, 4);   // (i1, i2, i3)
      if (ms == mmp) return SliceTriple::make(3, 1, 2, 5);   // (i1, i2, j2)
      if (ms == mpp) return SliceTriple::make(3, 1, 3, 5);   // (i1, j1, j2)
      if (ms == ppp) return SliceTriple::make(4, 3, 5, 9);   // (i1i2, i1i3, i1i4)
      break;
  }
  throw std::logic_error("class_representative: no class with this signature");
}

}  // namespace detail

inline SliceClass classify(const SliceTriple& t, int p, double c) {
  if (p < 2) throw std::invalid_argument("classify: power must be >= 2");
  CaseTag tag;
  if (p % 2 == 0) {
    tag = CaseTag::Even;
  } else if (c == 0.0) {
    tag = CaseTag::OddCZero;
  } else if (t.contains_one()) {
    tag = CaseTag::OddC_ContainsOne;
  } else if (closure_flag(t)) {
    tag = CaseTag::OddC_Closed;
  } else {
    tag = CaseTag::OddC_Open;
  }
  std::array<int, 3> ms = t.squares();
  std::sort(ms.begin(), ms.end());
  return SliceClass{tag, ms, detail::class_representative(tag, ms)};
}

// Slice classes are only defined for a real parameter; a multicomplex c is
// accepted only when it is real.
inline SliceClass classify(const SliceTriple& t, int p, const Multicomplex& c) {
  if (!c.is_real())
    throw std::invalid_argument("classify: c must be real (no classification exists for non-real c)");
  return classify(t, p, c.coeffs[0]);
}

// Human-readable labels, e.g. "T(i1,j1,j2)". The open {-,+,+} class carries a
// second label, T(i1,i2,j2), retained for cross-referencing.
inline std::vector<std::string> class_labels(const SliceClass& cls) {
  std::vector<std::string> labels{cls.canonical_representative.name()};
  if (cls.case_tag == CaseTag::OddC_Open && cls.square_multiset == std::array<int, 3>{-1, 1, 1})
    labels.push_back("T(i1,i2,j2)");
  return labels;
}

inline std::vector<SliceTriple> all_triples(int n) {
  if (n < 3) throw std::invalid_argument("all_triples: order must be >= 3");
  if (n > 10) throw std::invalid_argument("all_triples: order above 10 not supported (enumeration too large)");
  const UnitMask limit = UnitMask{1} << n;
  std::vector<SliceTriple> out;
  out.reserve(static_cast<std::size_t>(limit) * (limit - 1) * (limit - 2) / 6);
  for (UnitMask a = 0; a < limit; ++a)
    for (UnitMask b = a + 1; b < limit; ++b)
      for (UnitMask c = b + 1; c < limit; ++c) out.push_back(SliceTriple::make(n, a, b, c));
  return out;
}

inline int class_count(int n, int p, double c) {
  std::set<SliceClass> seen;
  for (const SliceTriple& t : all_triples(n)) seen.insert(classify(t, p, c));
  return static_cast<int>(seen.size());
}

inline std::vector<SliceTriple> class_members(int n, int p, double c, const SliceClass& cls) {
  std::vector<SliceTriple> out;
  for (const SliceTriple& t : all_triples(n))
    if (classify(t, p, c) == cls) out.push_back(t);
  return out;
}

// The correspondence between two equivalent slices. Coordinate k of the
// source slice maps to coordinate perm[k] of the target with sign signs[k];
// on the iterate spaces the map sends the k-th source basis element to the
// k-th target basis element.
struct PhiMap {
  SliceTriple source, target;
  SpaceKind kind = SpaceKind::L;
  std::array<int, 3> perm{0, 1, 2};
  std::array<int, 3> signs{1, 1, 1};
  std::vector<SignedUnit> source_basis, target_basis;
};

inline std::array<double, 3> phi_point(const PhiMap& phi, const std::array<double, 3>& xyz) {
  std::array<double, 3> out{0.0, 0.0, 0.0};
  for (int k = 0; k < 3; ++k) out[static_cast<std::size_t>(phi.perm[k])] = phi.signs[k] * xyz[k];
  return out;
}

namespace detail {

// Slot alignment between equal square multisets: slot k goes to the first
// unused target slot with the same square. Canonical order groups squares by
// nature, so this is the unique order-preserving matching per square value.
inline std::array<int, 3> align_squares(const std::array<int, 3>& src, const std::array<int, 3>& dst) {
  std::array<int, 3> perm{-1, -1, -1};
  std::array<bool, 3> used{false, false, false};
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < 3; ++j) {
      if (!used[j] && dst[j] == src[k]) {
        perm[k] = j;
        used[j] = true;
        break;
      }
    }
    if (perm[k] < 0) throw std::logic_error("align_squares: square multisets differ");
  }
  return perm;
}

}  // namespace detail

// Verifies that the signed generator correspondence multiplies consistently:
// for every pair of subset products, the reduction sign on the source side
// equals the one on the target side. This is exactly the condition that makes
// the coordinate dynamics of the two slices identical.
inline bool phi_multiplicative(const PhiMap& phi) {
  const auto src_gens = detail::plain_gens(phi.source);
  std::array<SignedUnit, 3> dst_gens;
  for (int k = 0; k < 3; ++k)
    dst_gens[k] = SignedUnit{phi.signs[k], phi.target.units[static_cast<std::size_t>(phi.perm[k])]};
  std::array<SignedUnit, 8> se, de;
  for (unsigned s = 0; s < 8; ++s) {
    se[s] = detail::subset_product(src_gens, s);
    de[s] = detail::subset_product(dst_gens, s);
  }
  for (unsigned i = 0; i < 8; ++i) {
    for (unsigned j = 0; j < 8; ++j) {
      const SignedUnit ps = unit_product(se[i], se[j]);
      const SignedUnit pd = unit_product(de[i], de[j]);
      if (ps.mask != se[i ^ j].mask || pd.mask != de[i ^ j].mask) return false;
      if (ps.sign * se[i ^ j].sign != pd.sign * de[i ^ j].sign) return false;
    }
  }
  return true;
}

inline PhiMap build_phi(const SliceTriple& src, const SliceTriple& dst, int p, double c) {
  const SliceClass cs = classify(src, p, c);
  const SliceClass cd = classify(dst, p, c);
  if (!(cs == cd))
    throw std::invalid_argument("build_phi: slices are not equivalent (different classes)");

  PhiMap phi;
  phi.source = src;
  phi.target = dst;
  phi.perm = detail::align_squares(src.squares(), dst.squares());
  phi.signs = {1, 1, 1};
  // Closed triples satisfy u1u2 = +-u3; when c != 0 the orbit leaves the pure
  // triple span and the relation sign becomes dynamical, so the third
  // coordinate picks up the product of the two relation signs. With c = 0 the
  // odd and even coefficient blocks never mix and the identity correspondence
  // is already exact.
  if (cs.case_tag == CaseTag::OddC_Closed)
    phi.signs[2] = detail::triple_product_sign(src) * detail::triple_product_sign(dst);

  switch (cs.case_tag) {
    case CaseTag::Even: phi.kind = SpaceKind::L; break;
    case CaseTag::OddC_Open: phi.kind = SpaceKind::S; break;
    default: phi.kind = SpaceKind::M; break;
  }
  const auto src_gens = detail::plain_gens(src);
  std::array<SignedUnit, 3> dst_gens;
  for (int k = 0; k < 3; ++k)
    dst_gens[k] = SignedUnit{phi.signs[k], dst.units[static_cast<std::size_t>(phi.perm[k])]};
  for (unsigned sigma : detail::kind_subsets(phi.kind)) {
    phi.source_basis.push_back(detail::subset_product(src_gens, sigma));
    phi.target_basis.push_back(detail::subset_product(dst_gens, sigma));
  }
  if (!phi_multiplicative(phi))
    throw std::runtime_error("build_phi: constructed map failed the multiplicativity check");
  return phi;
}

// Brute-force evidence for the iterate-space prediction: random unit-norm
// slice points are iterated with full multicomplex arithmetic; every iterate
// must be supported on the predicted basis masks, and the collected iterates
// must span the whole predicted space.
struct SpanReport {
  SliceTriple triple;
  int p = 2;
  double c = 0.0;
  SpaceKind kind = SpaceKind::L;
  int expected_dim = 4;
  int seeds = 20;
  std::uint64_t seed = kDefaultSeed;
  double max_residual = 0.0;
  int rank = 0;

  bool contained() const { return max_residual <= 1e-10; }
  bool full_rank() const { return rank == expected_dim; }
  bool passed() const { return contained() && full_rank(); }
};

inline SpanReport iterate_span_check(const SliceTriple& t, int p, double c, int seeds = 20,
                                     std::uint64_t seed = kDefaultSeed) {
  const IterateSpace space = iterate_space(t, p, c == 0.0);
  SpanReport report;
  report.triple = t;
  report.p = p;
  report.c = c;
  report.kind = space.kind;
  report.expected_dim = static_cast<int>(space.basis.size());
  report.seeds = seeds;
  report.seed = seed;

  const std::size_t ncoeff = std::size_t{1} << t.order;
  std::vector<bool> in_basis(ncoeff, false);
  for (const SignedUnit& b : space.basis) in_basis[b.mask] = true;

  const DynamicsParams params = DynamicsParams::make(p, Multicomplex::from_real(t.order, c), 3);
  Rng rng(seed);
  const int iterates_per_seed = 3;
  Eigen::MatrixXd rows(seeds * iterates_per_seed, static_cast<Eigen::Index>(ncoeff));
  int row = 0;
  for (int s = 0; s < seeds; ++s) {
    double x = rng.uniform(-1.0, 1.0), y = rng.uniform(-1.0, 1.0), z = rng.uniform(-1.0, 1.0);
    const double r = std::sqrt(x * x + y * y + z * z);
    if (r > 0.0) {
      x /= r;
      y /= r;
      z /= r;
    }
    Multicomplex zeta = from_slice_point(x, y, z, t.order, t.units[0], t.units[1], t.units[2]);
    for (int m = 0; m < iterates_per_seed; ++m) {
      zeta = iterate_once(zeta, params);
      double residual_sq = 0.0;
      for (std::size_t k = 0; k < ncoeff; ++k) {
        rows(row, static_cast<Eigen::Index>(k)) = zeta.coeffs[k];
        if (!in_basis[k]) residual_sq += zeta.coeffs[k] * zeta.coeffs[k];
      }
      report.max_residual = std::max(report.max_residual, std::sqrt(residual_sq));
      ++row;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows);
  const auto& sv = svd.singularValues();
  if (sv.size() > 0) {
    const double cutoff = 1e-8 * sv(0);
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > cutoff) ++report.rank;
  }
  return report;
}

}  // namespace mcjulia
