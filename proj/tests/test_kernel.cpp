#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mcjulia/slice_kernel.hpp"
#include "test_support.hpp"

using namespace mcjulia;

namespace {

SliceTriple triple3(UnitMask a, UnitMask b, UnitMask c) { return SliceTriple::make(3, a, b, c); }

std::map<SliceClass, std::vector<SliceTriple>> classes_at(int n, int p, double c) {
  std::map<SliceClass, std::vector<SliceTriple>> out;
  for (const SliceTriple& t : all_triples(n)) out[classify(t, p, c)].push_back(t);
  return out;
}

}  // namespace

TEST_CASE("kernels reproduce the generic escape computation", "[kernel]") {
  Rng rng(43);
  for (auto [p, c0] : {std::pair{2, 0.25}, std::pair{3, 0.0}, std::pair{3, 0.25}}) {
    const DynamicsParams params = DynamicsParams::make(p, Multicomplex::from_real(3, c0), 60);
    const double r = params.escape_radius;
    for (const auto& [cls, members] : classes_at(3, p, c0)) {
      for (std::size_t which = 0; which < members.size() && which < 3; ++which) {
        const SliceTriple& t = members[which];
        const SliceKernel kernel = SliceKernel::make(t, p, c0, 60);
        for (int trial = 0; trial < 120; ++trial) {
          const double x = rng.uniform(-r, r);
          const double y = rng.uniform(-r, r);
          const double z = rng.uniform(-r, r);
          const EscapeResult fast = kernel.escape(x, y, z);
          const EscapeResult slow = escape_time(
              from_slice_point(x, y, z, 3, t.units[0], t.units[1], t.units[2]), params);
          REQUIRE(fast.escaped == slow.escaped);
          REQUIRE(fast.escape_iter == slow.escape_iter);
        }
      }
    }
  }
}

TEST_CASE("equivalent slices share one kernel table", "[kernel]") {
  for (auto [p, c0] : {std::pair{2, 0.25}, std::pair{3, 0.25}}) {
    for (const auto& [cls, members] : classes_at(3, p, c0)) {
      const SliceKernel first = SliceKernel::make(members.front(), p, c0, 50);
      for (const SliceTriple& t : members) {
        const SliceKernel k = SliceKernel::make(t, p, c0, 50);
        REQUIRE(k.dim() == first.dim());
        REQUIRE(k.tag() == first.tag());
        REQUIRE(k.c0() == first.c0());
        REQUIRE(k.radius_sq() == first.radius_sq());
        for (int i = 0; i < k.dim(); ++i)
          for (int j = 0; j < k.dim(); ++j) REQUIRE(k.table(i, j) == first.table(i, j));
      }
    }
  }
}

TEST_CASE("closed pair with opposite relation signs agrees exactly", "[kernel]") {
  // (i1,i2,j1) has i1 i2 = +j1; (i1,i4,j3) has i1 i4 = -j3. The correspondence
  // must flip the third coordinate, and escape behavior still matches 1:1.
  const SliceTriple a = triple3(1, 2, 3);
  const SliceTriple b = triple3(1, 7, 6);
  const DynamicsParams params = DynamicsParams::make(3, Multicomplex::from_real(3, 0.25), 100);

  const PhiMap phi = build_phi(a, b, 3, 0.25);
  REQUIRE(phi.signs == std::array<int, 3>{1, 1, -1});
  REQUIRE(phi.perm == std::array<int, 3>{0, 1, 2});

  const EquivalenceReport report = escape_equivalence_check(a, b, params, 1000);
  REQUIRE(report.samples == 1000);
  REQUIRE(report.all_exact());
  REQUIRE(report.mismatches.empty());
}

TEST_CASE("escape equivalence across every order-3 class", "[kernel]") {
  for (auto [p, c0] : {std::pair{2, 0.25}, std::pair{3, 0.0}, std::pair{3, 0.25}}) {
    const DynamicsParams params = DynamicsParams::make(p, Multicomplex::from_real(3, c0), 80);
    for (const auto& [cls, members] : classes_at(3, p, c0)) {
      for (std::size_t i = 1; i < members.size(); ++i) {
        const EquivalenceReport report =
            escape_equivalence_check(members[0], members[i], params, 100);
        INFO(members[0].name() << " vs " << members[i].name() << " p=" << p << " c=" << c0);
        REQUIRE(report.all_exact());
      }
    }
  }
}

TEST_CASE("kernel membership matches known points", "[kernel]") {
  const SliceKernel k = SliceKernel::make(triple3(0, 1, 2), 2, 0.25, 100);
  REQUIRE_FALSE(k.escape(0.0, 0.0, 0.0).escaped);     // origin sits in the set
  REQUIRE_FALSE(k.escape(0.1, 0.05, -0.05).escaped);  // small interior perturbation
  const EscapeResult corner = k.escape(2.1, 0.0, 0.0);
  REQUIRE(corner.escaped);
  REQUIRE(corner.escape_iter == 1);
}

TEST_CASE("kernel construction rejects bad parameters", "[kernel]") {
  REQUIRE_THROWS_AS(SliceKernel::make(triple3(0, 1, 2), 2, 0.25, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(SliceKernel::make(triple3(0, 1, 2), 1, 0.25, 10), std::invalid_argument);

  const DynamicsParams params = DynamicsParams::make(2, Multicomplex::from_unit(3, 1), 50);
  REQUIRE_THROWS_AS(escape_equivalence_check(triple3(0, 1, 2), triple3(0, 1, 4), params, 10),
                    std::invalid_argument);
}
