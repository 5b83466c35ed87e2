#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>

#include "mcjulia/formats.hpp"
#include "mcjulia/renderer.hpp"

using namespace mcjulia;

namespace {

SliceTriple triple3(UnitMask a, UnitMask b, UnitMask c) { return SliceTriple::make(3, a, b, c); }

DynamicsParams real_params(int p, double c0, int iters) {
  return DynamicsParams::make(p, Multicomplex::from_real(3, c0), iters);
}

GridSpec cube(std::uint32_t n, double radius) { return GridSpec::centered(radius, n, n, n); }

}  // namespace

TEST_CASE("voxel centers are symmetric midpoints", "[renderer]") {
  const GridSpec spec = cube(4, 2.0);
  REQUIRE(spec.center(0, 0) == -1.5);
  REQUIRE(spec.center(0, 3) == 1.5);
  REQUIRE(spec.center(1, 1) == -0.5);
  for (std::uint32_t i = 0; i < 4; ++i)
    REQUIRE(spec.center(0, i) == -spec.center(0, 3 - i));  // exact sign symmetry

  const GridSpec one = cube(1, 2.0);
  REQUIRE(one.center(2, 0) == 0.0);

  GridSpec bad = cube(3, 2.0);
  bad.dims[1] = 0;
  REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cube(3, 2.0);
  bad.bounds[1] = bad.bounds[0];
  REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = GridSpec{{2048, 2048, 1024}, {-1, 1, -1, 1, -1, 1}};
  REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);  // over the voxel budget
}

TEST_CASE("single voxel grid classifies the origin", "[renderer]") {
  const VoxelGrid g = render_slice(triple3(0, 1, 2), real_params(2, 0.25, 50), cube(1, 2.0));
  REQUIRE(g.codes.size() == 1);
  REQUIRE(g.at(0, 0, 0) == kMemberCode);
  REQUIRE(g.member_count() == 1);
}

TEST_CASE("corner voxels of a coarse grid escape immediately", "[renderer]") {
  const VoxelGrid g = render_slice(triple3(0, 1, 2), real_params(2, 0.25, 50), cube(3, 2.0));
  REQUIRE(g.at(1, 1, 1) == kMemberCode);  // center voxel is the origin
  REQUIRE(g.at(2, 2, 2) == 1);            // center (4/3, 4/3, 4/3) blows up in one step
  REQUIRE(g.at(0, 0, 0) == 1);
}

TEST_CASE("renders are mirror symmetric and worker independent", "[renderer]") {
  const DynamicsParams params = real_params(2, 0.25, 60);
  const GridSpec spec = cube(17, 2.0);
  const VoxelGrid g1 = render_slice(triple3(0, 1, 2), params, spec, 1);
  const VoxelGrid g2 = render_slice(triple3(0, 1, 2), params, spec, 2);
  const VoxelGrid g5 = render_slice(triple3(0, 1, 2), params, spec, 5);
  const VoxelGrid g8 = render_slice(triple3(0, 1, 2), params, spec, 8);
  REQUIRE(g1.codes == g2.codes);
  REQUIRE(g1.codes == g5.codes);
  REQUIRE(g1.codes == g8.codes);

  for (std::uint32_t iz = 0; iz < 17; ++iz)
    for (std::uint32_t iy = 0; iy < 17; ++iy)
      for (std::uint32_t ix = 0; ix < 17; ++ix) {
        REQUIRE(g1.at(ix, iy, iz) == g1.at(16 - ix, iy, iz));  // even power: x sign flip
        REQUIRE(g1.at(ix, iy, iz) == g1.at(ix, 16 - iy, iz));  // i1 conjugation
        REQUIRE(g1.at(ix, iy, iz) == g1.at(ix, iy, 16 - iz));  // i2 conjugation
      }
}

TEST_CASE("deeper iteration only removes members", "[renderer]") {
  const GridSpec spec = cube(9, 2.0);
  const VoxelGrid shallow = render_slice(triple3(0, 1, 2), real_params(2, 0.25, 40), spec);
  const VoxelGrid deep = render_slice(triple3(0, 1, 2), real_params(2, 0.25, 80), spec);
  REQUIRE(deep.member_count() <= shallow.member_count());
  for (std::size_t k = 0; k < deep.codes.size(); ++k) {
    if (deep.codes[k] == kMemberCode) REQUIRE(shallow.codes[k] == kMemberCode);
    if (shallow.codes[k] != kMemberCode) REQUIRE(deep.codes[k] == shallow.codes[k]);
  }
}

TEST_CASE("kernel and generic paths agree per voxel", "[renderer]") {
  // Real c runs the class kernel; the oracle loop runs full multicomplex
  // arithmetic through escape_time.
  const SliceTriple t = triple3(1, 2, 3);
  const DynamicsParams params = real_params(3, 0.25, 50);
  const VoxelGrid g = render_slice(t, params, cube(7, params.escape_radius));
  for (std::uint32_t iz = 0; iz < 7; ++iz)
    for (std::uint32_t iy = 0; iy < 7; ++iy)
      for (std::uint32_t ix = 0; ix < 7; ++ix) {
        const Multicomplex z =
            from_slice_point(g.spec.center(0, ix), g.spec.center(1, iy), g.spec.center(2, iz),
                             3, t.units[0], t.units[1], t.units[2]);
        const EscapeResult e = escape_time(z, params);
        const std::uint16_t want =
            e.escaped ? static_cast<std::uint16_t>(e.escape_iter) : kMemberCode;
        REQUIRE(g.at(ix, iy, iz) == want);
      }
}

TEST_CASE("non-real c renders through the generic path", "[renderer]") {
  Multicomplex c = Multicomplex::from_real(3, 0.2);
  c.coeffs[1] = 0.1;
  const DynamicsParams params = DynamicsParams::make(2, c, 40);
  const SliceTriple t = triple3(0, 1, 2);
  const VoxelGrid g = render_slice(t, params, cube(5, params.escape_radius), 3);
  for (std::uint32_t iz = 0; iz < 5; ++iz)
    for (std::uint32_t iy = 0; iy < 5; ++iy)
      for (std::uint32_t ix = 0; ix < 5; ++ix) {
        const Multicomplex z =
            from_slice_point(g.spec.center(0, ix), g.spec.center(1, iy), g.spec.center(2, iz),
                             3, t.units[0], t.units[1], t.units[2]);
        const EscapeResult e = escape_time(z, params);
        const std::uint16_t want =
            e.escaped ? static_cast<std::uint16_t>(e.escape_iter) : kMemberCode;
        REQUIRE(g.at(ix, iy, iz) == want);
      }
}

TEST_CASE("equivalent slices render matching grids", "[renderer]") {
  const DynamicsParams params = real_params(3, 0.25, 60);
  const GridSpec spec = cube(9, params.escape_radius);

  // Same class, identity correspondence: byte-identical grids.
  const VoxelGrid a = render_slice(triple3(1, 2, 5), params, spec);
  const VoxelGrid b = render_slice(triple3(1, 2, 6), params, spec);
  REQUIRE(a.codes == b.codes);

  // Opposite closure signs: the third axis mirrors, everything else matches.
  const VoxelGrid c1 = render_slice(triple3(1, 2, 3), params, spec);
  const VoxelGrid c2 = render_slice(triple3(1, 7, 6), params, spec);
  for (std::uint32_t iz = 0; iz < 9; ++iz)
    for (std::uint32_t iy = 0; iy < 9; ++iy)
      for (std::uint32_t ix = 0; ix < 9; ++ix)
        REQUIRE(c1.at(ix, iy, iz) == c2.at(ix, iy, 8 - iz));
}

TEST_CASE("worker resolution", "[renderer]") {
  REQUIRE(resolve_workers(3) == 3);
  setenv("MCJULIA_WORKERS", "2", 1);
  REQUIRE(resolve_workers(0) == 2);
  setenv("MCJULIA_WORKERS", "junk", 1);
  REQUIRE(resolve_workers(0) >= 1);
  unsetenv("MCJULIA_WORKERS");
  REQUIRE(resolve_workers(0) >= 1);
}

TEST_CASE("render guards", "[renderer]") {
  REQUIRE_THROWS_AS(render_slice(triple3(0, 1, 2), real_params(2, 0.25, 65535), cube(3, 2.0)),
                    std::invalid_argument);
  const DynamicsParams mismatched =
      DynamicsParams::make(2, Multicomplex::from_real(4, 0.25), 50);
  REQUIRE_THROWS_AS(render_slice(triple3(0, 1, 2), mismatched, cube(3, 2.0)),
                    std::invalid_argument);
}

TEST_CASE("mcvox round-trips bit for bit", "[renderer]") {
  Multicomplex c = Multicomplex::from_real(3, 0.25);
  c.coeffs[5] = -0.125;
  const DynamicsParams params = DynamicsParams::make(3, c, 30);
  const VoxelGrid g = render_slice(triple3(1, 3, 6), params, cube(6, params.escape_radius));

  const std::string path = "roundtrip_test.mcvox";
  write_mcvox(g, path);
  const VoxelGrid back = read_mcvox(path);
  REQUIRE(back.spec == g.spec);
  REQUIRE(back.triple == g.triple);
  REQUIRE(back.p == g.p);
  REQUIRE(back.c == g.c);
  REQUIRE(back.max_iter == g.max_iter);
  REQUIRE(back.codes == g.codes);

  // 7 magic + version + order + p + N + 8 c coeffs + 3 units + dims + bounds + codes.
  const std::string raw = detail::read_file(path);
  REQUIRE(raw.size() == 7 + 1 + 1 + 1 + 2 + 8 * 8 + 3 + 12 + 48 + 2 * g.codes.size());
  std::remove(path.c_str());

  REQUIRE_THROWS_AS(read_mcvox("does_not_exist.mcvox"), std::runtime_error);
}

TEST_CASE("ply export lists member centers", "[renderer]") {
  const VoxelGrid g = render_slice(triple3(0, 1, 2), real_params(2, 0.25, 40), cube(5, 2.0));
  const std::string path = "points_test.ply";
  write_ply_points(g, path);

  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);
  REQUIRE(line == "ply");
  std::uint64_t vertex_count = 0;
  std::uint64_t body_lines = 0;
  bool in_body = false;
  while (std::getline(in, line)) {
    if (in_body) {
      ++body_lines;
    } else if (line.rfind("element vertex ", 0) == 0) {
      vertex_count = std::stoull(line.substr(15));
    } else if (line == "end_header") {
      in_body = true;
    }
  }
  REQUIRE(vertex_count == g.member_count());
  REQUIRE(body_lines == vertex_count);
  std::remove(path.c_str());
}

TEST_CASE("pgm stack writes one plane per z", "[renderer]") {
  const VoxelGrid g = render_slice(triple3(0, 1, 2), real_params(2, 0.25, 40), cube(4, 2.0));
  const std::string path = "stack_test.pgm";
  write_pgm_stack(g, path);
  for (std::uint32_t iz = 0; iz < 4; ++iz) {
    const std::string plane = detail::plane_path(path, iz);
    REQUIRE(plane == "stack_test_z000" + std::to_string(iz) + ".pgm");
    const std::string raw = detail::read_file(plane);
    REQUIRE(raw.rfind("P5\n4 4\n255\n", 0) == 0);
    REQUIRE(raw.size() == 11 + 16);
    std::remove(plane.c_str());
  }
  REQUIRE(detail::plane_path("noext", 3) == "noext_z0003");
  REQUIRE(detail::plane_path("a.dir/stack", 1) == "a.dir/stack_z0001");
}
