#pragma once

// Voxel rendering of a principal 3D slice: sample every voxel center in a
// box, record the escape iteration (or a member sentinel) as a 16-bit code.
// Work is partitioned over z-planes; every voxel is independent, so the
// result is byte-identical for any worker count.

#include <array>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "mcjulia/dynamics.hpp"
#include "mcjulia/slice_kernel.hpp"

namespace mcjulia {

inline constexpr std::uint16_t kMemberCode = 0xFFFF;
inline constexpr int kMaxRenderIter = 0xFFFE;
inline constexpr std::uint64_t kMaxVoxels = std::uint64_t{1} << 28;  // 512 MiB of codes

struct GridSpec {
  std::array<std::uint32_t, 3> dims{128, 128, 128};
  std::array<double, 6> bounds{-2.0, 2.0, -2.0, 2.0, -2.0, 2.0};  // xmin,xmax,ymin,ymax,zmin,zmax

  static GridSpec centered(double radius, std::uint32_t nx, std::uint32_t ny, std::uint32_t nz) {
    return GridSpec{{nx, ny, nz}, {-radius, radius, -radius, radius, -radius, radius}};
  }

  std::uint64_t voxel_count() const { return std::uint64_t{dims[0]} * dims[1] * dims[2]; }

  // Voxel centers: midpoint + step * (i + 0.5 - n/2). With symmetric bounds
  // the midpoint is exactly zero and index mirroring negates the coordinate
  // exactly, which keeps mirror symmetries of the set exact on the grid.
  double center(int axis, std::uint32_t index) const {
    const double lo = bounds[static_cast<std::size_t>(2 * axis)];
    const double hi = bounds[static_cast<std::size_t>(2 * axis + 1)];
    const double mid = 0.5 * (lo + hi);
    const double step = (hi - lo) / dims[static_cast<std::size_t>(axis)];
    return mid + step * (index + 0.5 - 0.5 * dims[static_cast<std::size_t>(axis)]);
  }

  void validate() const {
    for (int a = 0; a < 3; ++a) {
      if (dims[static_cast<std::size_t>(a)] < 1)
        throw std::invalid_argument("GridSpec: dims must be >= 1 on every axis");
      if (!(bounds[static_cast<std::size_t>(2 * a)] < bounds[static_cast<std::size_t>(2 * a + 1)]))
        throw std::invalid_argument("GridSpec: each axis needs min < max");
    }
    if (voxel_count() > kMaxVoxels)
      throw std::invalid_argument("GridSpec: grid exceeds the memory budget (2^28 voxels)");
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct VoxelGrid {
  GridSpec spec;
  SliceTriple triple;
  int p = 2;
  Multicomplex c;
  int max_iter = 100;
  std::vector<std::uint16_t> codes;  // x-fastest, then y, then z

  std::size_t index(std::uint32_t ix, std::uint32_t iy, std::uint32_t iz) const {
    return (std::size_t{iz} * spec.dims[1] + iy) * spec.dims[0] + ix;
  }
  std::uint16_t at(std::uint32_t ix, std::uint32_t iy, std::uint32_t iz) const {
    return codes[index(ix, iy, iz)];
  }
  std::uint64_t member_count() const {
    std::uint64_t n = 0;
    for (std::uint16_t v : codes) n += (v == kMemberCode);
    return n;
  }

  friend bool operator==(const VoxelGrid&, const VoxelGrid&) = default;
};

inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MCJULIA_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

// workers = 0 picks MCJULIA_WORKERS or the hardware thread count.
inline VoxelGrid render_slice(const SliceTriple& t, const DynamicsParams& params,
                              const GridSpec& spec, int workers = 0) {
  spec.validate();
  if (params.max_iter > kMaxRenderIter)
    throw std::invalid_argument("render_slice: max_iter above 65534 does not fit 16-bit escape codes");
  if (params.c.order != t.order)
    throw std::invalid_argument("render_slice: c order does not match the slice's ambient order");

  VoxelGrid grid{spec, t, params.p, params.c, params.max_iter, {}};
  grid.codes.assign(spec.voxel_count(), 0);

  // Real c admits the coordinate kernel; otherwise fall back to full
  // multicomplex iteration per voxel.
  std::optional<SliceKernel> kernel;
  if (params.c.is_real())
    kernel.emplace(SliceKernel::make(t, params.p, params.c.coeffs[0], params.max_iter));

  const auto render_plane = [&](std::uint32_t iz) {
    const double z = spec.center(2, iz);
    std::size_t at = std::size_t{iz} * spec.dims[1] * spec.dims[0];
    for (std::uint32_t iy = 0; iy < spec.dims[1]; ++iy) {
      const double y = spec.center(1, iy);
      for (std::uint32_t ix = 0; ix < spec.dims[0]; ++ix, ++at) {
        const double x = spec.center(0, ix);
        const EscapeResult r =
            kernel ? kernel->escape(x, y, z)
                   : escape_time(from_slice_point(x, y, z, t.order, t.units[0], t.units[1],
                                                  t.units[2]),
                                 params);
        grid.codes[at] = r.escaped ? static_cast<std::uint16_t>(r.escape_iter) : kMemberCode;
      }
    }
  };

  const std::uint32_t nz = spec.dims[2];
  const std::uint32_t nworkers = std::min<std::uint32_t>(
      static_cast<std::uint32_t>(resolve_workers(workers)), nz);
  if (nworkers <= 1) {
    for (std::uint32_t iz = 0; iz < nz; ++iz) render_plane(iz);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (std::uint32_t w = 0; w < nworkers; ++w)
      pool.emplace_back([&render_plane, w, nworkers, nz] {
        for (std::uint32_t iz = w; iz < nz; iz += nworkers) render_plane(iz);
      });
    for (auto& th : pool) th.join();
  }
  return grid;
}

}  // namespace mcjulia
