#pragma once

// Grid export/import. MCVOX is the lossless native format (explicit
// little-endian layout, round-trips bit-exactly); PLY_POINTS writes member
// voxel centers as an ASCII point cloud; PGM_STACK writes one 8-bit grayscale
// image per z-plane.

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mcjulia/renderer.hpp"

namespace mcjulia {

enum class ExportFormat { MCVOX, PLY_POINTS, PGM_STACK };

inline std::optional<ExportFormat> parse_format(std::string_view s) {
  if (s == "mcvox") return ExportFormat::MCVOX;
  if (s == "ply") return ExportFormat::PLY_POINTS;
  if (s == "pgm") return ExportFormat::PGM_STACK;
  return std::nullopt;
}

inline const char* format_extension(ExportFormat f) {
  switch (f) {
    case ExportFormat::MCVOX: return ".mcvox";
    case ExportFormat::PLY_POINTS: return ".ply";
    default: return ".pgm";
  }
}

namespace detail {

inline void put_u8(std::string& out, std::uint8_t v) { out.push_back(static_cast<char>(v)); }

inline void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>(v >> 8));
}

inline void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

inline void put_f64(std::string& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
}

class ByteReader {
 public:
  ByteReader(const std::string& buf, std::string path) : buf_(buf), path_(std::move(path)) {}

  std::uint8_t u8() { return take(1)[0]; }
  std::uint16_t u16() {
    const auto* b = take(2);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
  }
  std::uint32_t u32() {
    const auto* b = take(4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
  }
  double f64() {
    const auto* b = take(8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }

 private:
  const unsigned char* take(std::size_t n) {
    if (pos_ + n > buf_.size())
      throw std::runtime_error("truncated MCVOX file: " + path_);
    const auto* p = reinterpret_cast<const unsigned char*>(buf_.data()) + pos_;
    pos_ += n;
    return p;
  }

  const std::string& buf_;
  std::string path_;
  std::size_t pos_ = 0;
};

inline void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw std::runtime_error("read failed: " + path);
  return data;
}

// "stack.pgm" -> "stack_z0007.pgm"
inline std::string plane_path(const std::string& path, std::uint32_t iz) {
  char suffix[16];
  std::snprintf(suffix, sizeof suffix, "_z%04u", iz);
  const std::size_t slash = path.find_last_of('/');
  const std::size_t dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}

}  // namespace detail

inline constexpr char kMcvoxMagic[7] = {'M', 'C', 'V', 'O', 'X', '1', '\0'};

// Layout (little-endian): magic "MCVOX1\0" (7 bytes), u8 version = 1,
// u8 order, u8 p, u16 N, 2^order f64 c coefficients, 3 x u8 unit masks,
// 3 x u32 dims, 6 x f64 bounds, then nx*ny*nz u16 escape codes, x-fastest.
inline void write_mcvox(const VoxelGrid& g, const std::string& path) {
  if (g.triple.order > 8)
    throw std::invalid_argument("write_mcvox: order above 8 does not fit the u8 header field");
  if (g.p < 0 || g.p > 255)
    throw std::invalid_argument("write_mcvox: p does not fit the u8 header field");
  std::string out;
  out.reserve(64 + 8 * g.c.coeffs.size() + 2 * g.codes.size());
  out.append(kMcvoxMagic, sizeof kMcvoxMagic);
  detail::put_u8(out, 1);
  detail::put_u8(out, static_cast<std::uint8_t>(g.triple.order));
  detail::put_u8(out, static_cast<std::uint8_t>(g.p));
  detail::put_u16(out, static_cast<std::uint16_t>(g.max_iter));
  for (double v : g.c.coeffs) detail::put_f64(out, v);
  for (UnitMask m : g.triple.units) detail::put_u8(out, static_cast<std::uint8_t>(m));
  for (std::uint32_t d : g.spec.dims) detail::put_u32(out, d);
  for (double b : g.spec.bounds) detail::put_f64(out, b);
  for (std::uint16_t code : g.codes) detail::put_u16(out, code);
  detail::write_file(path, out);
}

inline VoxelGrid read_mcvox(const std::string& path) {
  const std::string data = detail::read_file(path);
  if (data.size() < sizeof kMcvoxMagic ||
      std::memcmp(data.data(), kMcvoxMagic, sizeof kMcvoxMagic) != 0)
    throw std::runtime_error("not an MCVOX file: " + path);
  detail::ByteReader r(data, path);
  for (std::size_t i = 0; i < sizeof kMcvoxMagic; ++i) r.u8();
  const std::uint8_t version = r.u8();
  if (version != 1) throw std::runtime_error("unsupported MCVOX version: " + path);

  const int order = r.u8();
  const int p = r.u8();
  const int max_iter = r.u16();
  Multicomplex c(order);
  for (double& v : c.coeffs) v = r.f64();
  std::uint8_t masks[3];
  for (auto& m : masks) m = r.u8();
  GridSpec spec;
  for (auto& d : spec.dims) d = r.u32();
  for (auto& b : spec.bounds) b = r.f64();
  spec.validate();

  VoxelGrid g{spec, SliceTriple::make(order, masks[0], masks[1], masks[2]), p, c, max_iter, {}};
  g.codes.resize(spec.voxel_count());
  for (auto& code : g.codes) code = r.u16();
  return g;
}

// ASCII point cloud of member voxel centers.
inline void write_ply_points(const VoxelGrid& g, const std::string& path) {
  std::string out;
  out += "ply\nformat ascii 1.0\n";
  out += "element vertex " + std::to_string(g.member_count()) + "\n";
  out += "property double x\nproperty double y\nproperty double z\nend_header\n";
  char line[96];
  for (std::uint32_t iz = 0; iz < g.spec.dims[2]; ++iz)
    for (std::uint32_t iy = 0; iy < g.spec.dims[1]; ++iy)
      for (std::uint32_t ix = 0; ix < g.spec.dims[0]; ++ix)
        if (g.at(ix, iy, iz) == kMemberCode) {
          std::snprintf(line, sizeof line, "%.17g %.17g %.17g\n", g.spec.center(0, ix),
                        g.spec.center(1, iy), g.spec.center(2, iz));
          out += line;
        }
  detail::write_file(path, out);
}

// One binary PGM (P5, maxval 255) per z-plane, row iy, column ix. Members map
// to 0; escape codes scale into [1, 255].
inline void write_pgm_stack(const VoxelGrid& g, const std::string& path) {
  const std::uint32_t nx = g.spec.dims[0], ny = g.spec.dims[1];
  for (std::uint32_t iz = 0; iz < g.spec.dims[2]; ++iz) {
    std::string out = "P5\n" + std::to_string(nx) + " " + std::to_string(ny) + "\n255\n";
    for (std::uint32_t iy = 0; iy < ny; ++iy) {
      for (std::uint32_t ix = 0; ix < nx; ++ix) {
        const std::uint16_t code = g.at(ix, iy, iz);
        unsigned byte = 0;
        if (code != kMemberCode) {
          byte = g.max_iter > 1
                     ? 1 + (static_cast<unsigned>(code - 1) * 254u) / static_cast<unsigned>(g.max_iter - 1)
                     : 255u;
          if (byte > 255u) byte = 255u;
        }
        out.push_back(static_cast<char>(byte));
      }
    }
    detail::write_file(detail::plane_path(path, iz), out);
  }
}

inline void export_grid(const VoxelGrid& g, ExportFormat format, const std::string& path) {
  switch (format) {
    case ExportFormat::MCVOX: write_mcvox(g, path); break;
    case ExportFormat::PLY_POINTS: write_ply_points(g, path); break;
    case ExportFormat::PGM_STACK: write_pgm_stack(g, path); break;
  }
}

}  // namespace mcjulia
