// Command-line frontend: classification reports, voxel rendering with export,
// the verification harness, and a multiplication micro-benchmark.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mcjulia/dynamics.hpp"
#include "mcjulia/formats.hpp"
#include "mcjulia/renderer.hpp"
#include "mcjulia/slice_kernel.hpp"
#include "mcjulia/slices.hpp"
#include "mcjulia/verify.hpp"

namespace {

using namespace mcjulia;

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    out.push_back(s.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_real(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("cannot parse ") + what + " value '" + s + "'");
  }
}

// A single real, or a full coefficient list of length 2^n.
Multicomplex parse_c(const std::string& text, int order) {
  const std::vector<std::string> parts = split_csv(text);
  if (parts.size() == 1) return Multicomplex::from_real(order, parse_real(parts[0], "--c"));
  const std::size_t want = std::size_t{1} << order;
  if (parts.size() != want)
    throw std::invalid_argument("--c needs one real value or exactly 2^n = " +
                                std::to_string(want) + " coefficients, got " +
                                std::to_string(parts.size()));
  std::vector<double> coeffs;
  coeffs.reserve(parts.size());
  for (const std::string& p : parts) coeffs.push_back(parse_real(p, "--c"));
  return Multicomplex::from_coeffs(order, std::move(coeffs));
}

SliceTriple parse_slice(const std::string& text, int order) {
  const std::vector<std::string> parts = split_csv(text);
  if (parts.size() != 3)
    throw std::invalid_argument("--slice needs three comma-separated units, e.g. 1,i1,i2");
  UnitMask masks[3];
  for (int i = 0; i < 3; ++i) {
    const auto mask = parse_unit(parts[static_cast<std::size_t>(i)], order);
    if (!mask)
      throw std::invalid_argument("unknown unit '" + parts[static_cast<std::size_t>(i)] +
                                  "' (accepted: 1, i1..i4, j1..j3, or a mask below 2^n)");
    masks[i] = *mask;
  }
  return SliceTriple::make(order, masks[0], masks[1], masks[2]);
}

std::array<std::uint32_t, 3> parse_dims(const std::string& text) {
  const std::vector<std::string> parts = split_csv(text);
  if (parts.size() != 1 && parts.size() != 3)
    throw std::invalid_argument("--dims needs one value (cube) or three, e.g. 128 or 64,64,96");
  std::array<std::uint32_t, 3> dims{};
  for (int a = 0; a < 3; ++a) {
    const std::string& p = parts[parts.size() == 1 ? 0 : static_cast<std::size_t>(a)];
    const double v = parse_real(p, "--dims");
    if (v < 1 || v > 1e9 || v != static_cast<std::uint32_t>(v))
      throw std::invalid_argument("--dims entries must be positive integers, got '" + p + "'");
    dims[static_cast<std::size_t>(a)] = static_cast<std::uint32_t>(v);
  }
  return dims;
}

std::array<double, 6> parse_bounds(const std::string& text) {
  const std::vector<std::string> parts = split_csv(text);
  std::array<double, 6> bounds{};
  if (parts.size() == 2) {
    const double lo = parse_real(parts[0], "--bounds");
    const double hi = parse_real(parts[1], "--bounds");
    bounds = {lo, hi, lo, hi, lo, hi};
  } else if (parts.size() == 6) {
    for (int i = 0; i < 6; ++i)
      bounds[static_cast<std::size_t>(i)] = parse_real(parts[static_cast<std::size_t>(i)], "--bounds");
  } else {
    throw std::invalid_argument("--bounds needs lo,hi or all six per-axis values");
  }
  return bounds;
}

int run_classify(int n, int p, const std::string& c_text, const std::string& out_path) {
  const Multicomplex c = parse_c(c_text, n);
  if (!c.is_real())
    throw std::invalid_argument(
        "classify requires a real c; slice classification is not defined otherwise");
  const nlohmann::json report = classification_report(n, p, c.coeffs[0]);
  std::printf("%s\n", report.dump(2).c_str());
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
    out << report.dump(2) << "\n";
  }
  return 0;
}

int run_render(int n, int p, const std::string& c_text, const std::string& slice_text,
               const std::string& dims_text, const std::string& bounds_text, int iters,
               const std::string& format_text, std::string out_path, int workers) {
  const Multicomplex c = parse_c(c_text, n);
  const SliceTriple t = parse_slice(slice_text, n);
  const DynamicsParams params = DynamicsParams::make(p, c, iters);

  GridSpec spec;
  spec.dims = parse_dims(dims_text);
  spec.bounds = bounds_text.empty()
                    ? GridSpec::centered(params.escape_radius, 1, 1, 1).bounds
                    : parse_bounds(bounds_text);

  const auto format = parse_format(format_text);
  if (!format)
    throw std::invalid_argument("unknown format '" + format_text + "' (mcvox, ply, pgm)");
  if (out_path.empty()) out_path = std::string("slice") + format_extension(*format);

  const VoxelGrid grid = render_slice(t, params, spec, workers);
  export_grid(grid, *format, out_path);
  std::printf("rendered %s  p=%d  N=%d  R=%.6g  dims=%ux%ux%u  members=%llu  -> %s\n",
              t.name().c_str(), p, iters, params.escape_radius, spec.dims[0], spec.dims[1],
              spec.dims[2], static_cast<unsigned long long>(grid.member_count()),
              out_path.c_str());
  return 0;
}

int run_verify(const std::string& suite, int n_max, int trials, std::uint64_t seed,
               const std::string& report_path) {
  const std::vector<VerificationReport> reports =
      run_verification_suite(SuiteOptions{suite, n_max, trials, seed});
  int failures = 0;
  for (const VerificationReport& report : reports) {
    failures += !report.pass;
    std::printf("%s %-20s %s\n", report.pass ? "PASS" : "FAIL", report.check.c_str(),
                report.parameters.dump().c_str());
  }
  if (!report_path.empty()) append_reports(reports, report_path);
  std::printf("%d/%zu checks passed\n", static_cast<int>(reports.size()) - failures,
              reports.size());
  return failures == 0 ? 0 : 2;
}

int run_bench(int n_max, int millis) {
  for (int n = 2; n <= n_max; ++n) {
    const MulBenchmark bench = benchmark_mul(n, millis);
    std::printf("n=%d  mul_direct %10.1f ns  mul_idempotent %10.1f ns  speedup %.2fx\n", n,
                bench.direct_ns, bench.idempotent_ns, bench.speedup);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multicomplex Julia-set engine: slice classification, voxel rendering, verification"};
  app.require_subcommand(1);

  int cl_n = 3, cl_p = 2;
  std::string cl_c = "0.25", cl_out;
  CLI::App* classify_cmd = app.add_subcommand("classify", "classify the principal 3D slices at order n");
  classify_cmd->add_option("--n", cl_n, "ambient order, >= 3");
  classify_cmd->add_option("--p", cl_p, "power in f(z) = z^p + c");
  classify_cmd->add_option("--c", cl_c, "real parameter c");
  classify_cmd->add_option("--out", cl_out, "also write the JSON report to this path");

  int r_n = 3, r_p = 2, r_iters = 100, r_workers = 0;
  std::string r_c = "0.25", r_slice = "1,i1,i2", r_dims = "128", r_bounds, r_format = "mcvox", r_out;
  CLI::App* render_cmd = app.add_subcommand("render", "render a slice into a voxel grid and export it");
  render_cmd->add_option("--n", r_n, "ambient order, >= 3");
  render_cmd->add_option("--p", r_p, "power in f(z) = z^p + c");
  render_cmd->add_option("--c", r_c, "real c, or 2^n comma-separated coefficients");
  render_cmd->add_option("--slice", r_slice, "three units, e.g. 1,i1,i2 or j1,j3,i4");
  render_cmd->add_option("--dims", r_dims, "grid size: one value or nx,ny,nz");
  render_cmd->add_option("--bounds", r_bounds, "lo,hi for all axes or six values; default [-R,R]");
  render_cmd->add_option("--iters", r_iters, "iteration cap N (escape codes), <= 65534");
  render_cmd->add_option("--format", r_format, "mcvox | ply | pgm");
  render_cmd->add_option("--out", r_out, "output path (default slice.<ext>)");
  render_cmd->add_option("--workers", r_workers, "thread count; 0 = MCJULIA_WORKERS or hardware");

  std::string v_suite = "all", v_report;
  int v_nmax = 4, v_trials = 1000;
  std::uint64_t v_seed = kDefaultSeed;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the brute-force verification harness");
  verify_cmd->add_option("--suite", v_suite,
                         "all | counts | ring | mul | classification | decomposition | equivalence");
  verify_cmd->add_option("--n-max", v_nmax, "largest order to verify");
  verify_cmd->add_option("--trials", v_trials, "random trials per check");
  verify_cmd->add_option("--seed", v_seed, "RNG seed recorded in every report");
  verify_cmd->add_option("--report", v_report, "append JSON-lines reports to this file");

  int b_nmax = 5, b_millis = 200;
  CLI::App* bench_cmd = app.add_subcommand("bench", "time mul_direct vs mul_idempotent");
  bench_cmd->add_option("--n-max", b_nmax, "largest order to time");
  bench_cmd->add_option("--millis", b_millis, "time budget per measurement");

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify_cmd->parsed()) return run_classify(cl_n, cl_p, cl_c, cl_out);
    if (render_cmd->parsed())
      return run_render(r_n, r_p, r_c, r_slice, r_dims, r_bounds, r_iters, r_format, r_out,
                        r_workers);
    if (verify_cmd->parsed()) return run_verify(v_suite, v_nmax, v_trials, v_seed, v_report);
    if (bench_cmd->parsed()) return run_bench(b_nmax, b_millis);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
