#pragma once

// Brute-force verification harness. Every check produces a VerificationReport
// with its parameters, expected vs observed values, and a pass flag; reports
// serialize to JSON lines so runs can be diffed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mcjulia/dynamics.hpp"
#include "mcjulia/multicomplex.hpp"
#include "mcjulia/rng.hpp"
#include "mcjulia/slice_kernel.hpp"
#include "mcjulia/slices.hpp"
#include "mcjulia/units.hpp"

namespace mcjulia {

struct VerificationReport {
  std::string check;
  nlohmann::json parameters;
  nlohmann::json expected;
  nlohmann::json observed;
  bool pass = false;
  double max_error = 0.0;

  nlohmann::json to_json() const {
    return {{"check", check},   {"parameters", parameters}, {"expected", expected},
            {"observed", observed}, {"pass", pass},         {"max_error", max_error}};
  }
};

inline void append_reports(const std::vector<VerificationReport>& reports, const std::string& path) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open report file: " + path);
  for (const VerificationReport& report : reports) out << report.to_json().dump() << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline Multicomplex random_multicomplex(Rng& rng, int n, double lo = -1.0, double hi = 1.0) {
  Multicomplex m(n);
  for (double& c : m.coeffs) c = rng.uniform(lo, hi);
  return m;
}

// Commutativity, associativity, distributivity of the shipped product on
// random inputs, relative tolerance 1e-12.
inline VerificationReport verify_ring_axioms(int n, int trials, std::uint64_t seed = kDefaultSeed) {
  VerificationReport report;
  report.check = "ring_axioms";
  report.parameters = {{"n", n}, {"trials", trials}, {"seed", seed}};
  report.expected = {{"max_relative_error", 1e-12}};
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const Multicomplex a = random_multicomplex(rng, n);
    const Multicomplex b = random_multicomplex(rng, n);
    const Multicomplex c = random_multicomplex(rng, n);
    worst = std::max(worst, rel_error(a * b, b * a));
    worst = std::max(worst, rel_error((a * b) * c, a * (b * c)));
    worst = std::max(worst, rel_error(a * (b + c), a * b + a * c));
  }
  report.max_error = worst;
  report.observed = {{"max_relative_error", worst}};
  report.pass = worst <= 1e-12;
  return report;
}

inline VerificationReport verify_mul_paths(int n, int trials, std::uint64_t seed = kDefaultSeed) {
  VerificationReport report;
  report.check = "mul_paths";
  report.parameters = {{"n", n}, {"trials", trials}, {"seed", seed}};
  report.expected = {{"max_relative_error", 1e-12}};
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const Multicomplex a = random_multicomplex(rng, n);
    const Multicomplex b = random_multicomplex(rng, n);
    worst = std::max(worst, rel_error(mul_idempotent(a, b), mul_direct(a, b)));
  }
  report.max_error = worst;
  report.observed = {{"max_relative_error", worst}};
  report.pass = worst <= 1e-12;
  return report;
}

// Unit-nature counts: 1 real, 2^{n-1} imaginary, 2^{n-1}-1 hyperbolic.
inline VerificationReport verify_counts(int n) {
  VerificationReport report;
  report.check = "unit_counts";
  report.parameters = {{"n", n}};
  const std::size_t real = enumerate_units(n, UnitNature::Real).size();
  const std::size_t imag = enumerate_units(n, UnitNature::Imaginary).size();
  const std::size_t hyper = enumerate_units(n, UnitNature::Hyperbolic).size();
  const std::size_t half = std::size_t{1} << (n - 1);
  report.expected = {{"real", 1}, {"imaginary", half}, {"hyperbolic", half - 1}};
  report.observed = {{"real", real}, {"imaginary", imag}, {"hyperbolic", hyper}};
  report.pass = real == 1 && imag == half && hyper == half - 1;
  return report;
}

namespace detail {

inline int expected_class_count(int n, int p, double c) {
  if (p % 2 == 0 || c == 0.0) return 4;
  return n == 3 ? 8 : 9;
}

}  // namespace detail

// Exhaustive classification over all triples at order n: class count,
// permutation invariance, and the representative fixed-point property.
inline VerificationReport verify_classification(int n, int p, double c) {
  VerificationReport report;
  report.check = "classification";
  report.parameters = {{"n", n}, {"p", p}, {"c", c}};

  std::map<SliceClass, std::uint64_t> member_counts;
  bool permutation_invariant = true;
  bool representatives_fixed = true;
  std::uint64_t triples = 0;
  for (const SliceTriple& t : all_triples(n)) {
    const SliceClass cls = classify(t, p, c);
    ++member_counts[cls];
    ++triples;
    // All six input orders canonicalize to the same triple, hence the same
    // class; spot-check one non-canonical order per triple.
    const SliceTriple swapped = SliceTriple::make(n, t.units[2], t.units[0], t.units[1]);
    if (!(classify(swapped, p, c) == cls)) permutation_invariant = false;
    const SliceTriple& rep = cls.canonical_representative;
    if (!(classify(rep, p, c) == cls)) representatives_fixed = false;
  }

  const int expected_count = detail::expected_class_count(n, p, c);
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& [cls, count] : member_counts)
    classes.push_back({{"case", case_tag_name(cls.case_tag)},
                       {"squares", cls.square_multiset},
                       {"representative", cls.canonical_representative.name()},
                       {"members", count}});
  report.expected = {{"class_count", expected_count}};
  report.observed = {{"class_count", member_counts.size()},
                     {"triples", triples},
                     {"permutation_invariant", permutation_invariant},
                     {"representatives_fixed", representatives_fixed},
                     {"classes", classes}};
  report.pass = static_cast<int>(member_counts.size()) == expected_count &&
                permutation_invariant && representatives_fixed;
  return report;
}

// is_member vs membership_via_decomposition on random points, same N.
inline VerificationReport verify_decomposition(int n, int p, double c, int trials,
                                               std::uint64_t seed = kDefaultSeed) {
  VerificationReport report;
  report.check = "decomposition";
  report.parameters = {{"n", n}, {"p", p}, {"c", c}, {"N", 100}, {"trials", trials}, {"seed", seed}};
  const DynamicsParams params = DynamicsParams::make(p, Multicomplex::from_real(n, c), 100);
  Rng rng(seed);
  int disagreements = 0;
  int members = 0;
  for (int i = 0; i < trials; ++i) {
    const Multicomplex zeta = random_multicomplex(rng, n, -params.escape_radius, params.escape_radius);
    const bool direct = is_member(zeta, params);
    const bool split_way = membership_via_decomposition(zeta, params);
    members += direct;
    if (direct != split_way) ++disagreements;
  }
  report.expected = {{"disagreements", 0}};
  report.observed = {{"disagreements", disagreements}, {"members", members}};
  report.pass = disagreements == 0;
  return report;
}

// Every pair of same-class triples at order n must agree exactly on escape
// iterations at sampled corresponding points.
inline VerificationReport verify_escape_equivalence(int n, int p, double c, int samples = 1000,
                                                    std::uint64_t seed = kDefaultSeed) {
  VerificationReport report;
  report.check = "escape_equivalence";
  report.parameters = {{"n", n}, {"p", p}, {"c", c}, {"N", 100}, {"samples", samples}, {"seed", seed}};
  const DynamicsParams params = DynamicsParams::make(p, Multicomplex::from_real(n, c), 100);

  std::map<SliceClass, std::vector<SliceTriple>> classes;
  for (const SliceTriple& t : all_triples(n)) classes[classify(t, p, c)].push_back(t);

  std::uint64_t pairs = 0, bad_pairs = 0, disagreements = 0;
  for (const auto& [cls, members] : classes) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const EquivalenceReport eq = escape_equivalence_check(members[i], members[j], params,
                                                              samples, seed);
        ++pairs;
        if (!eq.all_exact()) {
          ++bad_pairs;
          disagreements += static_cast<std::uint64_t>(eq.disagreements);
        }
      }
    }
  }
  report.expected = {{"disagreeing_pairs", 0}};
  report.observed = {{"classes", classes.size()},
                     {"pairs", pairs},
                     {"disagreeing_pairs", bad_pairs},
                     {"disagreements", disagreements}};
  report.pass = bad_pairs == 0;
  return report;
}

// Structured classification listing for the CLI.
inline nlohmann::json classification_report(int n, int p, double c) {
  std::map<SliceClass, std::uint64_t> member_counts;
  for (const SliceTriple& t : all_triples(n)) ++member_counts[classify(t, p, c)];
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& [cls, count] : member_counts) {
    nlohmann::json entry = {{"case", case_tag_name(cls.case_tag)},
                            {"squares", cls.square_multiset},
                            {"representative", cls.canonical_representative.name()},
                            {"representative_order", cls.canonical_representative.order},
                            {"members", count}};
    const std::vector<std::string> labels = class_labels(cls);
    if (labels.size() > 1) entry["also_known_as"] = labels[1];
    classes.push_back(entry);
  }
  return {{"n", n},
          {"p", p},
          {"c", c},
          {"triples", all_triples(n).size()},
          {"class_count", member_counts.size()},
          {"classes", classes}};
}

struct SuiteOptions {
  std::string suite = "all";
  int n_max = 4;
  int trials = 1000;
  std::uint64_t seed = kDefaultSeed;
};

inline std::vector<VerificationReport> run_verification_suite(const SuiteOptions& opt) {
  const bool all = opt.suite == "all";
  std::vector<VerificationReport> reports;

  if (all || opt.suite == "counts")
    for (int n = 1; n <= std::min(opt.n_max, 6); ++n) reports.push_back(verify_counts(n));

  if (all || opt.suite == "ring")
    for (int n = 1; n <= std::min(opt.n_max, 6); ++n)
      reports.push_back(verify_ring_axioms(n, opt.trials, opt.seed));

  if (all || opt.suite == "mul")
    for (int n = 2; n <= std::min(opt.n_max, 6); ++n)
      reports.push_back(verify_mul_paths(n, opt.trials, opt.seed));

  if (all || opt.suite == "classification")
    for (int n = 3; n <= std::min(opt.n_max, 6); ++n) {
      reports.push_back(verify_classification(n, 2, 0.25));
      reports.push_back(verify_classification(n, 3, 0.0));
      reports.push_back(verify_classification(n, 3, 0.25));
    }

  if (all || opt.suite == "decomposition")
    for (int n = 2; n <= std::min(opt.n_max, 4); ++n) {
      reports.push_back(verify_decomposition(n, 2, 0.25, 200, opt.seed));
      reports.push_back(verify_decomposition(n, 3, 0.25, 200, opt.seed));
      reports.push_back(verify_decomposition(n, 3, 0.0, 200, opt.seed));
    }

  if (all || opt.suite == "equivalence") {
    reports.push_back(verify_escape_equivalence(3, 2, 0.25, 1000, opt.seed));
    reports.push_back(verify_escape_equivalence(3, 3, 0.25, 1000, opt.seed));
    reports.push_back(verify_escape_equivalence(3, 3, 0.0, 1000, opt.seed));
  }

  if (reports.empty()) throw std::invalid_argument("unknown verification suite: " + opt.suite);
  return reports;
}

struct MulBenchmark {
  int n = 0;
  double direct_ns = 0.0;
  double idempotent_ns = 0.0;
  double speedup = 0.0;
  double checksum = 0.0;  // keeps the measured work observable
};

inline MulBenchmark benchmark_mul(int n, int millis, std::uint64_t seed = kDefaultSeed) {
  Rng rng(seed);
  const int kPairs = 64;
  std::vector<Multicomplex> as, bs;
  for (int i = 0; i < kPairs; ++i) {
    as.push_back(random_multicomplex(rng, n));
    bs.push_back(random_multicomplex(rng, n));
  }
  MulBenchmark bench;
  bench.n = n;
  const auto measure = [&](auto&& fn) {
    using clock = std::chrono::steady_clock;
    const auto budget = std::chrono::milliseconds(millis);
    const auto start = clock::now();
    std::uint64_t ops = 0;
    while (clock::now() - start < budget) {
      for (int i = 0; i < kPairs; ++i) bench.checksum += fn(as[i], bs[i]).coeffs[0];
      ops += kPairs;
    }
    const double elapsed = std::chrono::duration<double, std::nano>(clock::now() - start).count();
    return elapsed / static_cast<double>(ops);
  };
  bench.direct_ns = measure([](const Multicomplex& a, const Multicomplex& b) { return mul_direct(a, b); });
  bench.idempotent_ns =
      measure([](const Multicomplex& a, const Multicomplex& b) { return mul_idempotent(a, b); });
  bench.speedup = bench.direct_ns / bench.idempotent_ns;
  return bench;
}

}  // namespace mcjulia
