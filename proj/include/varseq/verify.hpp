#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "varseq/exponent.hpp"
#include "varseq/types.hpp"

namespace varseq {

enum class EstimateMethod { basis, random, power, warm_start, ascent };

std::string_view method_name(EstimateMethod m);

/// Lower bound for the norm of H on l^{p_n}, over inputs supported on
/// `window` with the output measured on the same window (finite section).
struct NormEstimate {
  double lower_bound = 0.0;
  Sequence witness;
  std::size_t trials = 0;
  IndexRange window;
  EstimateMethod method = EstimateMethod::basis;
};

struct EstimateOptions {
  bool include_basis = true;
  /// l^2 power iterations on the finite section; 0 disables the candidate.
  int power_iterations = 40;
  int ascent_passes = 100;
  std::size_t ascent_coords_per_pass = 64;
  double tol = 1e-10;
  /// Earlier witness (e.g. from a smaller window); restricted to `window`.
  std::optional<Sequence> warm_start;
};

/// ||P_W H b|| / ||b|| in l^{p_n}, with P_W the restriction to `window`.
double hilbert_ratio(const Sequence& b, const ExponentSequence& p, IndexRange window, double tol = 1e-10);

/// Samples the unit ball (basis vectors, then `trials` random draws), adds the
/// l^2 power-iteration vector and any warm start, then refines the best
/// candidate by coordinate ascent: perturb one coordinate, renormalize, keep
/// on improvement; the step halves after a pass without improvement.
NormEstimate estimate_operator_norm(const ExponentSequence& p, IndexRange window, std::size_t trials,
                                    std::uint64_t seed, const EstimateOptions& opts = {});

struct CheckRecord {
  std::string name;
  /// Which displayed bound or identity the check exercises.
  std::string source;
  std::string inputs_digest;
  double observed = 0.0;
  double bound = 0.0;
  /// bound - observed.
  double margin = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  /// Recorded for the reader; never fails the suite.
  bool informational = false;
  std::string note;
};

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  std::string environment;
  std::optional<std::string> generated_at;
  std::vector<std::string> notes;
  std::vector<CheckRecord> checks;

  bool passed() const;
};

struct SuiteConfig {
  std::uint64_t seed = 7;
  /// Random (b, p) draws per suite.
  std::size_t trials = 200;
  /// Half-width of the sequence window [-N, N].
  Index half_width = 8;
  std::size_t samples_per_cell = 200;
  /// theorem13: half-widths visited in order (each should double the last).
  std::vector<Index> windows{256, 512, 1024};
  std::vector<std::string> families{"alternating:1.5/3", "lh:2", "random:1.3/4:11"};
  std::size_t norm_trials = 100;
  int ascent_passes = 100;
  std::size_t ascent_coords_per_pass = 64;
  double saturation_threshold = 0.02;
  /// theorem32 inputs.
  std::vector<std::string> symbols{"one", "sgn", "riesz_tau:1", "shift"};
  std::string multiplier_family = "alternating:1.5/1.9";
  double tol = 1e-12;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemma21", "lemma23", "remark31", "theorem13", "theorem32"};
  return names;
}

/// Runs a named suite. Throws InvalidArgument for an unknown name.
Report run_suite(const std::string& name, const SuiteConfig& config);

/// Compiler and kernel backend; stable across runs on one machine.
std::string environment_digest();

/// FNV-1a over raw bytes, printed as 16 hex digits.
class Digest {
 public:
  Digest& add(const void* data, std::size_t n);
  Digest& add(double v) { return add(&v, sizeof v); }
  Digest& add(std::int64_t v) { return add(&v, sizeof v); }
  Digest& add(const std::string& s) { return add(s.data(), s.size()); }
  Digest& add(const Sequence& s);
  Digest& add(const ExponentSequence& p);
  std::string hex() const;

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

}  // namespace varseq
