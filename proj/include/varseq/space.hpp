#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "varseq/exponent.hpp"
#include "varseq/types.hpp"

namespace varseq {

/// Compactly supported step function whose breakpoints lie on the quarter-integer grid.
///
/// Breakpoint i sits at quarters[i] / 4. values[i] holds on [quarters[i], quarters[i+1]]
/// (over 4); the function is zero outside the first and last breakpoint.
class StepFunction {
 public:
  StepFunction() = default;
  StepFunction(std::vector<Index> quarters, std::vector<double> values);

  std::span<const Index> quarters() const { return quarters_; }
  std::span<const double> values() const { return values_; }
  std::size_t piece_count() const { return values_.size(); }

  double breakpoint(std::size_t i) const { return static_cast<double>(quarters_[i]) / 4.0; }
  double left(std::size_t piece) const { return breakpoint(piece); }
  double right(std::size_t piece) const { return breakpoint(piece + 1); }

  /// Value at x (right-continuous at breakpoints).
  double at(double x) const;

  bool is_zero() const;

 private:
  std::vector<Index> quarters_;
  std::vector<double> values_;
};

/// Parses "k/4", "k/2" or "k" into quarter units. Throws InvalidArgument when
/// the denominator does not divide 4.
Index parse_quarter(const std::string& text);
std::string format_quarter(Index quarters);

struct NormResult {
  double value = 0.0;
  double modular_at_value = 0.0;
  int iterations = 0;
  bool tolerance_met = true;
};

inline constexpr double kDefaultNormTolerance = 1e-10;
inline constexpr int kMaxNormIterations = 200;

/// sum_n |b_n|^{p_n} over the window of b.
double modular_seq(const Sequence& b, const ExponentSequence& p);
double modular_seq(const ComplexSequence& b, const ExponentSequence& p);

/// Luxemburg norm inf{lambda > 0 : modular(b / lambda) <= 1} by bracketed bisection.
NormResult luxemburg_norm_seq(const Sequence& b, const ExponentSequence& p,
                              double tol = kDefaultNormTolerance);
NormResult luxemburg_norm_seq(const ComplexSequence& b, const ExponentSequence& p,
                              double tol = kDefaultNormTolerance);

/// Exact integral of |g|^{p(x)} over the common refinement of both breakpoint sets.
double modular_step(const StepFunction& g, const ExponentFunction& p);

NormResult luxemburg_norm_step(const StepFunction& g, const ExponentFunction& p,
                               double tol = kDefaultNormTolerance);

/// Deterministic samples on the unit sphere of l^{p_n} restricted to `window`.
/// The first min(count, |window|) samples are the basis vectors e_k in window
/// order; the rest are uniform [-1, 1] draws rescaled to norm one.
std::vector<Sequence> sample_unit_ball(const ExponentSequence& p, IndexRange window, std::uint64_t seed,
                                       std::size_t count);

namespace detail {

/// Terms of a modular in the form rho(lambda) = sum_i exp(offset_i - slope_i * log(lambda)).
struct ModularTerms {
  std::vector<double> offset;
  std::vector<double> slope;

  void add(double log_weight, double magnitude, double exponent);
  double at_log_lambda(double s) const;
};

NormResult luxemburg_from_terms(const ModularTerms& terms, double tol);

/// Luxemburg norm of a vector of magnitudes |b_k| with exponents p_k.
NormResult luxemburg_from_magnitudes(std::span<const double> magnitude, std::span<const double> exponent,
                                     double tol);

}  // namespace detail

}  // namespace varseq
