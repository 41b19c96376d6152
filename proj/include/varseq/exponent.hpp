#pragma once

#include <string>
#include <vector>

#include "varseq/types.hpp"

namespace varseq {

/// Exponent sequence (p_n): explicit values on a window, a mandatory tail elsewhere.
/// Every exponent lies in (1, inf).
class ExponentSequence {
 public:
  ExponentSequence(Index window_start, std::vector<double> values, double tail);

  static ExponentSequence constant(double q) { return ExponentSequence(0, {}, q); }

  /// Admits exponents equal to 1. The modular and the Luxemburg norm are
  /// defined for p_n >= 1; the Hilbert and multiplier results need p_n > 1.
  static ExponentSequence allowing_one(Index window_start, std::vector<double> values, double tail);

  Index window_start() const { return window_start_; }
  IndexRange window() const { return IndexRange::with_size(window_start_, values_.size()); }
  std::span<const double> values() const { return values_; }
  double tail() const { return tail_; }

  double at(Index n) const {
    const Index k = n - window_start_;
    if (k < 0 || k >= static_cast<Index>(values_.size())) return tail_;
    return values_[static_cast<std::size_t>(k)];
  }

  double p_bar() const { return p_bar_; }
  double p_lower() const { return p_lower_; }

 private:
  ExponentSequence(Index window_start, std::vector<double> values, double tail, double floor);

  Index window_start_;
  std::vector<double> values_;
  double tail_;
  double p_bar_;
  double p_lower_;
};

double p_bar(const ExponentSequence& e);
double p_lower(const ExponentSequence& e);

/// Hölder conjugate p / (p - 1). Throws InvalidArgument for p <= 1 or p = inf.
double conjugate(double p);

/// Piecewise-constant exponent on the real line.
///
/// With breakpoints c_0 < ... < c_{K-1} there are K + 1 pieces: pieces[0] on
/// (-inf, c_0), pieces[i] on [c_{i-1}, c_i), pieces[K] on [c_{K-1}, inf).
/// The two outer pieces are the tails; the right tail is the limit p_inf.
class ExponentFunction {
 public:
  ExponentFunction(std::vector<double> breakpoints, std::vector<double> pieces,
                   std::string description = {});

  static ExponentFunction constant(double q);

  /// The step exponent p(x) = p_k on [k - 1/2, k + 1/2), built over `cover`
  /// together with the sequence's own window; the tail applies elsewhere.
  static ExponentFunction from_sequence(const ExponentSequence& p, IndexRange cover = {});

  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const double> pieces() const { return pieces_; }
  const std::string& description() const { return description_; }

  double at(double x) const;
  std::size_t piece_index(double x) const;

  double p_minus() const;
  double p_plus() const;
  double left_tail() const { return pieces_.front(); }
  double right_tail() const { return pieces_.back(); }

 private:
  std::vector<double> breakpoints_;
  std::vector<double> pieces_;
  std::string description_;
};

/// Uniform sample grid lo, lo + step, ..., up to hi.
struct SampleGrid {
  double lo = -8.0;
  double hi = 8.0;
  double step = 0.125;

  std::vector<double> points() const;
};

struct LogHolderReport {
  double c0 = 0.0;
  double c_inf = 0.0;
  double p_inf = 0.0;
  bool passed_local = true;
  bool passed_infinity = true;
  /// Worst local pair (or the offending breakpoint, twice, for a jump).
  double local_witness_x = 0.0;
  double local_witness_y = 0.0;
  /// Point attaining the worst ratio at infinity.
  double infinity_witness = 0.0;
};

/// Evaluates the local and at-infinity log-Hölder conditions.
///
/// Jumps are found from the piece list: any jump makes the local ratio
/// unbounded, so passed_local is false and c0 is +inf. Without jumps the
/// function is constant and both constants are estimated on the grid.
/// The infinity constant is the sampled sup of |p(x) - p_inf| log(e + |x|);
/// unequal left and right tails fail it outright.
LogHolderReport check_log_holder(const ExponentFunction& p, const SampleGrid& grid);

}  // namespace varseq
