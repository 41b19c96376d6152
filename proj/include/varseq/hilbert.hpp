#pragma once

#include <Eigen/Dense>

#include "varseq/space.hpp"
#include "varseq/types.hpp"

namespace varseq {

enum class HilbertMethod { direct, fft };

struct HilbertOptions {
  HilbertMethod method = HilbertMethod::fft;
  /// Margin added on both sides of the input window when no output window is given.
  Index fft_padding = 0;
};

/// (Hb)_n = sum_{m != n} b_m / (n - m) for every n in out_window.
///
/// The direct method sums the kernel exactly. The fft method runs a circular
/// convolution padded to a power of two >= |out_window| + |supp b|, which
/// leaves no wrap-around in the retained outputs.
Sequence discrete_hilbert(const Sequence& b, IndexRange out_window, const HilbertOptions& opts = {});

/// Output over b's window widened by opts.fft_padding.
Sequence discrete_hilbert(const Sequence& b, const HilbertOptions& opts = {});

struct PointwiseBound {
  double p_bar;
  double constant;
};

/// |Hb_n| <= constant * ||b||_{l^p_bar}, with constant = 4 * 2^{-2/p} / (1 - 2^{-1/p}).
PointwiseBound pointwise_bound(double p_bar);

/// (1/pi) p.v. integral of f(t) / (x - t) in closed form:
/// sum over pieces of (v / pi) log|(x - a) / (x - b)|.
/// Throws SingularPointError when x is a breakpoint where f jumps.
double continuous_hilbert_step(const StepFunction& f, double x);

/// Finite section of the kernel: entry (n, m) = 1 / (n - m), zero on the diagonal.
/// Rows follow out_window, columns follow in_window.
Eigen::MatrixXd operator_matrix(IndexRange in_window, IndexRange out_window);

/// Largest singular value of operator_matrix on [-N, N] x [-N, N].
double finite_section_norm(Index half_width);

}  // namespace varseq
