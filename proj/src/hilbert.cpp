#include "varseq/hilbert.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "varseq/simd.hpp"

namespace varseq {

namespace {

Sequence hilbert_fft(const Sequence& b, IndexRange support, IndexRange out) {
  const std::size_t ls = support.size();
  const std::size_t lo = out.size();
  const std::size_t lk = lo + ls - 1;
  const std::size_t m = detail::next_pow2(lo + ls);
  const Index d_min = out.first - support.last;

  std::vector<Complex> a(m);
  std::vector<Complex> k(m);
  for (std::size_t i = 0; i < ls; ++i) a[i] = b.at(support.first + static_cast<Index>(i));
  for (std::size_t t = 0; t < lk; ++t) {
    const Index d = d_min + static_cast<Index>(t);
    if (d != 0) k[t] = 1.0 / static_cast<double>(d);
  }
  detail::dft(a, false);
  detail::dft(k, false);
  simd::kernels().complex_multiply(a.data(), k.data(), m);
  detail::dft(a, true);

  Sequence result = Sequence::zeros(out);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t j = 0; j < lo; ++j) result.values()[j] = a[j + ls - 1].real() * scale;
  return result;
}

}  // namespace

Sequence discrete_hilbert(const Sequence& b, IndexRange out_window, const HilbertOptions& opts) {
  if (out_window.empty()) throw InvalidArgument("discrete Hilbert transform needs a nonempty output window");
  const IndexRange support = b.support();
  if (support.empty()) return Sequence::zeros(out_window);

  if (opts.method == HilbertMethod::fft) return hilbert_fft(b, support, out_window);

  Sequence result = Sequence::zeros(out_window);
  const auto v = b.values();
  const auto offset = static_cast<std::size_t>(support.first - b.window_start());
  simd::kernels().hilbert_rows(v.data() + offset, support.size(), support.first, result.values().data(),
                               out_window.size(), out_window.first);
  return result;
}

Sequence discrete_hilbert(const Sequence& b, const HilbertOptions& opts) {
  if (opts.fft_padding < 0) throw InvalidArgument("fft_padding must be >= 0");
  return discrete_hilbert(b, b.window().expanded(opts.fft_padding), opts);
}

PointwiseBound pointwise_bound(double p_bar) {
  if (!std::isfinite(p_bar) || !(p_bar > 1.0)) {
    throw InvalidArgument("pointwise bound needs p_bar in (1, inf), got " + std::to_string(p_bar));
  }
  const double r = std::exp2(-1.0 / p_bar);
  return {p_bar, 4.0 * r * r / (1.0 - r)};
}

double continuous_hilbert_step(const StepFunction& f, double x) {
  struct Piece {
    double a, b, v;
  };
  // Merge contiguous equal-valued pieces so every remaining endpoint is a jump.
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < f.piece_count(); ++i) {
    const double v = f.values()[i];
    if (!pieces.empty() && pieces.back().b == f.left(i) && pieces.back().v == v) {
      pieces.back().b = f.right(i);
    } else {
      pieces.push_back({f.left(i), f.right(i), v});
    }
  }
  std::erase_if(pieces, [](const Piece& p) { return p.v == 0.0; });

  double acc = 0.0;
  for (const Piece& p : pieces) {
    if (x == p.a || x == p.b) {
      throw SingularPointError("continuous Hilbert transform is singular at breakpoint x = " + std::to_string(x));
    }
    acc += p.v * std::log(std::abs((x - p.a) / (x - p.b)));
  }
  return acc / std::numbers::pi;
}

Eigen::MatrixXd operator_matrix(IndexRange in_window, IndexRange out_window) {
  Eigen::MatrixXd a(static_cast<Eigen::Index>(out_window.size()), static_cast<Eigen::Index>(in_window.size()));
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      const Index d = (out_window.first + r) - (in_window.first + c);
      a(r, c) = d == 0 ? 0.0 : 1.0 / static_cast<double>(d);
    }
  }
  return a;
}

double finite_section_norm(Index half_width) {
  if (half_width < 0) throw InvalidArgument("finite section needs half_width >= 0");
  const IndexRange w = IndexRange::centered(half_width);
  const Eigen::MatrixXd a = operator_matrix(w, w);
  Eigen::MatrixXd gram(a.cols(), a.cols());
  gram.noalias() = a.transpose() * a;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
}

}  // namespace varseq
