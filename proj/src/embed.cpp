#include "varseq/embed.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "varseq/hilbert.hpp"

namespace varseq {

Embedding embed(const Sequence& b, const ExponentSequence& p) {
  std::vector<Index> quarters;
  std::vector<double> values;
  const IndexRange w = b.window();
  if (!w.empty()) {
    quarters.reserve(2 * w.size());
    values.reserve(2 * w.size());
    for (Index k = w.first; k <= w.last; ++k) {
      if (k > w.first) values.push_back(0.0);
      quarters.push_back(4 * k - 1);
      quarters.push_back(4 * k + 1);
      values.push_back(2.0 * std::numbers::pi * b.at(k));
    }
  }
  return Embedding{b, p, StepFunction(std::move(quarters), std::move(values)),
                   ExponentFunction::from_sequence(p, w)};
}

GDecomposition::GDecomposition(std::shared_ptr<const Embedding> e, Index n) : e_(std::move(e)), n_(n) {
  const Sequence& b = e_->b;
  const Sequence hb = discrete_hilbert(b, IndexRange{n, n}, {HilbertMethod::direct, 0});
  f_value_ = hb.values()[0];
  g1_bound_ = 0.0;
  const IndexRange w = b.window();
  for (Index m = w.first; m <= w.last; ++m) {
    if (m == n) continue;
    const auto d = static_cast<double>(n - m);
    g1_bound_ += 3.0 * std::abs(b.at(m)) / (d * d);
  }
}

double GDecomposition::hf(double x) const { return continuous_hilbert_step(e_->f, x); }

double GDecomposition::g2(double x) const {
  const double bn = e_->b.at(n_);
  if (bn == 0.0) return 0.0;
  const double t = x - static_cast<double>(n_);
  if (t == 0.25 || t == -0.25) {
    throw SingularPointError("G2 is singular at x = " + std::to_string(x));
  }
  return 2.0 * bn * std::log(std::abs((t + 0.25) / (t - 0.25)));
}

// Summed piece by piece, independently of hf: each other cell contributes its
// own closed form minus its kernel term b_m / (n - m).
double GDecomposition::g1(double x) const {
  const Sequence& b = e_->b;
  double acc = 0.0;
  for (Index m = b.window().first; m <= b.window().last; ++m) {
    const double bm = b.at(m);
    if (m == n_ || bm == 0.0) continue;
    const double t = x - static_cast<double>(m);
    acc += bm * (2.0 * std::log(std::abs((t + 0.25) / (t - 0.25))) - 1.0 / static_cast<double>(n_ - m));
  }
  return acc;
}

GDecomposition g_decompose(const Embedding& e, Index n) {
  return GDecomposition(std::make_shared<const Embedding>(e), n);
}

}  // namespace varseq
