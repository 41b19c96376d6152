#pragma once

#include <memory>

#include "varseq/exponent.hpp"
#include "varseq/space.hpp"

namespace varseq {

/// The step-function image of a sequence: f = 2 pi b_k on [k - 1/4, k + 1/4]
/// and p(x) = p_k on [k - 1/2, k + 1/2).
struct Embedding {
  Sequence b;
  ExponentSequence p;
  StepFunction f;
  ExponentFunction pfun;
};

Embedding embed(const Sequence& b, const ExponentSequence& p);

/// Split of the continuous transform on the cell |x - n| <= 1/2:
/// Hf(x) = F + G1(x) + G2(x), with F = Hb_n,
/// G2(x) = 2 b_n log|(x - n + 1/4) / (x - n - 1/4)| (the cell's own piece),
/// and G1 the contribution of every other piece after removing Hb_n.
class GDecomposition {
 public:
  GDecomposition(std::shared_ptr<const Embedding> e, Index n);

  Index n() const { return n_; }
  double F_value() const { return f_value_; }
  /// sum_{m != n} 3 |b_m| / |n - m|^2.
  double g1_bound() const { return g1_bound_; }

  double hf(double x) const;
  double g1(double x) const;
  double g2(double x) const;

 private:
  std::shared_ptr<const Embedding> e_;
  Index n_;
  double f_value_;
  double g1_bound_;
};

GDecomposition g_decompose(const Embedding& e, Index n);

}  // namespace varseq
