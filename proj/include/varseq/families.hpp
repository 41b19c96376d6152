#pragma once

#include <cstdint>
#include <string>

#include "varseq/exponent.hpp"

namespace varseq {

/// Named exponent families, defined on all of Z so that nested windows agree.
///
///   const:<q>                 p_n = q
///   alternating:<a>/<b>       p_n = a for even n, b for odd n
///   lh:<limit>                p_n = limit + 1 / log(e + |n|)
///   random:<lo>/<hi>[:<seed>] p_n uniform in [lo, hi], drawn per index
class ExponentFamily {
 public:
  static ExponentFamily parse(const std::string& spec);

  const std::string& spec() const { return spec_; }
  double at(Index n) const;
  double tail() const { return tail_; }

  /// Values on `window`, family tail outside.
  ExponentSequence materialize(IndexRange window) const;

 private:
  enum class Kind { constant, alternating, lh, random };
  ExponentFamily() = default;

  std::string spec_;
  Kind kind_ = Kind::constant;
  double a_ = 2.0;
  double b_ = 2.0;
  std::uint64_t seed_ = 0;
  double tail_ = 2.0;
};

}  // namespace varseq
