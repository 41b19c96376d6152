#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace varseq {

using Index = std::int64_t;
using Complex = std::complex<double>;

/// Raised when an input violates an operation's precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a closed form is evaluated exactly at a singularity.
class SingularPointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Closed range of integer indices [first, last]; empty when last < first.
struct IndexRange {
  Index first = 0;
  Index last = -1;

  static IndexRange centered(Index half_width) { return {-half_width, half_width}; }
  static IndexRange with_size(Index first, std::size_t size) {
    return {first, first + static_cast<Index>(size) - 1};
  }

  bool empty() const { return last < first; }
  std::size_t size() const { return empty() ? 0 : static_cast<std::size_t>(last - first + 1); }
  bool contains(Index n) const { return n >= first && n <= last; }
  IndexRange expanded(Index margin) const { return {first - margin, last + margin}; }

  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Finitely supported two-sided sequence. Entries outside the stored window are zero.
template <typename T>
class BasicSequence {
 public:
  using value_type = T;

  BasicSequence() = default;
  BasicSequence(Index window_start, std::vector<T> values)
      : window_start_(window_start), values_(std::move(values)) {}

  static BasicSequence zeros(IndexRange window) {
    return BasicSequence(window.first, std::vector<T>(window.size(), T{}));
  }
  static BasicSequence unit(Index n) { return BasicSequence(n, std::vector<T>{T{1}}); }

  Index window_start() const { return window_start_; }
  IndexRange window() const { return IndexRange::with_size(window_start_, values_.size()); }
  std::size_t size() const { return values_.size(); }

  std::span<const T> values() const { return values_; }
  std::span<T> values() { return values_; }

  T at(Index n) const {
    const Index k = n - window_start_;
    if (k < 0 || k >= static_cast<Index>(values_.size())) return T{};
    return values_[static_cast<std::size_t>(k)];
  }

  /// Smallest range holding every nonzero entry (empty for the zero sequence).
  IndexRange support() const {
    std::size_t lo = 0;
    std::size_t hi = values_.size();
    while (lo < hi && values_[lo] == T{}) ++lo;
    while (hi > lo && values_[hi - 1] == T{}) --hi;
    if (lo == hi) return {};
    return {window_start_ + static_cast<Index>(lo), window_start_ + static_cast<Index>(hi) - 1};
  }

  bool is_zero() const { return support().empty(); }

  BasicSequence restricted(IndexRange range) const {
    BasicSequence out = zeros(range);
    for (Index n = range.first; n <= range.last; ++n) out.values_[static_cast<std::size_t>(n - range.first)] = at(n);
    return out;
  }

  BasicSequence shifted(Index k) const { return BasicSequence(window_start_ + k, values_); }

  BasicSequence scaled(T c) const {
    BasicSequence out = *this;
    for (auto& v : out.values_) v *= c;
    return out;
  }

 private:
  Index window_start_ = 0;
  std::vector<T> values_;
};

using Sequence = BasicSequence<double>;
using ComplexSequence = BasicSequence<Complex>;

/// Elementwise sum over the union of both windows.
template <typename T>
BasicSequence<T> operator+(const BasicSequence<T>& a, const BasicSequence<T>& b) {
  if (a.size() == 0) return b;
  if (b.size() == 0) return a;
  const IndexRange w{std::min(a.window().first, b.window().first),
                     std::max(a.window().last, b.window().last)};
  BasicSequence<T> out = BasicSequence<T>::zeros(w);
  for (Index n = w.first; n <= w.last; ++n) out.values()[static_cast<std::size_t>(n - w.first)] = a.at(n) + b.at(n);
  return out;
}

}  // namespace varseq
