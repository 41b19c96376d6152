#include "varseq/exponent.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace varseq {

namespace {

void require_exponent(double p, const char* what, bool allow_one = false) {
  if (!std::isfinite(p) || !(p > 1.0 || (allow_one && p == 1.0))) {
    throw InvalidArgument(std::string(what) + " must lie in " + (allow_one ? "[1" : "(1") + ", inf), got " +
                          std::to_string(p));
  }
}

}  // namespace

ExponentSequence::ExponentSequence(Index window_start, std::vector<double> values, double tail)
    : ExponentSequence(window_start, std::move(values), tail, 0.0) {}

ExponentSequence ExponentSequence::allowing_one(Index window_start, std::vector<double> values, double tail) {
  return ExponentSequence(window_start, std::move(values), tail, 1.0);
}

ExponentSequence::ExponentSequence(Index window_start, std::vector<double> values, double tail, double floor)
    : window_start_(window_start), values_(std::move(values)), tail_(tail) {
  const bool allow_one = floor == 1.0;
  require_exponent(tail_, "exponent tail", allow_one);
  p_bar_ = tail_;
  p_lower_ = tail_;
  for (double v : values_) {
    require_exponent(v, "exponent value", allow_one);
    p_bar_ = std::max(p_bar_, v);
    p_lower_ = std::min(p_lower_, v);
  }
}

double p_bar(const ExponentSequence& e) { return e.p_bar(); }
double p_lower(const ExponentSequence& e) { return e.p_lower(); }

double conjugate(double p) {
  require_exponent(p, "exponent");
  return p / (p - 1.0);
}

ExponentFunction::ExponentFunction(std::vector<double> breakpoints, std::vector<double> pieces,
                                   std::string description)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)), description_(std::move(description)) {
  if (pieces_.empty()) throw InvalidArgument("exponent function has an empty piece list");
  if (pieces_.size() != breakpoints_.size() + 1) {
    throw InvalidArgument("exponent function needs exactly one more piece than breakpoints");
  }
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (!std::isfinite(breakpoints_[i])) throw InvalidArgument("exponent breakpoints must be finite");
    if (i > 0 && !(breakpoints_[i] > breakpoints_[i - 1])) {
      throw InvalidArgument("exponent breakpoints must be strictly increasing");
    }
  }
  for (double v : pieces_) require_exponent(v, "exponent piece");
}

ExponentFunction ExponentFunction::constant(double q) {
  return ExponentFunction({}, {q}, "constant");
}

ExponentFunction ExponentFunction::from_sequence(const ExponentSequence& p, IndexRange cover) {
  IndexRange w = p.window();
  if (!cover.empty()) {
    w = w.empty() ? cover : IndexRange{std::min(w.first, cover.first), std::max(w.last, cover.last)};
  }
  if (w.empty()) return ExponentFunction({}, {p.tail()}, "embedded step exponent");

  std::vector<double> breaks;
  std::vector<double> pieces;
  breaks.reserve(w.size() + 1);
  pieces.reserve(w.size() + 2);
  pieces.push_back(p.tail());
  for (Index k = w.first; k <= w.last; ++k) {
    breaks.push_back(static_cast<double>(k) - 0.5);
    pieces.push_back(p.at(k));
  }
  breaks.push_back(static_cast<double>(w.last) + 0.5);
  pieces.push_back(p.tail());
  return ExponentFunction(std::move(breaks), std::move(pieces), "embedded step exponent");
}

std::size_t ExponentFunction::piece_index(double x) const {
  return static_cast<std::size_t>(std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) -
                                  breakpoints_.begin());
}

double ExponentFunction::at(double x) const { return pieces_[piece_index(x)]; }

double ExponentFunction::p_minus() const { return *std::min_element(pieces_.begin(), pieces_.end()); }
double ExponentFunction::p_plus() const { return *std::max_element(pieces_.begin(), pieces_.end()); }

std::vector<double> SampleGrid::points() const {
  if (!(step > 0.0) || !(hi >= lo)) throw InvalidArgument("sample grid needs step > 0 and hi >= lo");
  std::vector<double> xs;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  xs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) xs.push_back(lo + static_cast<double>(i) * step);
  return xs;
}

LogHolderReport check_log_holder(const ExponentFunction& p, const SampleGrid& grid) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  LogHolderReport r;
  r.p_inf = p.right_tail();

  const auto pieces = p.pieces();
  const auto breaks = p.breakpoints();
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    if (pieces[i] != pieces[i + 1]) {
      r.passed_local = false;
      r.c0 = inf;
      r.local_witness_x = breaks[i];
      r.local_witness_y = breaks[i];
      break;
    }
  }

  const std::vector<double> xs = grid.points();
  if (r.passed_local) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = i + 1; j < xs.size(); ++j) {
        const double d = xs[j] - xs[i];
        if (!(d < 0.5)) break;
        const double ratio = std::abs(p.at(xs[i]) - p.at(xs[j])) * -std::log(d);
        if (ratio > r.c0) {
          r.c0 = ratio;
          r.local_witness_x = xs[i];
          r.local_witness_y = xs[j];
        }
      }
    }
  }

  if (p.left_tail() != p.right_tail()) {
    // p has no limit at infinity; the ratio grows like log(e + |x|) on the left tail.
    r.passed_infinity = false;
    r.c_inf = inf;
    r.infinity_witness = breaks.empty() ? grid.lo : breaks.front() - 1.0;
    return r;
  }
  for (double x : xs) {
    const double ratio = std::abs(p.at(x) - r.p_inf) * std::log(std::numbers::e + std::abs(x));
    if (ratio > r.c_inf) {
      r.c_inf = ratio;
      r.infinity_witness = x;
    }
  }
  return r;
}

}  // namespace varseq
