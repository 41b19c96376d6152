#include "varseq/space.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "varseq/rng.hpp"
#include "varseq/simd.hpp"

namespace varseq {

StepFunction::StepFunction(std::vector<Index> quarters, std::vector<double> values)
    : quarters_(std::move(quarters)), values_(std::move(values)) {
  if (quarters_.empty() && values_.empty()) return;
  if (quarters_.size() != values_.size() + 1) {
    throw InvalidArgument("step function needs exactly one more breakpoint than values");
  }
  for (std::size_t i = 1; i < quarters_.size(); ++i) {
    if (quarters_[i] <= quarters_[i - 1]) throw InvalidArgument("step function breakpoints must increase");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidArgument("step function values must be finite");
  }
}

double StepFunction::at(double x) const {
  if (values_.empty() || x < breakpoint(0) || x >= breakpoint(quarters_.size() - 1)) return 0.0;
  const double q = x * 4.0;
  const auto it = std::upper_bound(quarters_.begin(), quarters_.end(), q,
                                   [](double lhs, Index rhs) { return lhs < static_cast<double>(rhs); });
  return values_[static_cast<std::size_t>(it - quarters_.begin()) - 1];
}

bool StepFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

Index parse_quarter(const std::string& text) {
  const auto parse_int = [&](std::string_view s) {
    Index v = 0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    if (!s.empty() && s.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) {
      throw InvalidArgument("malformed breakpoint '" + text + "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return 4 * parse_int(text);
  const Index num = parse_int(std::string_view(text).substr(0, slash));
  const Index den = parse_int(std::string_view(text).substr(slash + 1));
  if (den != 1 && den != 2 && den != 4) {
    throw InvalidArgument("breakpoint '" + text + "' is not on the quarter-integer grid");
  }
  return num * (4 / den);
}

std::string format_quarter(Index quarters) { return std::to_string(quarters) + "/4"; }

namespace detail {

void ModularTerms::add(double log_weight, double magnitude, double exponent) {
  if (magnitude == 0.0) return;
  offset.push_back(log_weight + exponent * std::log(magnitude));
  slope.push_back(exponent);
}

double ModularTerms::at_log_lambda(double s) const {
  return simd::kernels().exp_affine_sum(offset.data(), slope.data(), offset.size(), s);
}

NormResult luxemburg_from_terms(const ModularTerms& terms, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("norm tolerance must be positive");
  NormResult r;
  if (terms.offset.empty()) return r;

  // Term i equals one at s = offset_i / slope_i; at the largest such s the
  // modular is >= 1. Each term is below exp(slope_min (s* - s)), so s* +
  // log(K) / slope_min puts the modular at or below one.
  double s_star = -std::numeric_limits<double>::infinity();
  double slope_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < terms.offset.size(); ++i) {
    s_star = std::max(s_star, terms.offset[i] / terms.slope[i]);
    slope_min = std::min(slope_min, terms.slope[i]);
  }
  const double spread = std::log(static_cast<double>(terms.offset.size())) / slope_min;
  double lo = s_star - spread;
  double hi = s_star + spread;
  while (terms.at_log_lambda(lo) < 1.0) lo -= std::numbers::ln2;
  while (terms.at_log_lambda(hi) > 1.0) hi += std::numbers::ln2;

  const double width_tol = std::max(1e-2 * tol, 1e-15 * std::max(1.0, std::abs(s_star)));
  double mid = 0.5 * (lo + hi);
  double rho = terms.at_log_lambda(mid);
  int it = 0;
  while (hi - lo > width_tol && it < kMaxNormIterations && rho != 1.0) {
    if (rho > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    mid = 0.5 * (lo + hi);
    rho = terms.at_log_lambda(mid);
    ++it;
  }
  r.value = std::exp(mid);
  r.modular_at_value = rho;
  r.iterations = it;
  r.tolerance_met = std::abs(rho - 1.0) <= tol;
  return r;
}

NormResult luxemburg_from_magnitudes(std::span<const double> magnitude, std::span<const double> exponent,
                                     double tol) {
  ModularTerms terms;
  terms.offset.reserve(magnitude.size());
  terms.slope.reserve(magnitude.size());
  for (std::size_t i = 0; i < magnitude.size(); ++i) terms.add(0.0, magnitude[i], exponent[i]);
  return luxemburg_from_terms(terms, tol);
}

}  // namespace detail

namespace {

template <typename T>
double modular_seq_impl(const BasicSequence<T>& b, const ExponentSequence& p) {
  double acc = 0.0;
  const auto v = b.values();
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double m = std::abs(v[k]);
    if (m != 0.0) acc += std::pow(m, p.at(b.window_start() + static_cast<Index>(k)));
  }
  return acc;
}

template <typename T>
NormResult luxemburg_seq_impl(const BasicSequence<T>& b, const ExponentSequence& p, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("norm tolerance must be positive");
  detail::ModularTerms terms;
  const auto v = b.values();
  terms.offset.reserve(v.size());
  terms.slope.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    terms.add(0.0, std::abs(v[k]), p.at(b.window_start() + static_cast<Index>(k)));
  }
  return detail::luxemburg_from_terms(terms, tol);
}

// Calls fn(length, value, exponent) for each cell of the common refinement
// where g is nonzero.
template <typename Fn>
void for_each_cell(const StepFunction& g, const ExponentFunction& p, Fn&& fn) {
  const auto breaks = p.breakpoints();
  const auto pieces = p.pieces();
  for (std::size_t i = 0; i < g.piece_count(); ++i) {
    const double v = g.values()[i];
    if (v == 0.0) continue;
    double x = g.left(i);
    const double end = g.right(i);
    std::size_t idx = p.piece_index(x);
    while (x < end) {
      const double next = idx < breaks.size() ? std::min(breaks[idx], end) : end;
      if (next > x) fn(next - x, v, pieces[idx]);
      x = next;
      ++idx;
    }
  }
}

}  // namespace

double modular_seq(const Sequence& b, const ExponentSequence& p) { return modular_seq_impl(b, p); }
double modular_seq(const ComplexSequence& b, const ExponentSequence& p) { return modular_seq_impl(b, p); }

NormResult luxemburg_norm_seq(const Sequence& b, const ExponentSequence& p, double tol) {
  return luxemburg_seq_impl(b, p, tol);
}
NormResult luxemburg_norm_seq(const ComplexSequence& b, const ExponentSequence& p, double tol) {
  return luxemburg_seq_impl(b, p, tol);
}

double modular_step(const StepFunction& g, const ExponentFunction& p) {
  double acc = 0.0;
  for_each_cell(g, p, [&](double len, double v, double q) { acc += std::pow(std::abs(v), q) * len; });
  return acc;
}

NormResult luxemburg_norm_step(const StepFunction& g, const ExponentFunction& p, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("norm tolerance must be positive");
  detail::ModularTerms terms;
  for_each_cell(g, p, [&](double len, double v, double q) { terms.add(std::log(len), std::abs(v), q); });
  return detail::luxemburg_from_terms(terms, tol);
}

std::vector<Sequence> sample_unit_ball(const ExponentSequence& p, IndexRange window, std::uint64_t seed,
                                       std::size_t count) {
  if (window.empty()) throw InvalidArgument("unit-ball sampling needs a nonempty window");
  if (count == 0) throw InvalidArgument("unit-ball sampling needs count >= 1");
  std::vector<Sequence> out;
  out.reserve(count);
  const std::size_t basis = std::min(count, window.size());
  for (std::size_t k = 0; k < basis; ++k) out.push_back(Sequence::unit(window.first + static_cast<Index>(k)));

  for (std::size_t j = basis; j < count; ++j) {
    SplitMix64 rng = SplitMix64::stream(seed, j);
    std::vector<double> v(window.size());
    for (auto& x : v) x = rng.uniform(-1.0, 1.0);
    Sequence b(window.first, std::move(v));
    const NormResult n = luxemburg_norm_seq(b, p);
    if (n.value == 0.0) {
      out.push_back(Sequence::unit(window.first));
      continue;
    }
    out.push_back(b.scaled(1.0 / n.value));
  }
  return out;
}

}  // namespace varseq
