#include "varseq/multiplier.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fft.hpp"
#include "varseq/simd.hpp"

namespace varseq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

double wrap_frequency(double xi) { return xi - std::floor(xi + 0.5); }

bool is_pow2(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

}  // namespace

Symbol Symbol::one() {
  Symbol s(Kind::one, "one");
  s.bound_B_ = 1.0;
  return s;
}

Symbol Symbol::shift() { return Symbol(Kind::shift, "shift"); }

Symbol Symbol::sgn() {
  Symbol s(Kind::sgn, "sgn");
  s.bound_B_ = 1.0;
  return s;
}

Symbol Symbol::riesz(double tau) {
  if (!std::isfinite(tau)) throw InvalidArgument("riesz_tau needs a finite tau");
  std::ostringstream name;
  name << "riesz_tau:" << tau;
  Symbol s(Kind::riesz, name.str());
  s.tau_ = tau;
  // |xi|^k |d^k m| = prod_{j<k} |i tau - j|, independent of xi.
  double b = 1.0;
  double prod = 1.0;
  for (int j = 0; j < kMikhlinMaxOrder; ++j) {
    prod *= std::hypot(tau, static_cast<double>(j));
    b = std::max(b, prod);
  }
  s.bound_B_ = b;
  return s;
}

Symbol Symbol::linear() { return Symbol(Kind::linear, "linear"); }

Symbol Symbol::grid(std::vector<std::pair<double, Complex>> samples) {
  if (samples.empty()) throw InvalidArgument("grid symbol needs at least one sample");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& [xi, v] = samples[i];
    if (!(xi >= -0.5 && xi < 0.5)) throw InvalidArgument("grid symbol frequencies must lie in [-1/2, 1/2)");
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw InvalidArgument("grid symbol sample is not finite (symbol must be bounded)");
    }
    if (i > 0 && !(xi > samples[i - 1].first)) {
      throw InvalidArgument("grid symbol frequencies must be strictly increasing");
    }
  }
  Symbol s(Kind::grid, "grid");
  s.samples_ = std::make_shared<const std::vector<std::pair<double, Complex>>>(std::move(samples));
  return s;
}

Symbol Symbol::product(const Symbol& a, const Symbol& b) {
  Symbol s(Kind::product, a.name() + "*" + b.name());
  s.left_ = std::make_shared<const Symbol>(a);
  s.right_ = std::make_shared<const Symbol>(b);
  return s;
}

Symbol Symbol::adjoint(const Symbol& a) {
  Symbol s(Kind::adjoint, "adjoint(" + a.name() + ")");
  s.left_ = std::make_shared<const Symbol>(a);
  s.bound_B_ = a.bound_B_;
  return s;
}

Symbol Symbol::from_name(const std::string& name) {
  if (name == "one") return one();
  if (name == "shift") return shift();
  if (name == "sgn") return sgn();
  if (name == "linear") return linear();
  constexpr std::string_view riesz_prefix = "riesz_tau:";
  if (name.starts_with(riesz_prefix)) {
    const std::string arg = name.substr(riesz_prefix.size());
    std::size_t used = 0;
    double tau = 0.0;
    try {
      tau = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != arg.size()) throw InvalidArgument("malformed riesz_tau parameter in '" + name + "'");
    return riesz(tau);
  }
  throw InvalidArgument("unknown symbol '" + name + "'");
}

Complex Symbol::operator()(double xi) const {
  switch (kind_) {
    case Kind::one:
      return 1.0;
    case Kind::shift:
      return std::polar(1.0, -2.0 * kPi * xi);
    case Kind::sgn:
      return xi > 0.0 ? -kI : (xi < 0.0 ? kI : Complex{});
    case Kind::riesz:
      return xi == 0.0 ? Complex{1.0} : std::polar(1.0, tau_ * std::log(std::abs(xi)));
    case Kind::linear:
      return xi;
    case Kind::grid: {
      const auto& s = *samples_;
      const double x = wrap_frequency(xi);
      if (s.size() == 1) return s.front().second;
      const auto it = std::upper_bound(s.begin(), s.end(), x,
                                       [](double lhs, const auto& rhs) { return lhs < rhs.first; });
      // Periodic neighbours, unwrapped so that x0 <= x < x1.
      std::pair<double, Complex> p0;
      std::pair<double, Complex> p1;
      if (it == s.begin()) {
        p0 = {s.back().first - 1.0, s.back().second};
        p1 = s.front();
      } else if (it == s.end()) {
        p0 = s.back();
        p1 = {s.front().first + 1.0, s.front().second};
      } else {
        p0 = *(it - 1);
        p1 = *it;
      }
      const double t = (x - p0.first) / (p1.first - p0.first);
      return p0.second + t * (p1.second - p0.second);
    }
    case Kind::product:
      return (*left_)(xi) * (*right_)(xi);
    case Kind::adjoint:
      return std::conj((*left_)(xi));
  }
  return {};
}

std::optional<Complex> Symbol::derivative(int order, double xi) const {
  if (order < 0) throw InvalidArgument("derivative order must be >= 0");
  if (order == 0) return (*this)(xi);
  switch (kind_) {
    case Kind::one:
    case Kind::sgn:
      return Complex{};
    case Kind::shift:
      return std::pow(-2.0 * kPi * kI, order) * (*this)(xi);
    case Kind::riesz: {
      Complex c = 1.0;
      for (int j = 0; j < order; ++j) c *= Complex(-static_cast<double>(j), tau_);
      return c * (*this)(xi) / std::pow(xi, order);
    }
    case Kind::linear:
      return order == 1 ? Complex{1.0} : Complex{};
    case Kind::grid:
      return std::nullopt;
    case Kind::product: {
      // Leibniz rule.
      Complex acc{};
      double binom = 1.0;
      for (int j = 0; j <= order; ++j) {
        const auto a = left_->derivative(j, xi);
        const auto b = right_->derivative(order - j, xi);
        if (!a || !b) return std::nullopt;
        acc += binom * *a * *b;
        binom = binom * (order - j) / (j + 1);
      }
      return acc;
    }
    case Kind::adjoint: {
      const auto d = left_->derivative(order, xi);
      if (!d) return std::nullopt;
      return std::conj(*d);
    }
  }
  return std::nullopt;
}

std::optional<bool> Symbol::mikhlin_on_real_line() const {
  switch (kind_) {
    case Kind::one:
    case Kind::sgn:
    case Kind::riesz:
      return true;
    case Kind::shift:
    case Kind::linear:
      return false;
    case Kind::grid:
      return std::nullopt;
    case Kind::product: {
      const auto a = left_->mikhlin_on_real_line();
      const auto b = right_->mikhlin_on_real_line();
      if (a && b && *a && *b) return true;
      return std::nullopt;
    }
    case Kind::adjoint:
      return left_->mikhlin_on_real_line();
  }
  return std::nullopt;
}

bool Symbol::trigonometric() const {
  switch (kind_) {
    case Kind::one:
    case Kind::shift:
      return true;
    case Kind::product:
      return left_->trigonometric() && right_->trigonometric();
    case Kind::adjoint:
      return left_->trigonometric();
    default:
      return false;
  }
}

std::vector<double> frequency_grid(std::size_t size) {
  std::vector<double> xs(size);
  for (std::size_t j = 0; j < size; ++j) {
    xs[j] = -0.5 + (static_cast<double>(j) + 0.5) / static_cast<double>(size);
  }
  return xs;
}

ComplexSequence apply_multiplier(const Symbol& m, const ComplexSequence& b, std::size_t grid_size) {
  if (!is_pow2(grid_size)) throw InvalidArgument("grid_size must be a power of two >= 2");
  const std::size_t len = b.size();
  if (grid_size < 2 * len) {
    throw InvalidArgument("grid_size " + std::to_string(grid_size) + " is below twice the window length " +
                          std::to_string(len));
  }
  const Index out_first = b.window_start() - static_cast<Index>((grid_size - len) / 2);
  const IndexRange out_window = IndexRange::with_size(out_first, grid_size);

  const std::vector<double> xi = frequency_grid(grid_size);
  std::vector<Complex> symbol(grid_size);
  for (std::size_t j = 0; j < grid_size; ++j) {
    symbol[j] = m(xi[j]);
    if (!std::isfinite(symbol[j].real()) || !std::isfinite(symbol[j].imag())) {
      throw InvalidArgument("symbol '" + m.name() + "' is unbounded on the frequency grid");
    }
  }

  // Shifted-grid DFT: exp(-2 pi i k xi_j) = (-1)^k exp(-i pi k / M) exp(-2 pi i k j / M).
  // The phase of the window origin cancels between forward and inverse.
  std::vector<Complex> twiddle(grid_size);
  for (std::size_t k = 0; k < grid_size; ++k) {
    const double sign = (k & 1U) ? -1.0 : 1.0;
    twiddle[k] = sign * std::polar(1.0, -kPi * static_cast<double>(k) / static_cast<double>(grid_size));
  }

  std::vector<Complex> data(grid_size);
  for (std::size_t k = 0; k < grid_size; ++k) data[k] = b.at(out_first + static_cast<Index>(k)) * twiddle[k];
  detail::dft(data, false);
  simd::kernels().complex_multiply(data.data(), symbol.data(), grid_size);
  detail::dft(data, true);

  ComplexSequence out = ComplexSequence::zeros(out_window);
  const double scale = 1.0 / static_cast<double>(grid_size);
  for (std::size_t k = 0; k < grid_size; ++k) out.values()[k] = data[k] * std::conj(twiddle[k]) * scale;
  return out;
}

ComplexSequence apply_multiplier(const Symbol& m, const Sequence& b, std::size_t grid_size) {
  std::vector<Complex> v(b.values().begin(), b.values().end());
  return apply_multiplier(m, ComplexSequence(b.window_start(), std::move(v)), grid_size);
}

MikhlinReport mikhlin_check(const Symbol& m, double B, std::size_t grid_size) {
  if (!is_pow2(grid_size)) throw InvalidArgument("Mikhlin grid size must be a power of two >= 2");
  MikhlinReport r;
  r.B = B;
  r.analytic_derivatives = m.derivative(1, 0.25).has_value();

  const auto fd = [&](int order, double xi) -> Complex {
    const double h = std::min(1e-4, std::abs(xi) / 8.0);
    switch (order) {
      case 0:
        return m(xi);
      case 1:
        return (m(xi + h) - m(xi - h)) / (2.0 * h);
      case 2:
        return (m(xi + h) - 2.0 * m(xi) + m(xi - h)) / (h * h);
      default:
        return (m(xi + 2.0 * h) - 2.0 * m(xi + h) + 2.0 * m(xi - h) - m(xi - 2.0 * h)) / (2.0 * h * h * h);
    }
  };

  double worst = -1.0;
  for (double xi : frequency_grid(grid_size)) {
    for (int k = 0; k <= kMikhlinMaxOrder; ++k) {
      const Complex d = r.analytic_derivatives ? *m.derivative(k, xi) : fd(k, xi);
      const double ratio = std::pow(std::abs(xi), k) * std::abs(d);
      if (!std::isfinite(ratio)) {
        if (!r.non_finite) {
          r.non_finite = true;
          r.worst_xi = xi;
          r.worst_order = k;
        }
        continue;
      }
      r.max_ratio_per_order[static_cast<std::size_t>(k)] =
          std::max(r.max_ratio_per_order[static_cast<std::size_t>(k)], ratio);
      if (!r.non_finite && ratio > worst) {
        worst = ratio;
        r.worst_xi = xi;
        r.worst_order = k;
      }
    }
  }

  r.passed = !r.non_finite;
  for (double v : r.max_ratio_per_order) r.passed = r.passed && v < B;

  std::ostringstream verdict;
  if (r.non_finite) {
    verdict << "fails: non-finite derivative estimate at xi=" << r.worst_xi << " order " << r.worst_order;
  } else if (!r.passed) {
    verdict << "fails: order " << r.worst_order << " reaches " << worst << " >= B at xi=" << r.worst_xi;
  } else if (m.mikhlin_on_real_line() == false) {
    r.domain_limited = true;
    verdict << "passes on the torus grid only; not a Mikhlin symbol on the real line";
  } else {
    verdict << "passes";
  }
  r.verdict = verdict.str();
  return r;
}

MultiplierHypotheses check_hypotheses(const ExponentFunction& p, bool require_range) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  MultiplierHypotheses h;
  h.p_minus = p.p_minus();
  h.p_plus = p.p_plus();
  if (require_range && h.p_minus >= 2.0) {
    throw InvalidArgument("p_- = " + std::to_string(h.p_minus) + " is outside 1 < p_- <= p_+ <= 2");
  }
  h.q = 1.0 / (1.5 - 1.0 / h.p_minus);
  h.in_range = h.p_minus > 1.0 && h.p_plus <= 2.0;

  const auto breaks = p.breakpoints();
  const auto pieces = p.pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (!(pieces[i] > h.p_minus)) continue;
    const double a = i == 0 ? -inf : breaks[i - 1];
    const double b = i == breaks.size() ? inf : breaks[i];
    if (!h.d_intervals.empty() && h.d_intervals.back().second == a) {
      h.d_intervals.back().second = b;
    } else {
      h.d_intervals.emplace_back(a, b);
    }
    h.d_measure += b - a;
  }
  h.one_in_lr = std::isfinite(h.d_measure);
  h.satisfied = h.one_in_lr && (!require_range || h.in_range);

  std::ostringstream d;
  d << "1/r(x) = 1/p_- - 1/p(x) on D = {p > p_-}; r is finite on D, so the modular of 1 over D is |D| = "
    << h.d_measure;
  h.r_description = d.str();
  return h;
}

}  // namespace varseq
