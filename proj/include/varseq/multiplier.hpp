#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "varseq/exponent.hpp"
#include "varseq/types.hpp"

namespace varseq {

/// A bounded multiplier m(xi) on the frequency torus [-1/2, 1/2).
///
/// Registry symbols are closed forms with analytic derivatives:
///   one          m = 1
///   shift        m = exp(-2 pi i xi)           (right shift by one index)
///   sgn          m = -i sgn(xi)
///   riesz_tau:t  m = |xi|^{i t}
///   linear       m = xi                        (bounded only on the torus)
/// Grid symbols interpolate samples (xi, m) linearly and periodically.
class Symbol {
 public:
  enum class Kind { one, shift, sgn, riesz, linear, grid, product, adjoint };

  static Symbol one();
  static Symbol shift();
  static Symbol sgn();
  static Symbol riesz(double tau);
  static Symbol linear();
  /// Samples sorted by xi, every xi in [-1/2, 1/2).
  static Symbol grid(std::vector<std::pair<double, Complex>> samples);
  static Symbol product(const Symbol& a, const Symbol& b);
  /// conj(m(xi)): the symbol of the l^2 adjoint.
  static Symbol adjoint(const Symbol& a);

  /// Parses a registry name: "one", "shift", "sgn", "riesz_tau:<t>", "linear".
  /// "grid:<path>" is resolved by the I/O layer.
  static Symbol from_name(const std::string& name);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  Complex operator()(double xi) const;

  /// Analytic d^k m / d xi^k at xi != 0, when this symbol has one.
  std::optional<Complex> derivative(int order, double xi) const;

  /// Known verdict of the derivative condition on the whole real line, if any.
  std::optional<bool> mikhlin_on_real_line() const;

  /// True for trigonometric polynomials, on which the sampled transform is exact.
  bool trigonometric() const;

  /// Known constant bound, if any.
  std::optional<double> bound_B() const { return bound_B_; }

 private:
  Symbol(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

  Kind kind_;
  std::string name_;
  double tau_ = 0.0;
  std::optional<double> bound_B_;
  std::shared_ptr<const std::vector<std::pair<double, Complex>>> samples_;
  std::shared_ptr<const Symbol> left_;
  std::shared_ptr<const Symbol> right_;
};

/// Cell-centered frequency samples xi_j = -1/2 + (j + 1/2) / size.
std::vector<double> frequency_grid(std::size_t size);

/// Spectral multiplier: transform b on a shifted size-`grid_size` frequency
/// grid, multiply by the sampled symbol and invert. The output window holds
/// grid_size consecutive indices centered on b's window. grid_size must be a
/// power of two and at least twice b's window length.
ComplexSequence apply_multiplier(const Symbol& m, const ComplexSequence& b, std::size_t grid_size);
ComplexSequence apply_multiplier(const Symbol& m, const Sequence& b, std::size_t grid_size);

struct MikhlinReport {
  /// sup over the grid of |xi|^k |d^k m(xi)| for k = 0..3.
  std::array<double, 4> max_ratio_per_order{};
  double B = 0.0;
  bool passed = false;
  double worst_xi = 0.0;
  int worst_order = 0;
  bool analytic_derivatives = false;
  /// Passes on the torus grid while the symbol is known to fail on the real line.
  bool domain_limited = false;
  bool non_finite = false;
  std::string verdict;
};

/// Order cap d + 2 for d = 1.
inline constexpr int kMikhlinMaxOrder = 3;

/// |xi|^k |d^k m(xi)| < B for k <= 3 at every grid point (xi = 0 is never sampled).
/// Uses analytic derivatives when the symbol has them, otherwise central
/// differences with step h = min(1e-4, |xi| / 8).
MikhlinReport mikhlin_check(const Symbol& m, double B, std::size_t grid_size);

struct MultiplierHypotheses {
  double p_minus = 0.0;
  double p_plus = 0.0;
  /// Solves 1 / p_minus + 1 / q = 3 / 2.
  double q = 0.0;
  /// Measure of D = {x : p(x) > p_minus}; +inf when D reaches a tail.
  double d_measure = 0.0;
  /// Intervals making up D (tails reported with infinite ends).
  std::vector<std::pair<double, double>> d_intervals;
  bool one_in_lr = false;
  bool in_range = false;
  bool satisfied = false;
  std::string r_description;
};

/// Derives p_-, q and decides 1 in L^{r(.)}(D) exactly: r is finite on D, so
/// the modular of the constant 1 over D is |D|. With require_range set,
/// p_- >= 2 is rejected as outside 1 < p_- <= p_+ <= 2.
MultiplierHypotheses check_hypotheses(const ExponentFunction& p, bool require_range = false);

}  // namespace varseq
