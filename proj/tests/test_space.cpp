#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "varseq/rng.hpp"
#include "varseq/space.hpp"

using namespace varseq;

namespace {

std::vector<double> magnitudes(const Sequence& b) { return {b.values().begin(), b.values().end()}; }

std::vector<double> exponents(const ExponentSequence& p, const Sequence& b) {
  std::vector<double> e;
  for (Index n = b.window().first; n <= b.window().last; ++n) e.push_back(p.at(n));
  return e;
}

}  // namespace

TEST_CASE("sequence modular") {
  CHECK(modular_seq(Sequence::unit(0), ExponentSequence::constant(2)) == 1.0);
  CHECK(modular_seq(Sequence(0, {0.5, 0.5}), ExponentSequence::allowing_one(0, {1, 2}, 2)) ==
        doctest::Approx(0.75).epsilon(1e-15));
  CHECK(modular_seq(Sequence(0, {2}), ExponentSequence(0, {3}, 2)) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(modular_seq(Sequence(3, {}), ExponentSequence::constant(2)) == 0.0);
  const ComplexSequence z(0, {Complex(3, 4)});
  CHECK(modular_seq(z, ExponentSequence::constant(2)) == doctest::Approx(25.0).epsilon(1e-15));
}

TEST_CASE("Luxemburg norm: worked examples") {
  CHECK(luxemburg_norm_seq(Sequence::unit(0), ExponentSequence::constant(2)).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(luxemburg_norm_seq(Sequence(0, {3, 4}), ExponentSequence::constant(2)).value - 5.0) <= 1e-10);
  const NormResult g = luxemburg_norm_seq(Sequence(0, {1, 1}), ExponentSequence::allowing_one(0, {1, 2}, 2));
  CHECK(std::abs(g.value - (1.0 + std::sqrt(5.0)) / 2.0) <= 1e-10);
  CHECK(std::abs(g.value - oracle::bisect_norm({1, 1}, {1, 2})) <= 1e-10);
  CHECK(g.tolerance_met);

  const NormResult zero = luxemburg_norm_seq(Sequence(0, {0, 0, 0}), ExponentSequence::constant(3));
  CHECK(zero.value == 0.0);
  CHECK(zero.tolerance_met);

  CHECK_THROWS_AS(luxemburg_norm_seq(Sequence(0, {1}), ExponentSequence::constant(2), 0.0), InvalidArgument);
  CHECK_THROWS_AS(luxemburg_norm_seq(Sequence(0, {1}), ExponentSequence::constant(2), -1.0), InvalidArgument);
}

TEST_CASE("Luxemburg norm equals the classical norm for constant exponents") {
  SplitMix64 rng(1);
  for (double q : {1.5, 2.0, 3.0}) {
    for (int t = 0; t < 100; ++t) {
      std::vector<double> v(1 + rng.below(64));
      const double scale = std::pow(10.0, rng.uniform(-3, 3));
      for (auto& x : v) x = scale * rng.uniform(-1, 1);
      const double got = luxemburg_norm_seq(Sequence(-7, v), ExponentSequence::constant(q)).value;
      const double want = oracle::lq_norm(v, q);
      CHECK(std::abs(got - want) <= 1e-10 * std::max(1.0, want));
    }
  }
}

TEST_CASE("Luxemburg norm matches an independent bisection for variable exponents") {
  SplitMix64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng.below(40);
    std::vector<double> v(n);
    std::vector<double> e(n);
    for (auto& x : v) x = rng.below(5) == 0 ? 0.0 : rng.uniform(-2, 2);
    for (auto& x : e) x = rng.uniform(1.05, 8.0);
    const Sequence b(3, v);
    const ExponentSequence p(3, e, 2.0);
    const NormResult r = luxemburg_norm_seq(b, p);
    const double want = oracle::bisect_norm(magnitudes(b), exponents(p, b));
    CHECK(std::abs(r.value - want) <= 1e-10 * std::max(1.0, want));
    if (r.value > 0.0) {
      CHECK(r.tolerance_met);
      CHECK(std::abs(r.modular_at_value - 1.0) <= kDefaultNormTolerance);
    }
  }
}

TEST_CASE("Luxemburg norm properties") {
  SplitMix64 rng(4);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> v(1 + rng.below(30));
    std::vector<double> e(v.size());
    for (auto& x : v) x = rng.uniform(-1, 1);
    for (auto& x : e) x = rng.uniform(1.1, 5.0);
    const Sequence b(0, v);
    const ExponentSequence p(0, e, 2.0);
    const double nb = luxemburg_norm_seq(b, p).value;
    const double c = rng.uniform(0.01, 50.0);
    // Homogeneity.
    CHECK(luxemburg_norm_seq(b.scaled(-c), p).value == doctest::Approx(c * nb).epsilon(1e-10));
    // Monotone in |b|: growing one coordinate never shrinks the norm.
    std::vector<double> w = v;
    w[rng.below(w.size())] *= 1.5;
    CHECK(luxemburg_norm_seq(Sequence(0, w), p).value >= nb * (1.0 - 1e-12));
    // Complex entries enter through their modulus.
    std::vector<Complex> z(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) z[i] = std::polar(std::abs(v[i]), rng.uniform(0, 6.3));
    CHECK(luxemburg_norm_seq(ComplexSequence(0, z), p).value == doctest::Approx(nb).epsilon(1e-10));
    // Shift of both b and p leaves the norm unchanged.
    CHECK(luxemburg_norm_seq(b.shifted(9), ExponentSequence(9, e, 2.0)).value == doctest::Approx(nb).epsilon(1e-12));
  }
}

TEST_CASE("extreme magnitudes stay finite") {
  const ExponentSequence p(0, {1.2, 8.0}, 2.0);
  for (double s : {1e-250, 1e-100, 1.0, 1e100, 1e250}) {
    const NormResult r = luxemburg_norm_seq(Sequence(0, {s, s}), p);
    CHECK(std::isfinite(r.value));
    CHECK(r.value > 0.0);
    CHECK(r.tolerance_met);
  }
}

TEST_CASE("unit-ball samples") {
  const ExponentSequence p(-3, {1.5, 3, 1.5, 3, 1.5, 3, 1.5}, 2);
  const IndexRange w{-3, 3};
  const auto s = sample_unit_ball(p, w, 9, 40);
  REQUIRE(s.size() == 40);
  for (std::size_t k = 0; k < w.size(); ++k) {
    CHECK(s[k].support() == IndexRange{w.first + static_cast<Index>(k), w.first + static_cast<Index>(k)});
    CHECK(s[k].at(w.first + static_cast<Index>(k)) == 1.0);
  }
  for (const auto& b : s) CHECK(std::abs(luxemburg_norm_seq(b, p).value - 1.0) <= 1e-9);

  const auto again = sample_unit_ball(p, w, 9, 40);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(std::equal(s[i].values().begin(), s[i].values().end(), again[i].values().begin()));
  }
  const auto other = sample_unit_ball(p, w, 10, 40);
  CHECK_FALSE(std::equal(s[20].values().begin(), s[20].values().end(), other[20].values().begin()));
  CHECK(sample_unit_ball(p, w, 9, 3).size() == 3);
  CHECK_THROWS_AS(sample_unit_ball(p, w, 9, 0), InvalidArgument);
  CHECK_THROWS_AS(sample_unit_ball(p, IndexRange{}, 9, 4), InvalidArgument);
}

TEST_CASE("quarter-grid breakpoints") {
  CHECK(parse_quarter("3/4") == 3);
  CHECK(parse_quarter("-1/4") == -1);
  CHECK(parse_quarter("1/2") == 2);
  CHECK(parse_quarter("-3") == -12);
  CHECK(parse_quarter("7/1") == 28);
  CHECK_THROWS_AS(parse_quarter("5/3"), InvalidArgument);
  CHECK_THROWS_AS(parse_quarter("1/8"), InvalidArgument);
  CHECK_THROWS_AS(parse_quarter("x/4"), InvalidArgument);
  CHECK_THROWS_AS(parse_quarter(""), InvalidArgument);
  for (Index q = -20; q <= 20; ++q) CHECK(parse_quarter(format_quarter(q)) == q);
}

TEST_CASE("step functions") {
  CHECK_THROWS_AS(StepFunction({0, 4}, {1, 2}), InvalidArgument);
  CHECK_THROWS_AS(StepFunction({4, 0}, {1}), InvalidArgument);
  CHECK_THROWS_AS(StepFunction({0, 4}, {std::nan("")}), InvalidArgument);
  const StepFunction g({-1, 1, 4}, {2.0, -1.0});
  CHECK(g.at(-0.26) == 0.0);
  CHECK(g.at(-0.25) == 2.0);
  CHECK(g.at(0.25) == -1.0);
  CHECK(g.at(1.0) == 0.0);
  CHECK(StepFunction().is_zero());
}

TEST_CASE("step modular is exact over the common refinement") {
  const double two_pi = 2.0 * std::numbers::pi;
  const StepFunction bump({-1, 1}, {two_pi});
  CHECK(modular_step(bump, ExponentFunction::constant(2)) ==
        doctest::Approx(2.0 * std::numbers::pi * std::numbers::pi).epsilon(1e-14));
  const double quad = oracle::midpoint([&](double x) { return std::pow(std::abs(bump.at(x)), 2.0); }, -1, 1, 1e-4);
  CHECK(modular_step(bump, ExponentFunction::constant(2)) == doctest::Approx(quad).epsilon(1e-9));

  CHECK(modular_step(StepFunction(), ExponentFunction::constant(2)) == 0.0);
  CHECK(modular_step(StepFunction({0, 12}, {1.0}), ExponentFunction({0.0, 3.0}, {2.0, 5.0, 2.0})) ==
        doctest::Approx(3.0).epsilon(1e-15));

  // Breakpoints of g and p interleave; compare with quadrature on a grid aligned to both.
  SplitMix64 rng(8);
  for (int t = 0; t < 20; ++t) {
    std::vector<Index> q{-6};
    std::vector<double> v;
    for (int i = 0; i < 5; ++i) {
      q.push_back(q.back() + 1 + static_cast<Index>(rng.below(4)));
      v.push_back(rng.uniform(-3, 3));
    }
    const StepFunction f(q, v);
    const ExponentFunction p({-0.8, 0.1, 0.7, 1.3}, {rng.uniform(1.1, 4), rng.uniform(1.1, 4), rng.uniform(1.1, 4),
                                                     rng.uniform(1.1, 4), rng.uniform(1.1, 4)});
    const double lo = f.breakpoint(0) - 1;
    const double hi = f.breakpoint(5) + 1;
    const double want = oracle::midpoint([&](double x) { return std::pow(std::abs(f.at(x)), p.at(x)); }, lo, hi, 1e-5);
    CHECK(modular_step(f, p) == doctest::Approx(want).epsilon(1e-3));
  }
}

TEST_CASE("step Luxemburg norm") {
  // c on an interval of length L with constant q: c L^{1/q}.
  for (double q : {1.3, 2.0, 4.5}) {
    const StepFunction f({-2, 10}, {-2.5});
    CHECK(luxemburg_norm_step(f, ExponentFunction::constant(q)).value ==
          doctest::Approx(2.5 * std::pow(3.0, 1.0 / q)).epsilon(1e-10));
  }
  CHECK(luxemburg_norm_step(StepFunction(), ExponentFunction::constant(2)).value == 0.0);
  // Two pieces with different exponents: compare with the weighted bisection oracle.
  const StepFunction f({0, 2, 8}, {1.5, 0.75});
  const ExponentFunction p({0.5}, {3.0, 1.5});
  const double want = [&] {
    double lo = 1e-3;
    double hi = 1e3;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      const double rho = 0.5 * std::pow(1.5 / mid, 3.0) + 1.5 * std::pow(0.75 / mid, 1.5);
      (rho > 1.0 ? lo : hi) = mid;
    }
    return lo;
  }();
  CHECK(luxemburg_norm_step(f, p).value == doctest::Approx(want).epsilon(1e-10));
}
