#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "varseq/exponent.hpp"
#include "varseq/rng.hpp"

using namespace varseq;

TEST_CASE("p_bar and p_lower") {
  CHECK(p_bar(ExponentSequence(0, {2, 2, 2}, 2)) == 2.0);
  CHECK(p_bar(ExponentSequence(0, {1.5, 3, 2.2}, 2)) == 3.0);
  CHECK(p_bar(ExponentSequence(0, {}, 4)) == 4.0);
  CHECK(p_lower(ExponentSequence(-1, {1.5, 3, 2.2}, 2)) == 1.5);
  CHECK(p_lower(ExponentSequence(0, {3, 3}, 1.2)) == 1.2);

  SplitMix64 rng(3);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> v(1 + rng.below(20));
    for (auto& x : v) x = rng.uniform(1.01, 9.0);
    const ExponentSequence p(-5, v, rng.uniform(1.01, 9.0));
    CHECK(p.p_lower() <= p.p_bar());
    const double q = rng.uniform(1.01, 9.0);
    const ExponentSequence c(0, std::vector<double>(v.size(), q), q);
    CHECK(c.p_lower() == c.p_bar());
  }
}

TEST_CASE("exponent sequences reject values outside (1, inf)") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(ExponentSequence(0, {2, 1.0}, 2), InvalidArgument);
  CHECK_THROWS_AS(ExponentSequence(0, {2}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(ExponentSequence(0, {inf}, 2), InvalidArgument);
  CHECK_THROWS_AS(ExponentSequence(0, {2}, inf), InvalidArgument);
  CHECK_THROWS_AS(ExponentSequence(0, {0.5}, 2), InvalidArgument);
  CHECK_THROWS_AS(ExponentSequence(0, {std::nan("")}, 2), InvalidArgument);
  CHECK_NOTHROW(ExponentSequence::allowing_one(0, {1.0, 2.0}, 1.0));
  CHECK_THROWS_AS(ExponentSequence::allowing_one(0, {0.99}, 2), InvalidArgument);
  CHECK_THROWS_AS(ExponentSequence::allowing_one(0, {2}, inf), InvalidArgument);
}

TEST_CASE("sequence lookup falls back to the tail") {
  const ExponentSequence p(-1, {1.5, 3, 2.2}, 2);
  CHECK(p.at(-2) == 2.0);
  CHECK(p.at(-1) == 1.5);
  CHECK(p.at(1) == 2.2);
  CHECK(p.at(2) == 2.0);
  CHECK(p.window() == IndexRange{-1, 1});
}

TEST_CASE("conjugate exponent") {
  CHECK(conjugate(2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(conjugate(4.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(conjugate(1.25) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK_THROWS_AS(conjugate(1.0), InvalidArgument);
  CHECK_THROWS_AS(conjugate(0.7), InvalidArgument);
  CHECK_THROWS_AS(conjugate(std::numeric_limits<double>::infinity()), InvalidArgument);

  SplitMix64 rng(11);
  for (int t = 0; t < 2000; ++t) {
    const double p = rng.uniform(1.01, 100.0);
    CHECK(std::abs(conjugate(conjugate(p)) - p) <= 1e-12 * p);
    CHECK(1.0 / p + 1.0 / conjugate(p) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("exponent functions are half-open and piecewise constant") {
  CHECK_THROWS_AS(ExponentFunction({0.0}, {2.0}), InvalidArgument);
  CHECK_THROWS_AS(ExponentFunction({1.0, 0.0}, {2, 2, 2}), InvalidArgument);
  CHECK_THROWS_AS(ExponentFunction({0.0}, {2.0, 1.0}), InvalidArgument);

  const ExponentFunction f({0.0, 1.0}, {2.0, 3.0, 4.0});
  CHECK(f.at(-0.001) == 2.0);
  CHECK(f.at(0.0) == 3.0);
  CHECK(f.at(0.999) == 3.0);
  CHECK(f.at(1.0) == 4.0);
  CHECK(f.p_minus() == 2.0);
  CHECK(f.p_plus() == 4.0);

  const ExponentSequence p(-1, {1.5, 3.0, 2.5}, 2.0);
  const ExponentFunction e = ExponentFunction::from_sequence(p);
  for (Index k = -1; k <= 1; ++k) {
    const double c = static_cast<double>(k);
    CHECK(e.at(c - 0.5) == p.at(k));
    CHECK(e.at(c) == p.at(k));
    CHECK(e.at(c + 0.4999) == p.at(k));
  }
  CHECK(e.at(-1.5001) == 2.0);
  CHECK(e.at(1.5) == 2.0);
  CHECK(e.at(-100.0) == 2.0);
  CHECK(e.at(100.0) == 2.0);
  CHECK(e.left_tail() == 2.0);
  CHECK(e.right_tail() == 2.0);

  // Breakpoints sit on half integers, including when a cover widens the window.
  const ExponentFunction wide = ExponentFunction::from_sequence(p, IndexRange{-3, 4});
  for (double b : wide.breakpoints()) CHECK(b - std::floor(b) == 0.5);
  CHECK(wide.at(3.2) == 2.0);
}

TEST_CASE("log-Holder: constant exponent passes with zero constants") {
  for (double q : {1.2, 2.0, 7.5}) {
    const LogHolderReport r = check_log_holder(ExponentFunction::constant(q), SampleGrid{});
    CHECK(r.passed_local);
    CHECK(r.passed_infinity);
    CHECK(r.c0 == 0.0);
    CHECK(r.c_inf == 0.0);
    CHECK(r.p_inf == q);
  }
  const ExponentFunction flat = ExponentFunction::from_sequence(ExponentSequence(0, {3, 3, 3}, 3));
  const LogHolderReport r = check_log_holder(flat, SampleGrid{-4, 4, 0.01});
  CHECK(r.passed_local);
  CHECK(r.c0 == 0.0);
  CHECK(r.c_inf == 0.0);
}

TEST_CASE("log-Holder: a jump fails the local condition structurally") {
  const ExponentFunction jump({0.0}, {2.0, 3.0});
  const LogHolderReport r = check_log_holder(jump, SampleGrid{});
  CHECK_FALSE(r.passed_local);
  CHECK(std::isinf(r.c0));
  CHECK(r.local_witness_x == 0.0);
  // Unequal tails: no limit at infinity.
  CHECK_FALSE(r.passed_infinity);

  const ExponentFunction bump({0.0, 1.0}, {2.0, 3.0, 2.0});
  const LogHolderReport b = check_log_holder(bump, SampleGrid{});
  CHECK_FALSE(b.passed_local);
  CHECK(b.passed_infinity);
  // |3 - 2| log(e + |x|), sampled sup on [0, 1) is at x = 0.875.
  CHECK(b.c_inf == doctest::Approx(std::log(std::numbers::e + 0.875)).epsilon(1e-14));
}

TEST_CASE("log-Holder: jump detector fires exactly on adjacent differences") {
  SplitMix64 rng(5);
  for (int t = 0; t < 300; ++t) {
    std::vector<double> v(1 + rng.below(6));
    for (auto& x : v) x = rng.below(2) ? 2.0 : 2.5;
    const double tail = rng.below(2) ? 2.0 : 2.5;
    const ExponentSequence p(0, v, tail);
    bool differs = tail != v.front() || tail != v.back();
    for (std::size_t i = 0; i + 1 < v.size(); ++i) differs = differs || v[i] != v[i + 1];
    const LogHolderReport r = check_log_holder(ExponentFunction::from_sequence(p), SampleGrid{-2, 8, 0.25});
    CHECK(r.passed_local == !differs);
  }
}

TEST_CASE("log-Holder: logarithmic decay to the tail") {
  // p_k = 2 + 1 / log(e + |k|) on integer pieces.
  std::vector<double> v;
  for (Index k = -40; k <= 40; ++k) v.push_back(2.0 + 1.0 / std::log(std::numbers::e + std::abs(static_cast<double>(k))));
  const ExponentFunction p = ExponentFunction::from_sequence(ExponentSequence(-40, v, 2.0));

  // On the cell centres the ratio is exactly one.
  const LogHolderReport centres = check_log_holder(p, SampleGrid{-40, 40, 1.0});
  CHECK(centres.passed_infinity);
  CHECK(centres.c_inf <= 1.01);
  CHECK(centres.c_inf == doctest::Approx(1.0).epsilon(1e-14));

  // Finer sampling reaches x = -1/2 in the k = 0 cell: log(e + 1/2) / log(e).
  const LogHolderReport fine = check_log_holder(p, SampleGrid{-40, 40, 0.125});
  CHECK(fine.passed_infinity);
  CHECK(fine.c_inf == doctest::Approx(std::log(std::numbers::e + 0.5)).epsilon(1e-14));
  CHECK_FALSE(fine.passed_local);
}

TEST_CASE("sample grid validation") {
  CHECK_THROWS_AS(SampleGrid({0, 1, 0}).points(), InvalidArgument);
  CHECK_THROWS_AS(SampleGrid({1, 0, 0.5}).points(), InvalidArgument);
  CHECK(SampleGrid({0, 1, 0.25}).points().size() == 5);
}
