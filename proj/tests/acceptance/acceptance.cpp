// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "varseq/embed.hpp"
#include "varseq/families.hpp"
#include "varseq/hilbert.hpp"
#include "varseq/io.hpp"
#include "varseq/multiplier.hpp"
#include "varseq/rng.hpp"
#include "varseq/space.hpp"
#include "varseq/verify.hpp"

using namespace varseq;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<double> random_values(SplitMix64& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(-1, 1);
  return v;
}

// 1. Norm against the classical l^q norm and the golden-ratio example.
Outcome norm_correctness() {
  SplitMix64 rng(101);
  double worst = 0.0;
  const double qs[] = {1.5, 2.0, 3.0};
  for (int t = 0; t < 1000; ++t) {
    const double q = qs[t % 3];
    const std::vector<double> v = random_values(rng, 1 + rng.below(200));
    const double got = luxemburg_norm_seq(Sequence(0, v), ExponentSequence::constant(q)).value;
    const double want = oracle::lq_norm(v, q);
    worst = std::max(worst, std::abs(got - want));
  }
  const double golden =
      luxemburg_norm_seq(Sequence(0, {1.0, 1.0}), ExponentSequence::allowing_one(0, {1.0, 2.0}, 2.0)).value;
  const double gerr = std::abs(golden - (1.0 + std::sqrt(5.0)) / 2.0);
  return {worst <= 1e-10 && gerr <= 1e-10, fmt("max |err| %.3g over 1000 sequences; golden-ratio err %.3g", worst, gerr)};
}

// 2. FFT against direct summation.
Outcome hilbert_equivalence() {
  SplitMix64 rng(102);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = t < 10 ? 4096 : 1 + rng.below(4096);
    const Index first = static_cast<Index>(rng.below(2000)) - 1000;
    const Sequence b(first, random_values(rng, n));
    const IndexRange out = b.window().expanded(static_cast<Index>(rng.below(64)));
    const Sequence d = discrete_hilbert(b, out, {HilbertMethod::direct, 0});
    const Sequence f = discrete_hilbert(b, out, {HilbertMethod::fft, 0});
    for (Index k = out.first; k <= out.last; ++k) worst = std::max(worst, std::abs(d.at(k) - f.at(k)));
  }
  return {worst <= 1e-9, fmt("max componentwise |fft - direct| %.3g over 100 sequences", worst)};
}

// 3. Pointwise bound on random unit vectors.
Outcome pointwise() {
  SplitMix64 rng(103);
  std::string detail;
  std::size_t violations = 0;
  for (double p : {1.5, 2.0, 3.0, 8.0}) {
    const double c = pointwise_bound(p).constant;
    double worst = 0.0;
    for (int t = 0; t < 10000; ++t) {
      const std::size_t n = 1 + rng.below(64);
      std::vector<double> v = random_values(rng, n);
      const double norm = oracle::lq_norm(v, p);
      for (auto& x : v) x /= norm;
      const Sequence b(0, v);
      const Sequence hb = discrete_hilbert(b, b.window().expanded(8), {HilbertMethod::direct, 0});
      double m = 0.0;
      for (double x : hb.values()) m = std::max(m, std::abs(x));
      worst = std::max(worst, m);
      if (m > c + 1e-9) ++violations;
    }
    detail += fmt("p=%g max %.4f <= %.4f; ", p, worst, c);
  }
  return {violations == 0, detail + fmt("violations %zu", violations)};
}

// 4. Modular of the embedding.
Outcome embedding_identity() {
  SplitMix64 rng(104);
  double worst_rel = 0.0;
  double worst_abs = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng.below(40);
    const Index first = static_cast<Index>(rng.below(40)) - 20;
    const Sequence b(first, random_values(rng, n));
    std::vector<double> ps(n);
    for (auto& x : ps) x = rng.uniform(1.05, 4.0);
    const ExponentSequence p(first, ps, 2.0);
    const Embedding e = embed(b, p);
    const double lhs = modular_step(e.f, e.pfun);
    long double rhs = 0.0L;
    for (std::size_t i = 0; i < n; ++i) rhs += std::pow(2.0L * std::numbers::pi_v<long double> * std::abs(b.values()[i]), ps[i]);
    rhs /= 2.0L;
    const double err = std::abs(lhs - static_cast<double>(rhs));
    worst_abs = std::max(worst_abs, err);
    worst_rel = std::max(worst_rel, err / std::max(1.0, static_cast<double>(rhs)));
  }
  return {worst_rel <= 1e-12,
          fmt("max err %.3g relative to max(1, rhs); absolute %.3g", worst_rel, worst_abs)};
}

// 5. G1 bound on every cell.
Outcome g1_bound() {
  SplitMix64 rng(105);
  const double eps = 1e-3;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst = -1e300;
  for (int t = 0; t < 100; ++t) {
    const Sequence b(-8, random_values(rng, 17));
    const Embedding e = embed(b, ExponentSequence::constant(2.0));
    for (Index n = -8; n <= 8; ++n) {
      const GDecomposition g = g_decompose(e, n);
      const double bound = g.g1_bound();
      for (int s = 0; s < 1000; ++s) {
        const double t_off = -0.5 + (s + 0.5) / 1000.0;
        if (std::abs(std::abs(t_off) - 0.25) < eps) continue;
        const double v = std::abs(g.g1(static_cast<double>(n) + t_off));
        ++samples;
        worst = std::max(worst, v - bound);
        if (v > bound) ++violations;
      }
    }
  }
  return {violations == 0 && samples > 0,
          fmt("%zu samples, violations %zu, max (|G1| - bound) %.4g", samples, violations, worst)};
}

// 6. l^2 ceiling and finite sections.
Outcome l2_ceiling() {
  EstimateOptions opts;
  const NormEstimate e = estimate_operator_norm(ExponentSequence::constant(2.0), IndexRange::centered(2048), 500, 106, opts);
  std::vector<double> sections;
  for (Index N : {128, 256, 512, 1024}) sections.push_back(finite_section_norm(N));
  const bool monotone = std::is_sorted(sections.begin(), sections.end());
  const bool in_range = e.lower_bound >= 2.9 && e.lower_bound <= kPi + 1e-6;
  return {monotone && in_range,
          fmt("lower_bound %.6f via %s (%zu candidates); sections %.6f %.6f %.6f %.6f", e.lower_bound,
              std::string(method_name(e.method)).c_str(), e.trials, sections[0], sections[1], sections[2],
              sections[3])};
}

// 7. Saturation across window doublings; reuses the theorem13 suite.
Report theorem13_report;

Outcome saturation() {
  SuiteConfig cfg;
  cfg.windows = {256, 512, 1024};
  theorem13_report = run_suite("theorem13", cfg);
  std::string detail;
  bool ok = true;
  for (const CheckRecord& c : theorem13_report.checks) {
    if (c.informational) continue;
    if (c.name.rfind("saturation", 0) == 0 || c.name.rfind("envelope", 0) == 0) {
      ok = ok && c.passed;
      if (c.name.rfind("saturation", 0) == 0 || !c.passed) {
        detail += fmt("%s=%.4f (limit %.4f)%s; ", c.name.c_str(), c.observed, c.bound, c.passed ? "" : " FAIL");
      }
    }
  }
  return {ok && theorem13_report.passed(), detail};
}

// 8. Spectral multiplier correctness.
Outcome multiplier() {
  SplitMix64 rng(108);
  double id_err = 0.0;
  double shift_err = 0.0;
  double sgn_excess = -1e300;
  double planch = -1e300;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng.below(128);
    const Sequence b(static_cast<Index>(rng.below(64)) - 32, random_values(rng, n));
    const std::size_t M = std::max<std::size_t>(2, std::bit_ceil(2 * n));
    const ComplexSequence id = apply_multiplier(Symbol::one(), b, M);
    const ComplexSequence sh = apply_multiplier(Symbol::shift(), b, M);
    const ComplexSequence sg = apply_multiplier(Symbol::sgn(), b, M);
    double bn = 0.0;
    double tn = 0.0;
    for (double v : b.values()) bn += v * v;
    for (const Complex& z : sg.values()) tn += std::norm(z);
    for (Index k = id.window().first; k <= id.window().last; ++k) {
      id_err = std::max(id_err, std::abs(id.at(k) - b.at(k)));
      shift_err = std::max(shift_err, std::abs(sh.at(k) - b.at(k - 1)));
    }
    planch = std::max(planch, std::sqrt(tn) - std::sqrt(bn));
  }
  for (std::size_t M : {1024u, 4096u}) {
    const ComplexSequence h = apply_multiplier(Symbol::sgn(), Sequence::unit(0), M);
    double worst = 0.0;
    for (Index k = h.window().first; k <= h.window().last; ++k) {
      worst = std::max(worst, std::abs(h.at(k) - oracle::sgn_coefficient(k)));
    }
    sgn_excess = std::max(sgn_excess, worst - 10.0 / static_cast<double>(M));
  }
  const bool ok = id_err <= 1e-12 && shift_err <= 1e-12 && sgn_excess <= 0.0 && planch <= 1e-9;
  return {ok, fmt("identity err %.3g; shift err %.3g; sgn err - 10/M %.3g; max(||Tb|| - ||b||) %.3g", id_err,
                  shift_err, sgn_excess, planch)};
}

// 9. Derivative-condition verdicts.
Outcome mikhlin() {
  const MikhlinReport one = mikhlin_check(Symbol::one(), 1.0 + 1e-9, 4096);
  const MikhlinReport sgn = mikhlin_check(Symbol::sgn(), 1.0 + 1e-9, 4096);
  const MikhlinReport riesz = mikhlin_check(Symbol::riesz(1.0), *Symbol::riesz(1.0).bound_B() * (1 + 1e-9), 4096);
  const MikhlinReport lin = mikhlin_check(Symbol::linear(), 1.0, 4096);
  const bool ok = one.passed && sgn.passed && riesz.passed && std::isfinite(riesz.B) && lin.domain_limited &&
                  Symbol::linear().mikhlin_on_real_line() == false;
  return {ok, fmt("one %s, sgn %s, riesz_tau:1 %s (B=%.6f), linear %s", one.verdict.c_str(), sgn.verdict.c_str(),
                  riesz.verdict.c_str(), riesz.B, lin.verdict.c_str())};
}

// 10. Byte-identical reruns of every suite.
Outcome determinism() {
  std::string detail;
  bool ok = true;
  for (const std::string& name : suite_names()) {
    SuiteConfig cfg;
    std::string a;
    std::string b;
    if (name == "theorem13") {
      a = io::dump(io::to_json(theorem13_report));
      cfg.windows = {256, 512, 1024};
    } else {
      a = io::dump(io::to_json(run_suite(name, cfg)));
    }
    b = io::dump(io::to_json(run_suite(name, cfg)));
    const bool same = a == b;
    ok = ok && same;
    detail += name + (same ? " identical; " : " DIFFERS; ");
  }
  return {ok, detail};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"norm correctness", 5, norm_correctness},
      {"hilbert fft/direct equivalence", 30, hilbert_equivalence},
      {"pointwise bound", 60, pointwise},
      {"embedding modular identity", 5, embedding_identity},
      {"G1 bound", 120, g1_bound},
      {"l2 ceiling", 300, l2_ceiling},
      {"theorem13 saturation", 600, saturation},
      {"multiplier correctness", 60, multiplier},
      {"mikhlin verdicts", 10, mikhlin},
      {"determinism", 600, determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= criteria[i].budget_s;
    const bool pass = o.passed && in_time;
    if (!pass) ++failures;
    std::printf("%s %2zu %s [%.1fs / %.0fs%s]: %s\n", pass ? "PASS" : "FAIL", i + 1, criteria[i].name, secs,
                criteria[i].budget_s, in_time ? "" : " over budget", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
