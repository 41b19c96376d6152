#include "varseq/families.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "varseq/rng.hpp"

namespace varseq {

namespace {

double parse_number(const std::string& text, const std::string& spec) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw InvalidArgument("malformed number '" + text + "' in family '" + spec + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

}  // namespace

ExponentFamily ExponentFamily::parse(const std::string& spec) {
  ExponentFamily f;
  f.spec_ = spec;
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw InvalidArgument("exponent family '" + spec + "' needs the form kind:args");
  const std::string kind = spec.substr(0, colon);
  const std::string args = spec.substr(colon + 1);

  if (kind == "const") {
    f.kind_ = Kind::constant;
    f.a_ = f.b_ = f.tail_ = parse_number(args, spec);
  } else if (kind == "alternating") {
    const auto ab = split(args, '/');
    if (ab.size() != 2) throw InvalidArgument("family '" + spec + "' needs alternating:<a>/<b>");
    f.kind_ = Kind::alternating;
    f.a_ = parse_number(ab[0], spec);
    f.b_ = parse_number(ab[1], spec);
    f.tail_ = f.a_;
  } else if (kind == "lh") {
    f.kind_ = Kind::lh;
    f.a_ = f.tail_ = parse_number(args, spec);
  } else if (kind == "random") {
    const auto parts = split(args, ':');
    const auto ab = split(parts[0], '/');
    if (ab.size() != 2 || parts.size() > 2) throw InvalidArgument("family '" + spec + "' needs random:<lo>/<hi>[:<seed>]");
    f.kind_ = Kind::random;
    f.a_ = parse_number(ab[0], spec);
    f.b_ = parse_number(ab[1], spec);
    f.seed_ = parts.size() == 2 ? static_cast<std::uint64_t>(parse_number(parts[1], spec)) : 0;
    f.tail_ = 0.5 * (f.a_ + f.b_);
  } else {
    throw InvalidArgument("unknown exponent family '" + spec + "'");
  }
  // Validates every parameter as an exponent.
  (void)ExponentSequence(0, {f.a_, f.b_}, f.tail_);
  return f;
}

double ExponentFamily::at(Index n) const {
  switch (kind_) {
    case Kind::constant:
      return a_;
    case Kind::alternating:
      return (n % 2 == 0) ? a_ : b_;
    case Kind::lh:
      return a_ + 1.0 / std::log(std::numbers::e + std::abs(static_cast<double>(n)));
    case Kind::random: {
      const auto zigzag = static_cast<std::uint64_t>(n >= 0 ? 2 * n : -2 * n - 1);
      return SplitMix64::stream(seed_, zigzag).uniform(a_, b_);
    }
  }
  return tail_;
}

ExponentSequence ExponentFamily::materialize(IndexRange window) const {
  std::vector<double> v;
  v.reserve(window.size());
  for (Index n = window.first; n <= window.last; ++n) v.push_back(at(n));
  return ExponentSequence(window.first, std::move(v), tail_);
}

}  // namespace varseq
