#include <doctest.h>

#include <cmath>

#include "varseq/io.hpp"

using namespace varseq;
using io::json;

namespace {

std::string field_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const io::ParseError& e) {
    return e.field();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("sequence round trip") {
  const Sequence b(-3, {1.5, 0.0, -2.25});
  const io::ParsedSequence back = io::sequence_from_json(io::to_json(b));
  CHECK_FALSE(back.complex);
  const Sequence r = back.real();
  CHECK(r.window_start() == -3);
  REQUIRE(r.size() == 3);
  CHECK(r.at(-1) == -2.25);

  const ComplexSequence c(2, {{1, 2}, {0, -1}});
  const io::ParsedSequence cb = io::sequence_from_json(io::to_json(c));
  CHECK(cb.complex);
  CHECK(cb.values.at(3) == Complex(0, -1));
  CHECK(field_of([&] { (void)cb.real("values"); }) == "values[0]");
}

TEST_CASE("parse errors name the field") {
  CHECK(field_of([] { io::sequence_from_json(json::parse(R"({"values":[1]})")); }) == "sequence.window_start");
  CHECK(field_of([] { io::sequence_from_json(json::parse(R"({"window_start":0,"values":[1,"x"]})")); }) ==
        "sequence.values[1]");
  CHECK(field_of([] { io::sequence_from_json(json::parse(R"({"window_start":0,"values":[[1]]})")); }) ==
        "sequence.values[0]");
  CHECK(field_of([] { io::exponent_from_json(json::parse(R"({"window_start":0,"values":[2],"tail":0.5})")); }) ==
        "p");
  CHECK(field_of([] { io::step_from_json(json::parse(R"({"breakpoints":["1/3"],"values":[]})")); }) ==
        "f.breakpoints[0]");
  CHECK_THROWS_AS(io::parse_json("{", "inline"), io::ParseError);
  CHECK_THROWS_AS(io::read_json_file("/nonexistent/file.json"), io::ParseError);
  CHECK_THROWS_AS(io::load_symbol("nope"), io::ParseError);
}

TEST_CASE("exponent and step round trip") {
  const ExponentSequence p(-1, {1.5, 3.0}, 2.0);
  const ExponentSequence q = io::exponent_from_json(io::to_json(p));
  CHECK(q.at(-1) == 1.5);
  CHECK(q.at(0) == 3.0);
  CHECK(q.tail() == 2.0);
  CHECK_THROWS_AS(io::exponent_from_json(json::parse(R"({"window_start":0,"values":[1],"tail":2})")), io::ParseError);
  CHECK(io::exponent_from_json(json::parse(R"({"window_start":0,"values":[1],"tail":2})"), "p", true).at(0) == 1.0);

  const StepFunction f({-1, 1, 3}, {2.0, -1.0});
  const StepFunction g = io::step_from_json(io::to_json(f));
  CHECK(g.at(0.0) == 2.0);
  CHECK(g.at(0.5) == -1.0);
  CHECK(g.piece_count() == 2);
}

TEST_CASE("non-finite numbers serialize as strings") {
  NormEstimate e;
  e.lower_bound = std::numeric_limits<double>::infinity();
  CHECK(io::to_json(e)["lower_bound"] == "inf");
  CheckRecord c;
  c.name = "x";
  c.observed = std::nan("");
  CHECK(io::to_json(c)["observed"] == "nan");
}

TEST_CASE("report csv") {
  Report r;
  r.suite = "s";
  r.seed = 3;
  CheckRecord c;
  c.name = "a,b";
  c.source = "src";
  c.inputs_digest = "00";
  c.observed = 1;
  c.bound = 2;
  c.margin = 1;
  c.passed = true;
  r.checks.push_back(c);
  const std::string csv = io::report_csv(r);
  CHECK(csv.rfind("suite,seed,name,source,inputs_digest,observed,bound,margin,tolerance,passed,informational,note\n",
                  0) == 0);
  CHECK(csv.find("\"a,b\"") != std::string::npos);
  const json j = io::to_json(r);
  CHECK(j["passed"] == true);
  CHECK(!j.contains("generated_at"));
  CHECK(io::dump(j).back() == '\n');
}
