#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "varseq/exponent.hpp"
#include "varseq/hilbert.hpp"
#include "varseq/multiplier.hpp"
#include "varseq/space.hpp"
#include "varseq/verify.hpp"

namespace varseq::io {

using json = nlohmann::ordered_json;

/// Malformed input. `field` names the offending JSON path, e.g. "values[3]".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

json parse_json(const std::string& text, const std::string& origin);
json read_json_file(const std::filesystem::path& path);
/// Two-space indented dump with a trailing newline.
std::string dump(const json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

/// With allow_one set, exponents equal to 1 are accepted (norm computations only).
ExponentSequence exponent_from_json(const json& j, const std::string& field = "p", bool allow_one = false);
json to_json(const ExponentSequence& p);

/// Real and complex sequences share one format; a complex value is [re, im].
struct ParsedSequence {
  ComplexSequence values;
  bool complex = false;
  /// Throws ParseError when any entry has a nonzero imaginary part.
  Sequence real(const std::string& field = "values") const;
};
ParsedSequence sequence_from_json(const json& j, const std::string& field = "sequence");
json to_json(const Sequence& b);
json to_json(const ComplexSequence& b);

StepFunction step_from_json(const json& j, const std::string& field = "f");
json to_json(const StepFunction& f);

json to_json(const NormResult& r);
json to_json(const PointwiseBound& b);
json to_json(const MikhlinReport& r);
json to_json(const MultiplierHypotheses& h);
json to_json(const LogHolderReport& r);
json to_json(const NormEstimate& e);
json to_json(const CheckRecord& c);
json to_json(const Report& r);

/// One row per check, header first.
std::string report_csv(const Report& r);

/// Registry names plus "grid:<path>", a JSON array of [xi, re, im].
Symbol load_symbol(const std::string& name);

}  // namespace varseq::io
