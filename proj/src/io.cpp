#include "varseq/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace varseq::io {

namespace {

// JSON has no infinities; spell them out so reports stay parseable.
json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

const json& require(const json& j, const std::string& key, const std::string& field) {
  if (!j.is_object()) throw ParseError(field, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(field.empty() ? key : field + "." + key, "missing");
  return *it;
}

double as_double(const json& j, const std::string& field) {
  if (!j.is_number()) throw ParseError(field, "expected a number");
  return j.get<double>();
}

Index as_index(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ParseError(field, "expected an integer");
  return j.get<Index>();
}

std::string join(const std::string& a, const std::string& b) { return a.empty() ? b : a + "." + b; }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

}  // namespace

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin, std::string("malformed JSON (") + e.what() + ")");
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), "cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_json(text.str(), path.string());
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

ExponentSequence exponent_from_json(const json& j, const std::string& field, bool allow_one) {
  const Index start = as_index(require(j, "window_start", field), join(field, "window_start"));
  const json& vals = require(j, "values", field);
  if (!vals.is_array()) throw ParseError(join(field, "values"), "expected an array");
  std::vector<double> v;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    v.push_back(as_double(vals[i], join(field, "values[" + std::to_string(i) + "]")));
  }
  const double tail = as_double(require(j, "tail", field), join(field, "tail"));
  try {
    return allow_one ? ExponentSequence::allowing_one(start, std::move(v), tail)
                     : ExponentSequence(start, std::move(v), tail);
  } catch (const InvalidArgument& e) {
    throw ParseError(field, e.what());
  }
}

json to_json(const ExponentSequence& p) {
  json j;
  j["window_start"] = p.window_start();
  j["values"] = json::array();
  for (double v : p.values()) j["values"].push_back(v);
  j["tail"] = p.tail();
  return j;
}

Sequence ParsedSequence::real(const std::string& field) const {
  std::vector<double> v;
  v.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values.values()[i].imag() != 0.0) {
      throw ParseError(field + "[" + std::to_string(i) + "]", "complex entry where a real sequence is required");
    }
    v.push_back(values.values()[i].real());
  }
  return Sequence(values.window_start(), std::move(v));
}

ParsedSequence sequence_from_json(const json& j, const std::string& field) {
  const Index start = as_index(require(j, "window_start", field), join(field, "window_start"));
  const json& vals = require(j, "values", field);
  if (!vals.is_array()) throw ParseError(join(field, "values"), "expected an array");
  ParsedSequence out;
  std::vector<Complex> v;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const std::string f = join(field, "values[" + std::to_string(i) + "]");
    const json& e = vals[i];
    if (e.is_array()) {
      if (e.size() != 2) throw ParseError(f, "complex entries are [re, im]");
      v.emplace_back(as_double(e[0], f + "[0]"), as_double(e[1], f + "[1]"));
      out.complex = true;
    } else {
      v.emplace_back(as_double(e, f), 0.0);
    }
    if (!std::isfinite(v.back().real()) || !std::isfinite(v.back().imag())) throw ParseError(f, "not finite");
  }
  out.values = ComplexSequence(start, std::move(v));
  return out;
}

json to_json(const Sequence& b) {
  json j;
  j["window_start"] = b.window_start();
  j["values"] = json::array();
  for (double v : b.values()) j["values"].push_back(num(v));
  return j;
}

json to_json(const ComplexSequence& b) {
  json j;
  j["window_start"] = b.window_start();
  j["values"] = json::array();
  for (const Complex& v : b.values()) j["values"].push_back(json::array({num(v.real()), num(v.imag())}));
  return j;
}

StepFunction step_from_json(const json& j, const std::string& field) {
  const json& bps = require(j, "breakpoints", field);
  const json& vals = require(j, "values", field);
  if (!bps.is_array()) throw ParseError(join(field, "breakpoints"), "expected an array");
  if (!vals.is_array()) throw ParseError(join(field, "values"), "expected an array");
  std::vector<Index> q;
  for (std::size_t i = 0; i < bps.size(); ++i) {
    const std::string f = join(field, "breakpoints[" + std::to_string(i) + "]");
    if (bps[i].is_number_integer()) {
      q.push_back(4 * bps[i].get<Index>());
      continue;
    }
    if (!bps[i].is_string()) throw ParseError(f, "expected a string like \"k/4\"");
    try {
      q.push_back(parse_quarter(bps[i].get<std::string>()));
    } catch (const InvalidArgument& e) {
      throw ParseError(f, e.what());
    }
  }
  std::vector<double> v;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    v.push_back(as_double(vals[i], join(field, "values[" + std::to_string(i) + "]")));
  }
  try {
    return StepFunction(std::move(q), std::move(v));
  } catch (const InvalidArgument& e) {
    throw ParseError(field, e.what());
  }
}

json to_json(const StepFunction& f) {
  json j;
  j["breakpoints"] = json::array();
  for (Index q : f.quarters()) j["breakpoints"].push_back(format_quarter(q));
  j["values"] = json::array();
  for (double v : f.values()) j["values"].push_back(v);
  return j;
}

json to_json(const NormResult& r) {
  json j;
  j["value"] = num(r.value);
  j["modular_at_value"] = num(r.modular_at_value);
  j["iterations"] = r.iterations;
  j["tolerance_met"] = r.tolerance_met;
  return j;
}

json to_json(const PointwiseBound& b) {
  json j;
  j["p_bar"] = num(b.p_bar);
  j["constant"] = num(b.constant);
  return j;
}

json to_json(const MikhlinReport& r) {
  json j;
  j["max_ratio_per_order"] = json::array();
  for (double v : r.max_ratio_per_order) j["max_ratio_per_order"].push_back(num(v));
  j["B"] = num(r.B);
  j["passed"] = r.passed;
  j["worst_xi"] = num(r.worst_xi);
  j["worst_order"] = r.worst_order;
  j["analytic_derivatives"] = r.analytic_derivatives;
  j["domain_limited"] = r.domain_limited;
  j["non_finite"] = r.non_finite;
  j["verdict"] = r.verdict;
  return j;
}

json to_json(const MultiplierHypotheses& h) {
  json j;
  j["p_minus"] = num(h.p_minus);
  j["p_plus"] = num(h.p_plus);
  j["q"] = num(h.q);
  j["d_measure"] = num(h.d_measure);
  j["d_intervals"] = json::array();
  for (const auto& [a, b] : h.d_intervals) j["d_intervals"].push_back(json::array({num(a), num(b)}));
  j["one_in_lr"] = h.one_in_lr;
  j["in_range"] = h.in_range;
  j["satisfied"] = h.satisfied;
  j["r_description"] = h.r_description;
  return j;
}

json to_json(const LogHolderReport& r) {
  json j;
  j["c0"] = num(r.c0);
  j["c_inf"] = num(r.c_inf);
  j["p_inf"] = num(r.p_inf);
  j["passed_local"] = r.passed_local;
  j["passed_infinity"] = r.passed_infinity;
  j["local_witness"] = json::array({num(r.local_witness_x), num(r.local_witness_y)});
  j["infinity_witness"] = num(r.infinity_witness);
  return j;
}

json to_json(const NormEstimate& e) {
  json j;
  j["lower_bound"] = num(e.lower_bound);
  j["method"] = std::string(method_name(e.method));
  j["trials"] = e.trials;
  j["window"] = json::array({e.window.first, e.window.last});
  j["witness"] = to_json(e.witness);
  return j;
}

json to_json(const CheckRecord& c) {
  json j;
  j["name"] = c.name;
  j["source"] = c.source;
  j["inputs_digest"] = c.inputs_digest;
  j["observed"] = num(c.observed);
  j["bound"] = num(c.bound);
  j["margin"] = num(c.margin);
  j["tolerance"] = num(c.tolerance);
  j["passed"] = c.passed;
  j["informational"] = c.informational;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

json to_json(const Report& r) {
  json j;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["environment"] = r.environment;
  if (r.generated_at) j["generated_at"] = *r.generated_at;
  j["passed"] = r.passed();
  j["notes"] = r.notes;
  j["checks"] = json::array();
  for (const CheckRecord& c : r.checks) j["checks"].push_back(to_json(c));
  return j;
}

std::string report_csv(const Report& r) {
  std::ostringstream out;
  out << "suite,seed,name,source,inputs_digest,observed,bound,margin,tolerance,passed,informational,note\n";
  for (const CheckRecord& c : r.checks) {
    out << csv_escape(r.suite) << ',' << r.seed << ',' << csv_escape(c.name) << ',' << csv_escape(c.source) << ','
        << c.inputs_digest << ',' << csv_number(c.observed) << ',' << csv_number(c.bound) << ','
        << csv_number(c.margin) << ',' << csv_number(c.tolerance) << ',' << (c.passed ? "true" : "false") << ','
        << (c.informational ? "true" : "false") << ',' << csv_escape(c.note) << '\n';
  }
  return out.str();
}

Symbol load_symbol(const std::string& name) {
  if (name.rfind("grid:", 0) != 0) {
    try {
      return Symbol::from_name(name);
    } catch (const InvalidArgument& e) {
      throw ParseError("symbol", e.what());
    }
  }
  const std::string path = name.substr(5);
  const json j = read_json_file(path);
  if (!j.is_array() || j.empty()) throw ParseError(path, "grid symbol must be a nonempty array of [xi, re, im]");
  std::vector<std::pair<double, Complex>> samples;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 3) throw ParseError(f, "expected [xi, re, im]");
    samples.emplace_back(as_double(j[i][0], f + "[0]"),
                         Complex(as_double(j[i][1], f + "[1]"), as_double(j[i][2], f + "[2]")));
  }
  try {
    return Symbol::grid(std::move(samples));
  } catch (const InvalidArgument& e) {
    throw ParseError(path, e.what());
  }
}

}  // namespace varseq::io
