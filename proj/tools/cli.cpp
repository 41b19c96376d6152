#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "varseq/embed.hpp"
#include "varseq/exponent.hpp"
#include "varseq/families.hpp"
#include "varseq/hilbert.hpp"
#include "varseq/io.hpp"
#include "varseq/multiplier.hpp"
#include "varseq/space.hpp"
#include "varseq/verify.hpp"

namespace varseq::cli {

namespace {

using io::json;
using io::ParseError;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "seed",          "tol",        "format",      "out",           "input",
      "p",             "method",     "window",      "padding",       "symbol",
      "grid_size",     "B",          "suite",       "trials",        "families",
      "windows",       "half_width", "samples_per_cell", "norm_trials", "ascent_passes",
      "ascent_coords_per_pass", "saturation_threshold", "symbols", "multiplier_family",
      "command"};
  return keys;
}

// Merged view of the config file and the flags; flags win.
class Config {
 public:
  explicit Config(json j) : j_(std::move(j)) {
    if (!j_.is_object()) throw ParseError("config", "expected a JSON object");
    for (const auto& [key, value] : j_.items()) {
      if (!known_keys().count(key)) throw ParseError(key, "unknown config key");
    }
  }

  template <typename T>
  void set(const std::string& key, const std::optional<T>& v) {
    if (v) j_[key] = *v;
  }
  void set_list(const std::string& key, const std::vector<std::string>& v) {
    if (!v.empty()) j_[key] = v;
  }

  bool has(const std::string& key) const { return j_.contains(key) && !j_[key].is_null(); }
  const json& raw(const std::string& key) const {
    if (!has(key)) throw UsageError(key + " is required");
    return j_[key];
  }

  std::string str(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    if (!j_[key].is_string()) throw ParseError(key, "expected a string");
    return j_[key].get<std::string>();
  }
  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    if (!j_[key].is_number()) throw ParseError(key, "expected a number");
    return j_[key].get<double>();
  }
  std::uint64_t unsigned_int(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    if (!j_[key].is_number_unsigned()) throw ParseError(key, "expected a nonnegative integer");
    return j_[key].get<std::uint64_t>();
  }
  Index integer(const std::string& key, Index fallback) const {
    if (!has(key)) return fallback;
    if (!j_[key].is_number_integer()) throw ParseError(key, "expected an integer");
    return j_[key].get<Index>();
  }
  std::vector<std::string> strings(const std::string& key, std::vector<std::string> fallback) const {
    if (!has(key)) return fallback;
    const json& a = j_[key];
    if (!a.is_array()) throw ParseError(key, "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i].is_string()) throw ParseError(key + "[" + std::to_string(i) + "]", "expected a string");
      out.push_back(a[i].get<std::string>());
    }
    return out;
  }
  std::vector<Index> integers(const std::string& key, std::vector<Index> fallback) const {
    if (!has(key)) return fallback;
    const json& a = j_[key];
    if (!a.is_array()) throw ParseError(key, "expected an array of integers");
    std::vector<Index> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i].is_number_integer()) throw ParseError(key + "[" + std::to_string(i) + "]", "expected an integer");
      out.push_back(a[i].get<Index>());
    }
    return out;
  }

  double tol(double fallback) const {
    const double t = number("tol", fallback);
    if (!(t > 0.0) || !std::isfinite(t)) throw ParseError("tol", "must be a positive finite number");
    return t;
  }

 private:
  json j_;
};

struct Output {
  std::ostream& out;
  std::string format;
  std::string path;

  void emit(const json& j, const std::string& csv) const {
    const std::string text = format == "csv" ? csv : io::dump(j);
    if (path.empty()) {
      out << text;
    } else {
      io::write_text(path, text);
    }
  }
};

std::string csv_num(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

// Objects pass through; strings are inline JSON when they start with '{', paths otherwise.
json resolve_json(const json& spec, const std::string& field) {
  if (spec.is_object()) return spec;
  if (!spec.is_string()) throw ParseError(field, "expected a path or an inline object");
  const std::string s = spec.get<std::string>();
  if (!s.empty() && s.front() == '{') return io::parse_json(s, field);
  return io::read_json_file(s);
}

json load_input(const Config& cfg) {
  return resolve_json(cfg.raw("input"), "input");
}

bool is_family(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) return false;
  const std::string kind = s.substr(0, colon);
  return kind == "const" || kind == "alternating" || kind == "lh" || kind == "random";
}

std::optional<double> as_constant(const json& spec) {
  if (spec.is_number()) return spec.get<double>();
  if (!spec.is_string()) return std::nullopt;
  const std::string s = spec.get<std::string>();
  std::size_t used = 0;
  try {
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}


ExponentSequence exponent_sequence(const Config& cfg, IndexRange window, bool allow_one = false) {
  const json& spec = cfg.raw("p");
  try {
    if (const auto q = as_constant(spec)) {
      return allow_one ? ExponentSequence::allowing_one(0, {}, *q) : ExponentSequence::constant(*q);
    }
    if (spec.is_string() && is_family(spec.get<std::string>())) {
      return ExponentFamily::parse(spec.get<std::string>()).materialize(window);
    }
    if (!spec.is_string() && !spec.is_object()) throw ParseError("p", "expected a family, a number, a path or an object");
    return io::exponent_from_json(resolve_json(spec, "p"), "p", allow_one);
  } catch (const InvalidArgument& e) {
    throw ParseError("p", e.what());
  }
}

ExponentFunction exponent_function(const Config& cfg, IndexRange cover) {
  const json& spec = cfg.raw("p");
  try {
    if (const auto q = as_constant(spec)) return ExponentFunction::constant(*q);
    if (spec.is_string() && is_family(spec.get<std::string>())) {
      return ExponentFunction::from_sequence(ExponentFamily::parse(spec.get<std::string>()).materialize(cover), cover);
    }
    const json j = resolve_json(spec, "p");
    if (j.contains("pieces")) {
      const json& bps = j.at("breakpoints");
      std::vector<double> b;
      for (std::size_t i = 0; i < bps.size(); ++i) {
        const std::string f = "p.breakpoints[" + std::to_string(i) + "]";
        if (bps[i].is_string()) {
          b.push_back(static_cast<double>(parse_quarter(bps[i].get<std::string>())) / 4.0);
        } else if (bps[i].is_number()) {
          b.push_back(bps[i].get<double>());
        } else {
          throw ParseError(f, "expected a number or \"k/4\"");
        }
      }
      std::vector<double> pieces;
      for (std::size_t i = 0; i < j.at("pieces").size(); ++i) {
        const json& v = j.at("pieces")[i];
        if (!v.is_number()) throw ParseError("p.pieces[" + std::to_string(i) + "]", "expected a number");
        pieces.push_back(v.get<double>());
      }
      return ExponentFunction(std::move(b), std::move(pieces));
    }
    return ExponentFunction::from_sequence(io::exponent_from_json(j, "p"), cover);
  } catch (const InvalidArgument& e) {
    throw ParseError("p", e.what());
  } catch (const json::exception& e) {
    throw ParseError("p", e.what());
  }
}

IndexRange parse_window(const json& w) {
  if (w.is_array() && w.size() == 2 && w[0].is_number_integer() && w[1].is_number_integer()) {
    return {w[0].get<Index>(), w[1].get<Index>()};
  }
  if (w.is_string()) {
    const std::string s = w.get<std::string>();
    const auto colon = s.find(':', 1);
    try {
      if (colon != std::string::npos) {
        std::size_t u1 = 0;
        std::size_t u2 = 0;
        const std::string a = s.substr(0, colon);
        const std::string b = s.substr(colon + 1);
        const Index lo = std::stoll(a, &u1);
        const Index hi = std::stoll(b, &u2);
        if (u1 == a.size() && u2 == b.size()) return {lo, hi};
      }
    } catch (const std::exception&) {
    }
  }
  throw ParseError("window", "expected \"first:last\" or [first, last]");
}

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

// ---------------------------------------------------------------- commands

int cmd_norm(const Config& cfg, const Output& out) {
  const double tol = cfg.tol(kDefaultNormTolerance);
  const json input = load_input(cfg);
  NormResult r;
  if (input.is_object() && input.contains("breakpoints")) {
    const StepFunction f = io::step_from_json(input, "input");
    IndexRange cover{};
    if (f.piece_count() > 0) {
      cover = {static_cast<Index>(std::floor(f.breakpoint(0))),
               static_cast<Index>(std::ceil(f.breakpoint(f.piece_count())))};
    }
    r = luxemburg_norm_step(f, exponent_function(cfg, cover), tol);
  } else {
    const io::ParsedSequence s = io::sequence_from_json(input, "input");
    const ExponentSequence p = exponent_sequence(cfg, s.values.window(), true);
    r = s.complex ? luxemburg_norm_seq(s.values, p, tol) : luxemburg_norm_seq(s.real("input.values"), p, tol);
  }
  std::ostringstream csv;
  csv << "value,modular_at_value,iterations,tolerance_met\n"
      << csv_num(r.value) << ',' << csv_num(r.modular_at_value) << ',' << r.iterations << ','
      << (r.tolerance_met ? "true" : "false") << '\n';
  out.emit(io::to_json(r), csv.str());
  return r.tolerance_met ? kOk : kToleranceMissed;
}

int cmd_hilbert(const Config& cfg, const Output& out) {
  const Sequence b = io::sequence_from_json(load_input(cfg), "input").real("input.values");
  const std::string method = cfg.str("method", "fft");
  HilbertOptions opts;
  if (method == "direct") {
    opts.method = HilbertMethod::direct;
  } else if (method == "fft") {
    opts.method = HilbertMethod::fft;
  } else {
    throw ParseError("method", "expected direct or fft");
  }
  const Index padding = cfg.integer("padding", 0);
  if (padding < 0) throw ParseError("padding", "must be nonnegative");
  IndexRange window = cfg.has("window") ? parse_window(cfg.raw("window")) : b.window().expanded(padding);
  Sequence hb = window.empty() ? Sequence(b.window_start(), {}) : discrete_hilbert(b, window, opts);

  std::ostringstream csv;
  csv << "n,value\n";
  for (std::size_t i = 0; i < hb.size(); ++i) {
    csv << hb.window_start() + static_cast<Index>(i) << ',' << csv_num(hb.values()[i]) << '\n';
  }
  out.emit(io::to_json(hb), csv.str());
  return kOk;
}

int cmd_multiplier(const Config& cfg, const Output& out) {
  const io::ParsedSequence s = io::sequence_from_json(load_input(cfg), "input");
  const Symbol m = io::load_symbol(cfg.str("symbol", "one"));
  const std::size_t len = s.values.size();
  ComplexSequence tb(s.values.window_start(), {});
  if (len > 0) {
    const auto fallback = static_cast<Index>(std::max<std::size_t>(64, next_pow2(2 * len)));
    const Index grid = cfg.integer("grid_size", fallback);
    if (grid <= 0) throw ParseError("grid_size", "must be positive");
    try {
      tb = apply_multiplier(m, s.values, static_cast<std::size_t>(grid));
    } catch (const InvalidArgument& e) {
      throw ParseError("grid_size", e.what());
    }
  }
  std::ostringstream csv;
  csv << "n,re,im\n";
  for (std::size_t i = 0; i < tb.size(); ++i) {
    csv << tb.window_start() + static_cast<Index>(i) << ',' << csv_num(tb.values()[i].real()) << ','
        << csv_num(tb.values()[i].imag()) << '\n';
  }
  out.emit(io::to_json(tb), csv.str());
  return kOk;
}

int cmd_mikhlin(const Config& cfg, const Output& out) {
  const Symbol m = io::load_symbol(cfg.str("symbol", "one"));
  double B = 0.0;
  if (cfg.has("B")) {
    B = cfg.number("B", 0.0);
  } else if (m.bound_B()) {
    B = *m.bound_B() * (1.0 + 1e-9);
  } else {
    throw UsageError("B is required for symbol '" + m.name() + "' (no known bound)");
  }
  const Index grid = cfg.integer("grid_size", 4096);
  if (grid <= 0) throw ParseError("grid_size", "must be positive");
  MikhlinReport r;
  try {
    r = mikhlin_check(m, B, static_cast<std::size_t>(grid));
  } catch (const InvalidArgument& e) {
    throw ParseError("grid_size", e.what());
  }

  json j;
  j["symbol"] = m.name();
  j["mikhlin"] = io::to_json(r);
  bool ok = r.passed;
  std::ostringstream csv;
  csv << "symbol,B,order0,order1,order2,order3,passed,domain_limited,verdict\n"
      << m.name() << ',' << csv_num(B);
  for (double v : r.max_ratio_per_order) csv << ',' << csv_num(v);
  csv << ',' << (r.passed ? "true" : "false") << ',' << (r.domain_limited ? "true" : "false") << ",\""
      << r.verdict << "\"\n";
  if (cfg.has("p")) {
    // Families are materialized on a window (default [-64, 64]) with their tail outside.
    const IndexRange cover = cfg.has("window") ? parse_window(cfg.raw("window")) : IndexRange::centered(64);
    const ExponentFunction p = exponent_function(cfg, cover);
    j["p_window"] = json::array({cover.first, cover.last});
    j["hypotheses"] = io::to_json(check_hypotheses(p));
    j["log_holder"] = io::to_json(check_log_holder(p, SampleGrid{}));
  }
  out.emit(j, csv.str());
  return ok ? kOk : kCheckFailed;
}

SuiteConfig suite_config(const Config& cfg) {
  SuiteConfig s;
  s.seed = cfg.unsigned_int("seed", s.seed);
  s.trials = static_cast<std::size_t>(cfg.unsigned_int("trials", s.trials));
  s.half_width = cfg.integer("half_width", s.half_width);
  s.samples_per_cell = static_cast<std::size_t>(cfg.unsigned_int("samples_per_cell", s.samples_per_cell));
  s.windows = cfg.integers("windows", s.windows);
  s.families = cfg.strings("families", s.families);
  s.norm_trials = static_cast<std::size_t>(cfg.unsigned_int("norm_trials", s.norm_trials));
  s.ascent_passes = static_cast<int>(cfg.integer("ascent_passes", s.ascent_passes));
  s.ascent_coords_per_pass =
      static_cast<std::size_t>(cfg.unsigned_int("ascent_coords_per_pass", s.ascent_coords_per_pass));
  s.saturation_threshold = cfg.number("saturation_threshold", s.saturation_threshold);
  s.symbols = cfg.strings("symbols", s.symbols);
  s.multiplier_family = cfg.str("multiplier_family", s.multiplier_family);
  s.tol = cfg.tol(s.tol);
  if (s.half_width < 1) throw ParseError("half_width", "must be at least 1");
  for (std::size_t i = 0; i < s.windows.size(); ++i) {
    if (s.windows[i] < 1) throw ParseError("windows[" + std::to_string(i) + "]", "must be at least 1");
  }
  return s;
}

std::string suite_usage() {
  std::string s = "known suites:";
  for (const auto& n : suite_names()) s += " " + n;
  return s;
}

int cmd_verify(const Config& cfg, const Output& out, std::ostream& err) {
  const std::string name = cfg.str("suite", "");
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw UsageError((name.empty() ? std::string("no suite given") : "unknown suite '" + name + "'") + "\n" +
                     "usage: varseq verify <suite> [--seed N] [--config FILE] [--out FILE] [--format json|csv]\n" +
                     suite_usage());
  }
  const Report rep = run_suite(name, suite_config(cfg));
  out.emit(io::to_json(rep), io::report_csv(rep));
  if (!rep.passed()) {
    for (const CheckRecord& c : rep.checks) {
      if (!c.passed && !c.informational) err << "FAILED " << c.name << " margin=" << c.margin << "\n";
    }
    return kCheckFailed;
  }
  return kOk;
}

int cmd_sweep(const Config& cfg, const Output& out) {
  const SuiteConfig s = suite_config(cfg);
  json rows = json::array();
  std::ostringstream csv;
  csv << "family,half_width,p_bar,pointwise_constant,lower_bound,method,trials,relative_increment\n";
  for (const std::string& spec : s.families) {
    ExponentFamily fam = [&] {
      try {
        return ExponentFamily::parse(spec);
      } catch (const InvalidArgument& e) {
        throw ParseError("families", e.what());
      }
    }();
    std::optional<Sequence> warm;
    double previous = 0.0;
    for (Index half : s.windows) {
      const IndexRange w = IndexRange::centered(half);
      const ExponentSequence p = fam.materialize(w);
      EstimateOptions opts;
      opts.ascent_passes = s.ascent_passes;
      opts.ascent_coords_per_pass = s.ascent_coords_per_pass;
      opts.warm_start = warm;
      const NormEstimate est = estimate_operator_norm(p, w, s.norm_trials, s.seed, opts);
      const double constant = pointwise_bound(p.p_bar()).constant;
      json row;
      row["family"] = spec;
      row["half_width"] = half;
      row["p_bar"] = p.p_bar();
      row["pointwise_constant"] = constant;
      row["lower_bound"] = est.lower_bound;
      row["method"] = std::string(method_name(est.method));
      row["trials"] = est.trials;
      std::string inc_text;
      if (warm) {
        const double inc = (est.lower_bound - previous) / previous;
        row["relative_increment"] = inc;
        inc_text = csv_num(inc);
      } else {
        row["relative_increment"] = nullptr;
      }
      rows.push_back(row);
      csv << spec << ',' << half << ',' << csv_num(p.p_bar()) << ',' << csv_num(constant) << ','
          << csv_num(est.lower_bound) << ',' << method_name(est.method) << ',' << est.trials << ',' << inc_text
          << '\n';
      previous = est.lower_bound;
      warm = est.witness;
    }
  }
  json j;
  j["seed"] = s.seed;
  j["rows"] = rows;
  out.emit(j, csv.str());
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variable-exponent sequence spaces: norms, Hilbert transforms, multipliers and checks", "varseq"};
  app.fallthrough();
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_path;
  std::optional<std::string> format;
  std::optional<double> tol;
  app.add_option("--config", config_path, "JSON config file; flags override its entries");
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--out", out_path, "Output file (stdout when absent)");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tol", tol, "Tolerance");

  std::optional<std::string> input;
  std::optional<std::string> p;
  std::optional<std::string> method;
  std::optional<std::string> window;
  std::optional<Index> padding;
  std::optional<std::string> symbol;
  std::optional<Index> grid_size;
  std::optional<double> B;
  std::optional<std::string> suite;
  std::optional<std::uint64_t> trials;
  std::vector<std::string> families;
  std::vector<Index> windows;

  auto* norm = app.add_subcommand("norm", "Luxemburg norm of a sequence or step function");
  norm->add_option("--input", input, "Sequence or step-function JSON");
  norm->add_option("--p", p, "Exponent: number, family (e.g. alternating:1.5/3), JSON file or inline JSON");

  auto* hilbert = app.add_subcommand("hilbert", "Discrete Hilbert transform");
  hilbert->add_option("--input", input, "Sequence JSON");
  hilbert->add_option("--method", method, "direct or fft")->check(CLI::IsMember({"direct", "fft"}));
  hilbert->add_option("--window", window, "Output window first:last");
  hilbert->add_option("--padding", padding, "Widen the input window by this much on each side");

  auto* mult = app.add_subcommand("multiplier", "Apply a Fourier multiplier");
  mult->add_option("--input", input, "Sequence JSON (real or [re, im] entries)");
  mult->add_option("--symbol", symbol, "one, shift, sgn, riesz_tau:<t>, linear or grid:<path>");
  mult->add_option("--grid-size", grid_size, "Power of two, at least twice the window length");

  auto* mikhlin = app.add_subcommand("mikhlin", "Derivative condition for a symbol, plus exponent hypotheses");
  mikhlin->add_option("--symbol", symbol, "Symbol name");
  mikhlin->add_option("--B", B, "Constant to test against");
  mikhlin->add_option("--grid-size", grid_size, "Number of frequency samples");
  mikhlin->add_option("--p", p, "Exponent to test against the multiplier hypotheses");
  mikhlin->add_option("--window", window, "Window first:last on which a family exponent is materialized");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite,--suite", suite, suite_usage());
  verify->add_option("--trials", trials, "Random trials per suite");

  auto* sweep = app.add_subcommand("sweep", "Operator-norm lower bounds over families and windows");
  sweep->add_option("--family", families, "Exponent family (repeatable)");
  sweep->add_option("--window", windows, "Half-width (repeatable)");
  sweep->add_option("--trials", trials, "Random samples per estimate");

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    Config cfg(config_path ? io::read_json_file(*config_path) : json::object());
    cfg.set("seed", seed);
    cfg.set("tol", tol);
    cfg.set("format", format);
    cfg.set("out", out_path);
    cfg.set("input", input);
    cfg.set("p", p);
    cfg.set("method", method);
    cfg.set("window", window);
    cfg.set("padding", padding);
    cfg.set("symbol", symbol);
    cfg.set("grid_size", grid_size);
    cfg.set("B", B);
    cfg.set("suite", suite);
    if (sweep->parsed()) {
      cfg.set("norm_trials", trials);
    } else {
      cfg.set("trials", trials);
    }
    cfg.set_list("families", families);
    if (!windows.empty()) {
      json w = json::array();
      for (Index h : windows) w.push_back(h);
      cfg.set("windows", std::optional<json>(w));
    }

    const std::string fmt = cfg.str("format", "json");
    if (fmt != "json" && fmt != "csv") throw ParseError("format", "expected json or csv");
    const Output o{out, fmt, cfg.str("out", "")};

    if (norm->parsed()) return cmd_norm(cfg, o);
    if (hilbert->parsed()) return cmd_hilbert(cfg, o);
    if (mult->parsed()) return cmd_multiplier(cfg, o);
    if (mikhlin->parsed()) return cmd_mikhlin(cfg, o);
    if (verify->parsed()) return cmd_verify(cfg, o, err);
    if (sweep->parsed()) return cmd_sweep(cfg, o);
    err << app.help();
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
}

}  // namespace varseq::cli
