#include "ecdenom/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "ecdenom/errors.hpp"

namespace ecd {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Scalars

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

Integer parse_integer(std::string_view text) {
  std::string_view digits = text;
  bool negative = false;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    negative = digits.front() == '-';
    digits.remove_prefix(1);
  }
  if (!all_digits(digits)) throw ParseError("'" + std::string(text) + "' is not an integer");
  Integer v(std::string(digits), 10);
  return negative ? Integer(-v) : v;
}

unsigned long parse_exponent(std::string_view text, std::string_view whole) {
  if (!all_digits(text) || text.size() > 6) {
    throw ParseError("'" + std::string(whole) + "': bad exponent");
  }
  return std::stoul(std::string(text));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!all_digits(den_text)) throw ParseError("'" + std::string(text) + "': bad denominator");
  Integer den(std::string(den_text), 10);
  if (sgn(den) == 0) throw ParseError("'" + std::string(text) + "': zero denominator");
  return make_rational(num, den);
}

Integer parse_natural(std::string_view text) {
  if (auto caret = text.find('^'); caret != std::string_view::npos) {
    std::string_view base_text = text.substr(0, caret);
    if (!all_digits(base_text)) throw ParseError("'" + std::string(text) + "': bad base");
    Integer base(std::string(base_text), 10);
    Integer v;
    mpz_pow_ui(v.get_mpz_t(), base.get_mpz_t(), parse_exponent(text.substr(caret + 1), text));
    return v;
  }
  auto e = text.find_first_of("eE");
  std::string_view mantissa = text.substr(0, e);
  unsigned long exponent = e == std::string_view::npos ? 0 : parse_exponent(text.substr(e + 1), text);
  std::string digits(mantissa);
  if (auto dot = digits.find('.'); dot != std::string::npos) {
    std::size_t frac = digits.size() - dot - 1;
    digits.erase(dot, 1);
    // Drop trailing fractional zeros before checking integrality.
    while (frac > 0 && digits.back() == '0') {
      digits.pop_back();
      --frac;
    }
    if (frac > exponent) throw ParseError("'" + std::string(text) + "' is not an integer");
    exponent -= frac;
  }
  if (!all_digits(digits)) throw ParseError("'" + std::string(text) + "' is not a natural number");
  Integer v(digits, 10);
  Integer scale;
  Integer ten = 10;
  mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(), exponent);
  return v * scale;
}

std::string format_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// ---------------------------------------------------------------------------
// Curve files

namespace {

std::string line_col(std::string_view doc, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < doc.size(); ++i) {
    if (doc[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

Integer integer_field(const json& v, const std::string& where) {
  if (v.is_number_integer()) {
    return v.is_number_unsigned() ? Integer(std::to_string(v.get<std::uint64_t>()), 10)
                                  : Integer(std::to_string(v.get<std::int64_t>()), 10);
  }
  if (v.is_string()) {
    try {
      return parse_integer(v.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  throw ParseError(where + ": expected an integer or a decimal string");
}

Rational rational_field(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(integer_field(v, where));
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  throw ParseError(where + ": expected a rational string such as \"p/q\"");
}

}  // namespace

CurveInput parse_curve_input(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at " + line_col(document, e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError("curve file: top level must be an object");

  auto it = doc.find("a_invariants");
  if (it == doc.end()) throw ParseError("curve file: missing field 'a_invariants'");
  if (!it->is_array() || it->size() != 5) {
    throw ParseError("field 'a_invariants': expected an array of 5 integers");
  }
  std::vector<Integer> a;
  for (std::size_t i = 0; i < 5; ++i) {
    a.push_back(integer_field((*it)[i], "field 'a_invariants[" + std::to_string(i) + "]'"));
  }

  CurveInput input;
  input.curve = make_curve(a[0], a[1], a[2], a[3], a[4]);

  if (auto g = doc.find("generators"); g != doc.end()) {
    if (!g->is_array()) throw ParseError("field 'generators': expected an array of [x, y] pairs");
    for (std::size_t i = 0; i < g->size(); ++i) {
      const json& pair = (*g)[i];
      std::string where = "field 'generators[" + std::to_string(i) + "]'";
      if (!pair.is_array() || pair.size() != 2) throw ParseError(where + ": expected [x, y]");
      Point p(rational_field(pair[0], where + "[0]"), rational_field(pair[1], where + "[1]"));
      if (!on_curve(input.curve, p)) {
        throw GeneratorNotOnCurve(where + ": " + p.to_string() + " is not on the curve");
      }
      input.generators.push_back(std::move(p));
    }
  }
  if (auto m = doc.find("minimal"); m != doc.end()) {
    if (!m->is_boolean()) throw ParseError("field 'minimal': expected true or false");
    input.minimal = m->get<bool>();
  }
  if (auto l = doc.find("label"); l != doc.end()) {
    if (!l->is_string()) throw ParseError("field 'label': expected a string");
    input.label = l->get<std::string>();
  }
  return input;
}

// ---------------------------------------------------------------------------
// Reports

namespace {

std::string join_nvec(const NVec& n, char sep) {
  std::string out;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(n[i]);
  }
  return out;
}

json point_json(const Point& p) {
  if (p.is_infinity()) return "O";
  return json::array({p.x().get_str(), p.y().get_str()});
}

}  // namespace

std::string census_csv(const CensusResult& result) {
  std::string out = "nvec,torsion_index,z,log_z,is_prime,is_integral\n";
  for (const CensusRecord& r : result.records) {
    const EnumRecord& e = r.record;
    out += join_nvec(e.nvec, ';');
    out += ',';
    out += std::to_string(e.torsion_index);
    out += ',';
    out += e.triple.z.get_str();
    out += ',';
    out += format_fixed(e.log_z, 9);
    out += ',';
    out += r.is_prime ? "true" : "false";
    out += ',';
    out += e.triple.z == 1 ? "true" : "false";
    out += '\n';
  }
  return out;
}

json census_json(const CensusResult& result, const CurveInput& input) {
  json curve = json::object();
  const CurveModel& c = input.curve;
  curve["a_invariants"] =
      json::array({c.a1.get_str(), c.a2.get_str(), c.a3.get_str(), c.a4.get_str(), c.a6.get_str()});
  curve["discriminant"] = c.disc.get_str();
  curve["minimal"] = input.minimal;
  curve["label"] = input.label ? json(*input.label) : json(nullptr);
  json gens = json::array();
  for (const Point& g : input.generators) gens.push_back(point_json(g));
  curve["generators"] = gens;

  json records = json::array();
  for (const CensusRecord& r : result.records) {
    const EnumRecord& e = r.record;
    json rec = json::object();
    rec["nvec"] = e.nvec;
    rec["torsion_index"] = e.torsion_index;
    rec["x"] = e.triple.x.get_str();
    rec["y"] = e.triple.y.get_str();
    rec["z"] = e.triple.z.get_str();
    rec["log_z"] = e.log_z;
    rec["is_prime"] = r.is_prime;
    rec["is_integral"] = e.triple.z == 1;
    records.push_back(std::move(rec));
  }
  json cosets = json::array();
  for (const CosetCount& cc : result.per_coset) {
    cosets.push_back(json{{"torsion_index", cc.torsion_index},
                          {"total_count", cc.total},
                          {"prime_count", cc.prime}});
  }

  json j = json::object();
  j["curve"] = curve;
  j["max_z"] = result.max_z.get_str();
  j["rank"] = result.rank;
  j["total_count"] = result.total_count;
  j["prime_count"] = result.prime_count;
  j["shells_visited"] = result.shells_visited;
  j["stopping_shell"] = result.stopping_shell;
  j["c_hat"] = result.c_hat ? json(*result.c_hat) : json(nullptr);
  j["expected_prime_sum"] = result.expected_prime_sum;
  j["per_coset"] = cosets;
  j["records"] = records;
  if (result.total_count > 0 && result.max_z >= 16) {
    CorollaryRatio cr = corollary_ratio(result);
    j["ratio"] = cr.ratio;
    j["loglog_bound"] = cr.bound;
  }
  return j;
}

json torsion_json(const TorsionGroup& group) {
  json pts = json::array();
  for (const Point& p : group.points) pts.push_back(point_json(p));
  return json{{"order", group.order()},
              {"structure", group.structure.to_string()},
              {"points", pts}};
}

json div_report_json(const DivReport& report) {
  json fails = json::array();
  for (auto [r, n] : report.divisibility_failures) fails.push_back(json::array({r, n}));
  json exceptions = json::array();
  for (const LemmaException& e : report.primality_exceptions) {
    exceptions.push_back(json{{"n", e.n}, {"z", e.z.get_str()}});
  }
  return json{{"nmax", report.nmax},
              {"divisibility_failures", fails},
              {"primality_exceptions", exceptions},
              {"primitive_divisor_misses", report.primitive_divisor_misses}};
}

json growth_json(const GrowthFit& fit) {
  return json{{"c_hat", fit.c_hat},   {"C_hat", fit.C_hat}, {"slope", fit.slope},
              {"n_min", fit.n_min},   {"n_max", fit.n_max}, {"samples", fit.samples}};
}

json prediction_json(const Prediction& p) {
  return json{{"rank", p.rank},
              {"regime", to_string(p.regime)},
              {"exponent", p.exponent},
              {"value", p.value}};
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// SVG

std::string census_svg(const CensusResult& result, double kappa) {
  // Caps 10^1, 10^2, ... below the census cap, then the cap itself.
  std::vector<Integer> caps;
  for (Integer cap = 10; cap < result.max_z; cap *= 10) caps.push_back(cap);
  caps.push_back(result.max_z);

  struct Sample {
    double log10_z;
    double count;
    std::optional<double> predicted;
  };
  std::vector<Sample> samples;
  for (const Integer& cap : caps) {
    CensusResult sub = restrict_census(result, cap);
    Sample s{log_abs(cap) / std::log(10.0), static_cast<double>(sub.prime_count), std::nullopt};
    if (cap >= 16) s.predicted = heuristic_count(result.rank, cap, kappa).value;
    samples.push_back(s);
  }

  const double width = 640, height = 400, margin = 60;
  double x_max = std::max(1.0, samples.back().log10_z);
  double y_max = 1.0;
  for (const Sample& s : samples) {
    y_max = std::max(y_max, std::log10(1.0 + s.count));
    if (s.predicted) y_max = std::max(y_max, std::log10(1.0 + *s.predicted));
  }
  auto px = [&](double lx) { return margin + (width - 2 * margin) * std::log10(lx) / std::log10(x_max + 1.0); };
  auto py = [&](double count) {
    return height - margin - (height - 2 * margin) * std::log10(1.0 + count) / y_max;
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
      << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
      << height - margin << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << width / 2 << "\" y=\"" << height - 15
      << "\" text-anchor=\"middle\" font-size=\"13\">log10 Z (log scale)</text>\n"
      << "<text x=\"15\" y=\"" << height / 2 << "\" transform=\"rotate(-90 15 " << height / 2
      << ")\" text-anchor=\"middle\" font-size=\"13\">prime count + 1 (log scale)</text>\n";

  std::string path;
  for (const Sample& s : samples) {
    if (!s.predicted) continue;
    path += (path.empty() ? "M" : " L") + format_fixed(px(s.log10_z + 1.0), 2) + "," +
            format_fixed(py(*s.predicted), 2);
  }
  if (!path.empty()) {
    svg << "<path d=\"" << path << "\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\"/>\n";
  }
  for (const Sample& s : samples) {
    svg << "<circle cx=\"" << format_fixed(px(s.log10_z + 1.0), 2) << "\" cy=\""
        << format_fixed(py(s.count), 2) << "\" r=\"4\" fill=\"firebrick\"><title>log10 Z = "
        << format_fixed(s.log10_z, 2) << ", primes = " << s.count << "</title></circle>\n";
  }
  svg << "<text x=\"" << width - margin << "\" y=\"" << margin - 20
      << "\" text-anchor=\"end\" font-size=\"12\">observed (red), heuristic x " << kappa
      << " (blue)</text>\n"
      << "</svg>\n";
  return svg.str();
}

}  // namespace ecd
