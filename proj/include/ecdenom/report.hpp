#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ecdenom/census.hpp"
#include "ecdenom/curve.hpp"
#include "ecdenom/lattice.hpp"
#include "ecdenom/torsion.hpp"

namespace ecd {

/// Parsed contents of a JSON curve file:
///   {"a_invariants": [a1, a2, a3, a4, a6],
///    "generators": [["x", "y"], ...],
///    "minimal": true, "label": "37a1"}
/// Invariants may be JSON integers or decimal strings; coordinates are
/// decimal strings, "p/q" strings, or JSON integers.
struct CurveInput {
  CurveModel curve;
  std::vector<Point> generators;
  std::optional<std::string> label;
  /// User's assertion that the model is minimal; echoed, never checked.
  bool minimal = false;
};

/// Throws ParseError (with line/field context), SingularCurve or
/// GeneratorNotOnCurve.
CurveInput parse_curve_input(std::string_view document);

/// Decimal or "p/q" rational.
Rational parse_rational(std::string_view text);

/// Non-negative integer given as digits, "AeB" (A may carry a decimal
/// fraction as long as the result is integral) or "A^B".
Integer parse_natural(std::string_view text);

/// Columns: nvec,torsion_index,z,log_z,is_prime,is_integral. LF endings.
std::string census_csv(const CensusResult& result);

/// Canonical JSON: sorted keys, exact quantities as decimal strings.
nlohmann::json census_json(const CensusResult& result, const CurveInput& input);
nlohmann::json torsion_json(const TorsionGroup& group);
nlohmann::json div_report_json(const DivReport& report);
nlohmann::json growth_json(const GrowthFit& fit);
nlohmann::json prediction_json(const Prediction& p);

/// Two-space indented dump with a trailing newline.
std::string dump_canonical(const nlohmann::json& j);

/// Log-scale scatter of (Z, prime count) over a grid of caps up to the
/// census cap, with the heuristic prediction (scaled by kappa) overlaid.
std::string census_svg(const CensusResult& result, double kappa = 1.0);

/// Fixed-notation decimal with `digits` places.
std::string format_fixed(double v, int digits);

}  // namespace ecd
