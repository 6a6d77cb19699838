#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ecdenom/arith.hpp"
#include "ecdenom/curve.hpp"

namespace ecd {

/// Y^2 = X^3 + A X + B with A = -27 c4, B = -54 c6, reached from the
/// general model by X = 36x + 3b2, Y = 108(2y + a1x + a3).
struct ShortModel {
  Integer A, B;
  CurveModel curve;   // [0, 0, 0, A, B]
  CurveModel source;  // the model this one was derived from

  Point forward(const Point& p) const;
  Point inverse(const Point& p) const;

  /// 4A^3 + 27B^2; Nagell-Lutz bounds Y^2 of torsion points by divisors of it.
  Integer nagell_lutz_discriminant() const;
};

ShortModel to_short(const CurveModel& c);

struct TorsionStructure {
  enum class Kind { cyclic, product };
  Kind kind = Kind::cyclic;
  /// Order n for Z/n; 2m for Z/2 x Z/2m.
  unsigned n = 1;

  std::size_t order() const { return kind == Kind::cyclic ? n : 2u * n; }
  std::string to_string() const;

  friend bool operator==(const TorsionStructure&, const TorsionStructure&) = default;
};

struct TorsionGroup {
  /// points[0] is O; the rest are ordered by point_less.
  std::vector<Point> points;
  TorsionStructure structure;

  std::size_t order() const { return points.size(); }
  /// Throws PreconditionViolation if p is not a torsion point.
  std::size_t index_of(const Point& p) const;
  /// For each index i, the index of -points[i].
  std::vector<std::size_t> negation_table(const CurveModel& c) const;
};

/// Trivial group {O}.
TorsionGroup trivial_torsion();

/// Smallest k in 1..12 with kP = O, or 0 if there is none.
unsigned order_up_to_12(const CurveModel& c, const Point& p);

/// Nagell-Lutz on the short model, candidates filtered by the Mazur order
/// bound and mapped back. Throws FactoringTimeout if the short discriminant
/// cannot be factored within the options' budget.
TorsionGroup torsion_subgroup(const CurveModel& c, const FactorOptions& options = {});

/// All integer roots of X^3 + a X + b, ascending.
std::vector<Integer> integer_roots_depressed_cubic(const Integer& a, const Integer& b);

}  // namespace ecd
