#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ecdenom/arith.hpp"

namespace ecd {

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with integer coefficients,
/// together with the standard b- and c-invariants and the discriminant.
struct CurveModel {
  Integer a1, a2, a3, a4, a6;
  Integer b2, b4, b6, b8;
  Integer c4, c6;
  Integer disc;

  friend bool operator==(const CurveModel& l, const CurveModel& r) {
    return l.a1 == r.a1 && l.a2 == r.a2 && l.a3 == r.a3 && l.a4 == r.a4 && l.a6 == r.a6;
  }
};

/// Throws SingularCurve when the discriminant vanishes.
CurveModel make_curve(const Integer& a1, const Integer& a2, const Integer& a3,
                      const Integer& a4, const Integer& a6);

/// A rational point: either the point at infinity O (default-constructed)
/// or an affine pair.
class Point {
 public:
  Point() = default;
  Point(Rational x, Rational y) : xy_(Affine{std::move(x), std::move(y)}) {}

  static Point infinity() { return Point(); }

  bool is_infinity() const { return !xy_.has_value(); }
  const Rational& x() const { return xy_->x; }
  const Rational& y() const { return xy_->y; }

  friend bool operator==(const Point& a, const Point& b) {
    if (a.is_infinity() || b.is_infinity()) return a.is_infinity() == b.is_infinity();
    return a.x() == b.x() && a.y() == b.y();
  }

  std::string to_string() const;

 private:
  struct Affine {
    Rational x, y;
  };
  std::optional<Affine> xy_;
};

/// Strict weak order on points: O first, then by x, then by y.
bool point_less(const Point& a, const Point& b);

bool on_curve(const CurveModel& c, const Point& p);

Point negate(const CurveModel& c, const Point& p);
Point add(const CurveModel& c, const Point& p, const Point& q);
Point scalar_mul(const CurveModel& c, const Integer& n, const Point& p);

/// Group law without the on-curve validation; callers must guarantee both
/// inputs lie on c. Used on hot paths where inputs are closed under the law.
Point add_trusted(const CurveModel& c, const Point& p, const Point& q);
Point negate_trusted(const CurveModel& c, const Point& p);
Point scalar_mul_trusted(const CurveModel& c, const Integer& n, const Point& p);

/// P = (x / z^2, y / z^3) with z >= 1 and gcd(x, z) = gcd(y, z) = 1.
struct DenomTriple {
  Integer x, y, z;

  friend bool operator==(const DenomTriple& a, const DenomTriple& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

/// Throws InfinityHasNoDenominator for O and MalformedPoint when the
/// coordinate denominators are not of the form z^2, z^3.
DenomTriple denom_form(const CurveModel& c, const Point& p);

/// z >= 1, both gcd conditions, and the weighted-homogeneous equation.
bool triple_is_valid(const CurveModel& c, const DenomTriple& t);

}  // namespace ecd
