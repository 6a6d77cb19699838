#include "ecdenom/curve.hpp"

#include "ecdenom/errors.hpp"

namespace ecd {

CurveModel make_curve(const Integer& a1, const Integer& a2, const Integer& a3,
                      const Integer& a4, const Integer& a6) {
  CurveModel c;
  c.a1 = a1;
  c.a2 = a2;
  c.a3 = a3;
  c.a4 = a4;
  c.a6 = a6;
  c.b2 = a1 * a1 + 4 * a2;
  c.b4 = 2 * a4 + a1 * a3;
  c.b6 = a3 * a3 + 4 * a6;
  c.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  c.c4 = c.b2 * c.b2 - 24 * c.b4;
  c.c6 = -c.b2 * c.b2 * c.b2 + 36 * c.b2 * c.b4 - 216 * c.b6;
  c.disc = -c.b2 * c.b2 * c.b8 - 8 * c.b4 * c.b4 * c.b4 - 27 * c.b6 * c.b6 +
           9 * c.b2 * c.b4 * c.b6;
  if (sgn(c.disc) == 0) throw SingularCurve();
  return c;
}

std::string Point::to_string() const {
  if (is_infinity()) return "O";
  return "(" + x().get_str() + ", " + y().get_str() + ")";
}

bool point_less(const Point& a, const Point& b) {
  if (a.is_infinity() || b.is_infinity()) return a.is_infinity() && !b.is_infinity();
  if (a.x() != b.x()) return a.x() < b.x();
  return a.y() < b.y();
}

bool on_curve(const CurveModel& c, const Point& p) {
  if (p.is_infinity()) return true;
  const Rational& x = p.x();
  const Rational& y = p.y();
  Rational lhs = y * (y + c.a1 * x + c.a3);
  Rational rhs = ((x + c.a2) * x + c.a4) * x + c.a6;
  return lhs == rhs;
}

namespace {

void require_on_curve(const CurveModel& c, const Point& p) {
  if (!on_curve(c, p)) throw NotOnCurve("point " + p.to_string() + " is not on the curve");
}

}  // namespace

Point negate_trusted(const CurveModel& c, const Point& p) {
  if (p.is_infinity()) return p;
  return Point(p.x(), -p.y() - c.a1 * p.x() - c.a3);
}

Point negate(const CurveModel& c, const Point& p) {
  require_on_curve(c, p);
  return negate_trusted(c, p);
}

Point add_trusted(const CurveModel& c, const Point& p, const Point& q) {
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  const Rational& x1 = p.x();
  const Rational& y1 = p.y();
  const Rational& x2 = q.x();
  const Rational& y2 = q.y();

  Rational lambda;
  if (x1 == x2) {
    // Same x: either Q = -P, or Q = P (tangent).
    Rational denom = y1 + y2 + c.a1 * x2 + c.a3;
    if (sgn(denom) == 0) return Point::infinity();
    // Here y1 = y2, and the tangent denominator 2y + a1x + a3 equals denom.
    lambda = (3 * x1 * x1 + 2 * c.a2 * x1 + c.a4 - c.a1 * y1) / denom;
  } else {
    lambda = (y2 - y1) / (x2 - x1);
  }
  Rational nu = y1 - lambda * x1;
  Rational x3 = lambda * lambda + c.a1 * lambda - c.a2 - x1 - x2;
  Rational y3 = -(lambda + c.a1) * x3 - nu - c.a3;
  return Point(std::move(x3), std::move(y3));
}

Point add(const CurveModel& c, const Point& p, const Point& q) {
  require_on_curve(c, p);
  require_on_curve(c, q);
  return add_trusted(c, p, q);
}

Point scalar_mul_trusted(const CurveModel& c, const Integer& n, const Point& p) {
  if (sgn(n) == 0 || p.is_infinity()) return Point::infinity();
  Integer k = abs(n);
  Point base = sgn(n) < 0 ? negate_trusted(c, p) : p;
  Point acc;
  for (long bit = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
    acc = add_trusted(c, acc, acc);
    if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) acc = add_trusted(c, acc, base);
  }
  return acc;
}

Point scalar_mul(const CurveModel& c, const Integer& n, const Point& p) {
  require_on_curve(c, p);
  return scalar_mul_trusted(c, n, p);
}

DenomTriple denom_form(const CurveModel& c, const Point& p) {
  if (p.is_infinity()) throw InfinityHasNoDenominator();
  (void)c;
  const Integer& xden = p.x().get_den();
  IsqrtResult sq = isqrt_exact(xden);
  if (!sq.exact) {
    throw MalformedPoint("x-denominator " + xden.get_str() + " is not a perfect square");
  }
  DenomTriple t{p.x().get_num(), p.y().get_num(), std::move(sq.root)};
  if (p.y().get_den() != t.z * t.z * t.z) {
    throw MalformedPoint("y-denominator " + p.y().get_den().get_str() + " is not z^3 for z = " +
                         t.z.get_str());
  }
  return t;
}

bool triple_is_valid(const CurveModel& c, const DenomTriple& t) {
  if (t.z < 1) return false;
  if (gcd(t.x, t.z) != 1 || gcd(t.y, t.z) != 1) return false;
  Integer z2 = t.z * t.z;
  Integer z3 = z2 * t.z;
  Integer z4 = z2 * z2;
  Integer z6 = z3 * z3;
  Integer lhs = t.y * t.y + c.a1 * t.x * t.y * t.z + c.a3 * t.y * z3;
  Integer rhs = t.x * t.x * t.x + c.a2 * t.x * t.x * z2 + c.a4 * t.x * z4 + c.a6 * z6;
  return lhs == rhs;
}

}  // namespace ecd
