#include "ecdenom/torsion.hpp"

#include <algorithm>
#include <functional>

#include "ecdenom/errors.hpp"

namespace ecd {

ShortModel to_short(const CurveModel& c) {
  ShortModel s;
  s.A = -27 * c.c4;
  s.B = -54 * c.c6;
  s.curve = make_curve(0, 0, 0, s.A, s.B);
  s.source = c;
  return s;
}

Point ShortModel::forward(const Point& p) const {
  if (p.is_infinity()) return p;
  const CurveModel& c = source;
  Rational X = 36 * p.x() + 3 * c.b2;
  Rational Y = 108 * (2 * p.y() + c.a1 * p.x() + c.a3);
  return Point(std::move(X), std::move(Y));
}

Point ShortModel::inverse(const Point& p) const {
  if (p.is_infinity()) return p;
  const CurveModel& c = source;
  Rational x = (p.x() - 3 * c.b2) / 36;
  Rational y = (p.y() / 108 - c.a1 * x - c.a3) / 2;
  return Point(std::move(x), std::move(y));
}

Integer ShortModel::nagell_lutz_discriminant() const { return 4 * A * A * A + 27 * B * B; }

std::string TorsionStructure::to_string() const {
  if (kind == Kind::cyclic) return n == 1 ? "trivial" : "Z/" + std::to_string(n);
  return "Z/2 x Z/" + std::to_string(n);
}

std::size_t TorsionGroup::index_of(const Point& p) const {
  auto it = std::find(points.begin(), points.end(), p);
  if (it == points.end()) throw PreconditionViolation(p.to_string() + " is not a torsion point");
  return static_cast<std::size_t>(it - points.begin());
}

std::vector<std::size_t> TorsionGroup::negation_table(const CurveModel& c) const {
  std::vector<std::size_t> table(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) table[i] = index_of(negate_trusted(c, points[i]));
  return table;
}

TorsionGroup trivial_torsion() {
  TorsionGroup t;
  t.points.push_back(Point::infinity());
  return t;
}

unsigned order_up_to_12(const CurveModel& c, const Point& p) {
  Point acc = p;
  for (unsigned k = 1; k <= 12; ++k) {
    if (acc.is_infinity()) return k;
    acc = add_trusted(c, acc, p);
  }
  return 0;
}

namespace {

// Largest x in [lo, hi] with f(x) <= 0 for increasing f (or f(x) >= 0 for
// decreasing f), then checks f(x) == 0.
void find_root_monotone(const std::function<Integer(const Integer&)>& f, Integer lo, Integer hi,
                        bool increasing, std::vector<Integer>& roots) {
  if (lo > hi) return;
  auto below = [&](const Integer& x) {
    Integer v = f(x);
    return increasing ? sgn(v) <= 0 : sgn(v) >= 0;
  };
  if (!below(lo)) return;
  while (lo < hi) {
    Integer mid = lo + (hi - lo + 1) / 2;
    if (below(mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  if (sgn(f(lo)) == 0) roots.push_back(lo);
}

std::vector<Integer> divisors_with_square_dividing(const Factorization& f) {
  std::vector<Integer> ds{1};
  for (const auto& pp : f) {
    std::size_t existing = ds.size();
    Integer power = 1;
    for (unsigned e = 1; e <= pp.exponent / 2; ++e) {
      power *= pp.prime;
      for (std::size_t i = 0; i < existing; ++i) ds.push_back(ds[i] * power);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

TorsionStructure identify_structure(const CurveModel& c, const std::vector<Point>& pts) {
  std::size_t order = pts.size();
  unsigned two_torsion = 0;
  unsigned max_order = 1;
  for (const Point& p : pts) {
    unsigned k = order_up_to_12(c, p);
    if (k == 0 || order % k != 0) {
      throw InvariantViolation("torsion point " + p.to_string() + " has inconsistent order");
    }
    if (k == 2) ++two_torsion;
    max_order = std::max(max_order, k);
  }
  TorsionStructure s;
  if (two_torsion == 3) {
    s.kind = TorsionStructure::Kind::product;
    s.n = static_cast<unsigned>(order / 2);
    bool mazur = (s.n == 2 || s.n == 4 || s.n == 6 || s.n == 8) && max_order == s.n;
    if (!mazur) throw InvariantViolation("torsion structure outside Mazur's list");
  } else {
    s.kind = TorsionStructure::Kind::cyclic;
    s.n = static_cast<unsigned>(order);
    bool mazur = (s.n <= 10 || s.n == 12) && max_order == s.n;
    if (!mazur) throw InvariantViolation("torsion structure outside Mazur's list");
  }
  return s;
}

}  // namespace

std::vector<Integer> integer_roots_depressed_cubic(const Integer& a, const Integer& b) {
  auto f = [&](const Integer& x) -> Integer { return (x * x + a) * x + b; };
  // Cauchy bound on the real roots.
  Integer bound = 1 + std::max(abs(a), abs(b));
  std::vector<Integer> roots;
  if (sgn(a) >= 0) {
    find_root_monotone(f, -bound, bound, true, roots);
  } else {
    // Critical points at +-sqrt(-a/3); u = floor of that.
    Integer u = isqrt_exact(Integer(-a / 3)).root;
    find_root_monotone(f, -bound, -u - 1, true, roots);
    find_root_monotone(f, -u, u, false, roots);
    find_root_monotone(f, u + 1, bound, true, roots);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

TorsionGroup torsion_subgroup(const CurveModel& c, const FactorOptions& options) {
  ShortModel s = to_short(c);
  Integer nl_disc = s.nagell_lutz_discriminant();
  Factorization f = factor(abs(nl_disc), options);

  std::vector<Point> candidates;
  for (const Integer& X : integer_roots_depressed_cubic(s.A, s.B)) candidates.emplace_back(X, 0);
  for (const Integer& d : divisors_with_square_dividing(f)) {
    for (const Integer& X : integer_roots_depressed_cubic(s.A, s.B - d * d)) {
      candidates.emplace_back(X, d);
      candidates.emplace_back(X, -d);
    }
  }

  TorsionGroup group;
  group.points.push_back(Point::infinity());
  for (const Point& cand : candidates) {
    if (order_up_to_12(s.curve, cand) == 0) continue;
    Point back = s.inverse(cand);
    if (!on_curve(c, back)) throw InvariantViolation("short-model inverse left the curve");
    group.points.push_back(std::move(back));
  }
  std::sort(group.points.begin() + 1, group.points.end(), point_less);
  group.points.erase(std::unique(group.points.begin(), group.points.end()), group.points.end());

  for (const Point& p : group.points) {
    for (const Point& q : group.points) {
      if (std::find(group.points.begin(), group.points.end(), add_trusted(c, p, q)) ==
          group.points.end()) {
        throw InvariantViolation("torsion candidates are not closed under addition");
      }
    }
  }
  group.structure = identify_structure(c, group.points);
  return group;
}

}  // namespace ecd
