#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ecdenom/arith.hpp"
#include "ecdenom/curve.hpp"
#include "ecdenom/torsion.hpp"

namespace ecd {

/// Coefficient vector n in Z^r.
using NVec = std::vector<std::int64_t>;

/// Max-norm |n|_inf.
std::int64_t max_norm(const NVec& n);

/// User-supplied free generators P_1..P_r plus the torsion subgroup.
struct MWBasis {
  CurveModel curve;
  std::vector<Point> generators;
  TorsionGroup torsion;

  std::size_t rank() const { return generators.size(); }
};

/// Validates generators (on curve, not O, no order <= 12). Throws
/// GeneratorNotOnCurve or TorsionGenerator.
MWBasis make_basis(CurveModel curve, std::vector<Point> generators, TorsionGroup torsion);

/// n . P + S.
Point combination(const MWBasis& basis, const NVec& n, std::size_t torsion_index);

struct EnumRecord {
  NVec nvec;
  std::size_t torsion_index = 0;
  DenomTriple triple;
  double log_z = 0.0;
};

struct EnumerationOptions {
  /// Shells to keep scanning after a shell with no record under the cap.
  std::size_t extra_shells = 2;
  /// Worker threads; 0 means hardware concurrency.
  unsigned threads = 1;
  /// Hard stop, in case the growth margin never materialises.
  std::size_t max_shells = 100000;
};

struct Enumeration {
  /// Ordered by shell, then nvec, then torsion index.
  std::vector<EnumRecord> records;
  std::size_t shells_visited = 0;
  /// Last shell scanned.
  std::size_t stopping_shell = 0;
  /// min log z(nP) / |n|^2 over evaluated non-integral points with S = O.
  std::optional<double> c_hat;
};

/// Every (n, S) != (0, O) with z(n.P + S) <= max_z, scanned in max-norm
/// shells 0, 1, 2, ... Scanning ends once extra_shells + 1 consecutive
/// shells (from shell 1 on) contribute no record. Throws EmptyBasis when
/// rank is 0 and torsion is trivial.
Enumeration enumerate_up_to(const MWBasis& basis, const Integer& max_z,
                            const EnumerationOptions& options = {});

/// Walks k.D for D = direction . P, one addition per step.
class RayWalker {
 public:
  RayWalker(const CurveModel& curve, Point step);

  /// Advances to the next multiple and returns it.
  const Point& next();
  std::int64_t k() const { return k_; }
  const Point& current() const { return current_; }

 private:
  const CurveModel* curve_;
  Point step_;
  Point current_;
  std::int64_t k_ = 0;
};

/// (k, k.D) for k = 1..max_steps. Throws PreconditionViolation for D = 0.
std::vector<std::pair<std::int64_t, Point>> ray_walk(const MWBasis& basis, const NVec& direction,
                                                     std::size_t max_steps);

/// z(kP) for k = 1..count, by incremental addition.
std::vector<Integer> denominator_sequence(const CurveModel& curve, const Point& p,
                                          std::size_t count);

struct GrowthFit {
  double c_hat = 0.0;
  double C_hat = 0.0;
  /// Least-squares slope of log z(nQ) against n^2 through the origin.
  double slope = 0.0;
  std::int64_t n_min = 0;
  std::int64_t n_max = 0;
  std::size_t samples = 0;
};

/// Growth constants of log z(nQ) / n^2 over n in [n_min, n_max], skipping
/// integral multiples. Throws InsufficientData with fewer than 3 samples.
GrowthFit fit_growth(const MWBasis& basis, std::size_t generator_index, std::int64_t n_min,
                     std::int64_t n_max);

/// Worker count from EC_DENOM_THREADS, or fallback when it is unset.
unsigned threads_from_env(unsigned fallback = 1);

}  // namespace ecd
