#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ecdenom/arith.hpp"
#include "ecdenom/curve.hpp"
#include "ecdenom/lattice.hpp"

namespace ecd {

struct CensusRecord {
  EnumRecord record;
  bool is_prime = false;
};

struct CosetCount {
  std::size_t torsion_index = 0;
  std::size_t total = 0;
  std::size_t prime = 0;
};

struct CensusResult {
  Integer max_z;
  std::size_t rank = 0;
  /// #{P : z(P) <= Z}, counting P and -P separately.
  std::size_t total_count = 0;
  /// #{P : z(P) prime, z(P) <= Z}.
  std::size_t prime_count = 0;
  std::vector<CensusRecord> records;
  std::size_t shells_visited = 0;
  std::size_t stopping_shell = 0;
  std::optional<double> c_hat;
  /// Indexed by torsion index.
  std::vector<CosetCount> per_coset;
  /// Sum of 1 / log z over non-integral records: the count the naive
  /// "prime with probability 1/log z" model would expect.
  double expected_prime_sum = 0.0;
};

CensusResult run_census(const MWBasis& basis, const Integer& max_z,
                        const EnumerationOptions& options = {});

/// The census at a smaller cap, obtained by filtering (records are a
/// superset for any cap below the original one).
CensusResult restrict_census(const CensusResult& full, const Integer& max_z);

enum class Regime { bounded, loglog, power };

std::string to_string(Regime r);

struct Prediction {
  std::size_t rank = 0;
  Regime regime = Regime::bounded;
  /// r/2 - 1 for the power regime, 0 otherwise.
  double exponent = 0.0;
  double value = 0.0;
};

/// Predicted number of prime denominators up to Z (natural logs):
/// kappa for r <= 1, kappa log log Z for r = 2, kappa (log Z)^(r/2 - 1)
/// above. Requires Z >= 16 and kappa > 0.
Prediction heuristic_count(std::size_t rank, const Integer& max_z, double kappa = 1.0);

/// Same prediction from log Z directly, for caps that are not integers.
Prediction heuristic_count_from_log(std::size_t rank, double log_max_z, double kappa = 1.0);

struct CorollaryRatio {
  double ratio = 0.0;
  double bound = 0.0;
};

/// prime_count / total_count next to 1 / log log Z. Throws EmptyCensus.
CorollaryRatio corollary_ratio(const CensusResult& result);

struct LemmaException {
  std::int64_t n = 0;
  Integer z;
};

struct DivReport {
  std::int64_t nmax = 0;
  /// (r, n) with r | n but z(rQ) not dividing z(nQ).
  std::vector<std::pair<std::int64_t, std::int64_t>> divisibility_failures;
  /// Composite n with z(nQ) prime.
  std::vector<LemmaException> primality_exceptions;
  /// n >= 2 whose z(nQ) has no prime factor absent from every earlier z(mQ).
  std::vector<std::int64_t> primitive_divisor_misses;
};

DivReport verify_divisibility(const CurveModel& c, const Point& q, std::int64_t nmax);
DivReport verify_lemma(const CurveModel& c, const Point& q, std::int64_t nmax);
DivReport primitive_divisors(const CurveModel& c, const Point& q, std::int64_t nmax);
/// All three reports from one pass over the denominator sequence.
DivReport verify_all(const CurveModel& c, const Point& q, std::int64_t nmax);

struct PrimitiveSplit {
  /// Part of z sharing no prime with the earlier terms.
  Integer residual;
  Integer stripped;
};

/// Repeatedly divides z by gcd(z, prod(earlier) mod z) until the gcd is 1.
PrimitiveSplit strip_common(const Integer& z, const std::vector<Integer>& earlier);

}  // namespace ecd
