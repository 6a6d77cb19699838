#include "ecdenom/census.hpp"

#include <cmath>

#include "ecdenom/errors.hpp"

namespace ecd {

namespace {

void tally(CensusResult& r, const CensusRecord& rec) {
  ++r.total_count;
  CosetCount& coset = r.per_coset.at(rec.record.torsion_index);
  ++coset.total;
  if (rec.is_prime) {
    ++r.prime_count;
    ++coset.prime;
  }
  if (rec.record.triple.z > 1) r.expected_prime_sum += 1.0 / rec.record.log_z;
}

CensusResult empty_like(const CensusResult& shape, const Integer& max_z) {
  CensusResult r;
  r.max_z = max_z;
  r.rank = shape.rank;
  r.shells_visited = shape.shells_visited;
  r.stopping_shell = shape.stopping_shell;
  r.c_hat = shape.c_hat;
  r.per_coset.resize(shape.per_coset.size());
  for (std::size_t i = 0; i < r.per_coset.size(); ++i) r.per_coset[i].torsion_index = i;
  return r;
}

}  // namespace

CensusResult run_census(const MWBasis& basis, const Integer& max_z,
                        const EnumerationOptions& options) {
  if (max_z < 2) throw PreconditionViolation("run_census: Z must be at least 2");
  Enumeration e = enumerate_up_to(basis, max_z, options);

  CensusResult shape;
  shape.rank = basis.rank();
  shape.shells_visited = e.shells_visited;
  shape.stopping_shell = e.stopping_shell;
  shape.c_hat = e.c_hat;
  shape.per_coset.resize(basis.torsion.order());
  CensusResult r = empty_like(shape, max_z);

  r.records.reserve(e.records.size());
  for (EnumRecord& rec : e.records) {
    bool prime = is_prime(rec.triple.z);
    r.records.push_back(CensusRecord{std::move(rec), prime});
    tally(r, r.records.back());
  }
  return r;
}

CensusResult restrict_census(const CensusResult& full, const Integer& max_z) {
  if (max_z > full.max_z) {
    throw PreconditionViolation("restrict_census: cap " + max_z.get_str() + " exceeds " +
                                full.max_z.get_str());
  }
  CensusResult r = empty_like(full, max_z);
  for (const CensusRecord& rec : full.records) {
    if (rec.record.triple.z > max_z) continue;
    r.records.push_back(rec);
    tally(r, rec);
  }
  return r;
}

// ---------------------------------------------------------------------------

std::string to_string(Regime r) {
  switch (r) {
    case Regime::bounded:
      return "bounded";
    case Regime::loglog:
      return "loglog";
    case Regime::power:
      return "power";
  }
  return "unknown";
}

Prediction heuristic_count_from_log(std::size_t rank, double log_max_z, double kappa) {
  if (!(kappa > 0.0)) throw PreconditionViolation("heuristic_count: kappa must be positive");
  if (!(log_max_z > 1.0)) throw PreconditionViolation("heuristic_count: need log log Z > 0");
  Prediction p;
  p.rank = rank;
  if (rank <= 1) {
    p.regime = Regime::bounded;
    p.value = kappa;
  } else if (rank == 2) {
    p.regime = Regime::loglog;
    p.value = kappa * std::log(log_max_z);
  } else {
    p.regime = Regime::power;
    p.exponent = static_cast<double>(rank) / 2.0 - 1.0;
    p.value = kappa * std::pow(log_max_z, p.exponent);
  }
  return p;
}

Prediction heuristic_count(std::size_t rank, const Integer& max_z, double kappa) {
  if (max_z < 16) throw PreconditionViolation("heuristic_count: Z must be at least 16");
  return heuristic_count_from_log(rank, log_abs(max_z), kappa);
}

CorollaryRatio corollary_ratio(const CensusResult& result) {
  if (result.total_count == 0) throw EmptyCensus();
  if (result.max_z < 16) throw PreconditionViolation("corollary_ratio: Z must be at least 16");
  CorollaryRatio r;
  r.ratio = static_cast<double>(result.prime_count) / static_cast<double>(result.total_count);
  r.bound = 1.0 / std::log(log_abs(result.max_z));
  return r;
}

// ---------------------------------------------------------------------------

PrimitiveSplit strip_common(const Integer& z, const std::vector<Integer>& earlier) {
  PrimitiveSplit split{z, 1};
  for (;;) {
    if (split.residual == 1) return split;
    Integer prod = 1;
    for (const Integer& e : earlier) {
      prod *= e;
      mpz_mod(prod.get_mpz_t(), prod.get_mpz_t(), split.residual.get_mpz_t());
    }
    Integer g = gcd(split.residual, prod);
    if (g == 1) return split;
    mpz_divexact(split.residual.get_mpz_t(), split.residual.get_mpz_t(), g.get_mpz_t());
    split.stripped *= g;
  }
}

namespace {

enum Part : unsigned { kDivisibility = 1, kLemma = 2, kPrimitive = 4 };

DivReport run_reports(const CurveModel& c, const Point& q, std::int64_t nmax, unsigned parts) {
  if (!on_curve(c, q)) throw NotOnCurve("point " + q.to_string() + " is not on the curve");
  if (q.is_infinity()) throw TorsionGenerator("Q is the point at infinity");
  if (unsigned k = order_up_to_12(c, q); k != 0) {
    throw TorsionGenerator("Q has finite order " + std::to_string(k));
  }
  if (nmax < 1) throw PreconditionViolation("nmax must be positive");

  DivReport report;
  report.nmax = nmax;
  // zs[n] = z(nQ); zs[0] unused.
  std::vector<Integer> zs{0};
  for (Integer& z : denominator_sequence(c, q, static_cast<std::size_t>(nmax))) {
    zs.push_back(std::move(z));
  }

  for (std::int64_t n = 2; n <= nmax; ++n) {
    const Integer& zn = zs[static_cast<std::size_t>(n)];
    if (parts & kDivisibility) {
      for (std::int64_t r = 2; r < n; ++r) {
        if (n % r != 0) continue;
        if (!mpz_divisible_p(zn.get_mpz_t(), zs[static_cast<std::size_t>(r)].get_mpz_t())) {
          report.divisibility_failures.emplace_back(r, n);
        }
      }
    }
    if ((parts & kLemma) && is_prime(zn) && !is_prime(Integer(static_cast<long>(n)))) {
      report.primality_exceptions.push_back(LemmaException{n, zn});
    }
    if (parts & kPrimitive) {
      std::vector<Integer> earlier(zs.begin() + 1, zs.begin() + n);
      if (strip_common(zn, earlier).residual == 1) report.primitive_divisor_misses.push_back(n);
    }
  }
  return report;
}

}  // namespace

DivReport verify_divisibility(const CurveModel& c, const Point& q, std::int64_t nmax) {
  return run_reports(c, q, nmax, kDivisibility);
}

DivReport verify_lemma(const CurveModel& c, const Point& q, std::int64_t nmax) {
  return run_reports(c, q, nmax, kLemma);
}

DivReport primitive_divisors(const CurveModel& c, const Point& q, std::int64_t nmax) {
  return run_reports(c, q, nmax, kPrimitive);
}

DivReport verify_all(const CurveModel& c, const Point& q, std::int64_t nmax) {
  return run_reports(c, q, nmax, kDivisibility | kLemma | kPrimitive);
}

}  // namespace ecd
