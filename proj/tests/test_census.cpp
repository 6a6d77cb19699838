#include <cmath>

#include "doctest.h"
#include "ecdenom/census.hpp"
#include "ecdenom/errors.hpp"
#include "oracle.hpp"

using ecd::Integer;
using ecd::Point;

namespace {

ecd::CurveModel curve_37a1() { return ecd::make_curve(0, 0, 1, -1, 0); }

ecd::MWBasis basis_37a1() { return ecd::make_basis(curve_37a1(), {Point(0, 0)}, {}); }

}  // namespace

TEST_CASE("run_census on 37a1") {
  ecd::CensusResult r10 = ecd::run_census(basis_37a1(), 10);
  CHECK(r10.total_count == 20);
  CHECK(r10.prime_count == 8);
  for (const auto& rec : r10.records) {
    long n = std::labs(rec.record.nvec[0]);
    bool expect_prime = (n == 5 || n == 7 || n == 8 || n == 9);
    CHECK(rec.is_prime == expect_prime);
  }

  // z(16Q) = 65 <= 100, so n = +-16 joins n = +-11, +-12, +-13 at Z = 100.
  ecd::CensusResult r100 = ecd::run_census(basis_37a1(), 100);
  CHECK(r100.total_count == 28);
  CHECK(r100.prime_count == 14);
  CHECK(r100.per_coset.size() == 1);
  CHECK(r100.per_coset[0].total == 28);
  CHECK_THROWS_AS(ecd::run_census(basis_37a1(), 1), ecd::PreconditionViolation);
}

TEST_CASE("census counts agree with the brute-force oracle on a grid of caps") {
  oracle::NaiveCurve naive{0, 0, 1, -1, 0};
  auto zs = oracle::naive_denominators(naive, std::make_pair(mpq_class(0), mpq_class(0)), 60);
  ecd::CensusResult full = ecd::run_census(basis_37a1(), Integer("1000000000000000000000000"));
  std::size_t prev_total = 0, prev_prime = 0;
  for (Integer Z = 2; Z <= full.max_z; Z *= 7) {
    std::size_t total = 0, prime = 0;
    for (const auto& z : zs) {
      if (z > Z) continue;
      total += 2;
      if (mpz_probab_prime_p(z.get_mpz_t(), 40) != 0) prime += 2;
    }
    ecd::CensusResult direct = ecd::run_census(basis_37a1(), Z);
    ecd::CensusResult filtered = ecd::restrict_census(full, Z);
    CHECK(direct.total_count == total);
    CHECK(direct.prime_count == prime);
    CHECK(filtered.total_count == total);
    CHECK(filtered.prime_count == prime);
    CHECK(direct.total_count >= prev_total);
    CHECK(direct.prime_count >= prev_prime);
    prev_total = direct.total_count;
    prev_prime = direct.prime_count;
  }
  for (const auto& rec : full.records) {
    if (rec.is_prime) {
      CHECK(rec.record.triple.z >= 2);
      CHECK(ecd::is_prime(rec.record.triple.z));
    }
  }
}

TEST_CASE("census on a rank-0 curve counts the torsion points") {
  ecd::CurveModel c = ecd::make_curve(0, 0, 0, 0, 1);
  ecd::CensusResult r = ecd::run_census(ecd::make_basis(c, {}, ecd::torsion_subgroup(c)),
                                        Integer("1000000"));
  CHECK(r.total_count == 5);
  CHECK(r.prime_count == 0);
  CHECK(r.expected_prime_sum == 0.0);
}

TEST_CASE("heuristic_count regimes") {
  Integer Z("1000000000000000000000000000000");
  double log_z = 30 * std::log(10.0);
  for (double kappa : {1.0, 0.25, 3.0}) {
    ecd::Prediction p0 = ecd::heuristic_count(0, Z, kappa);
    ecd::Prediction p1 = ecd::heuristic_count(1, Z, kappa);
    ecd::Prediction p2 = ecd::heuristic_count(2, Z, kappa);
    ecd::Prediction p3 = ecd::heuristic_count(3, Z, kappa);
    ecd::Prediction p4 = ecd::heuristic_count(4, Z, kappa);
    CHECK(p0.regime == ecd::Regime::bounded);
    CHECK(p1.regime == ecd::Regime::bounded);
    CHECK(p2.regime == ecd::Regime::loglog);
    CHECK(p3.regime == ecd::Regime::power);
    CHECK(p4.regime == ecd::Regime::power);
    CHECK(p0.value == doctest::Approx(kappa));
    CHECK(p1.value == doctest::Approx(kappa));
    CHECK(p2.value == doctest::Approx(kappa * std::log(log_z)));
    CHECK(p3.value == doctest::Approx(kappa * std::pow(log_z, 0.5)));
    CHECK(p4.value == doctest::Approx(kappa * log_z));
    CHECK(p3.exponent == 0.5);
  }
  ecd::Prediction e = ecd::heuristic_count_from_log(4, std::exp(1.0), 1.0);
  CHECK(e.value == doctest::Approx(std::exp(1.0)));
  CHECK_THROWS_AS(ecd::heuristic_count(2, 15), ecd::PreconditionViolation);
  CHECK_THROWS_AS(ecd::heuristic_count(2, 100, 0.0), ecd::PreconditionViolation);
  CHECK(ecd::to_string(ecd::Regime::loglog) == "loglog");
}

TEST_CASE("corollary_ratio") {
  ecd::CensusResult r100 = ecd::run_census(basis_37a1(), 100);
  ecd::CorollaryRatio cr = ecd::corollary_ratio(r100);
  CHECK(cr.ratio == doctest::Approx(14.0 / 28.0));
  CHECK(cr.bound == doctest::Approx(1.0 / std::log(std::log(100.0))));

  // Z = 10 is below the corollary's Z >= 16; the ratio itself is 8/20.
  ecd::CensusResult r10 = ecd::run_census(basis_37a1(), 10);
  CHECK(static_cast<double>(r10.prime_count) / r10.total_count == doctest::Approx(0.4));
  CHECK_THROWS_AS(ecd::corollary_ratio(r10), ecd::PreconditionViolation);

  ecd::CensusResult empty;
  empty.max_z = 100;
  CHECK_THROWS_AS(ecd::corollary_ratio(empty), ecd::EmptyCensus);
  ecd::CensusResult no_primes;
  no_primes.max_z = 100;
  no_primes.total_count = 4;
  cr = ecd::corollary_ratio(no_primes);
  CHECK(cr.ratio == 0.0);
  CHECK(cr.ratio <= cr.bound);
}

TEST_CASE("verify_divisibility") {
  ecd::DivReport r = ecd::verify_divisibility(curve_37a1(), Point(0, 0), 10);
  CHECK(r.divisibility_failures.empty());
  r = ecd::verify_divisibility(curve_37a1(), Point(0, 0), 60);
  CHECK(r.divisibility_failures.empty());
  CHECK_THROWS_AS(ecd::verify_divisibility(curve_37a1(), Point(1, 1), 10), ecd::NotOnCurve);
  ecd::CurveModel t = ecd::make_curve(0, 0, 0, 0, 1);
  CHECK_THROWS_AS(ecd::verify_divisibility(t, Point(2, 3), 10), ecd::TorsionGenerator);
}

TEST_CASE("verify_lemma") {
  ecd::DivReport r = ecd::verify_lemma(curve_37a1(), Point(0, 0), 14);
  REQUIRE(r.primality_exceptions.size() == 3);
  CHECK(r.primality_exceptions[0].n == 8);
  CHECK(r.primality_exceptions[0].z == 5);
  CHECK(r.primality_exceptions[1].n == 9);
  CHECK(r.primality_exceptions[1].z == 7);
  CHECK(r.primality_exceptions[2].n == 12);
  CHECK(r.primality_exceptions[2].z == 29);
  for (const auto& e : r.primality_exceptions) {
    CHECK(ecd::is_prime(e.z));
    CHECK_FALSE(ecd::is_prime(e.n));
  }
}

TEST_CASE("primitive_divisors") {
  ecd::DivReport r = ecd::primitive_divisors(curve_37a1(), Point(0, 0), 14);
  // n = 2, 3, 4, 6 are integral; z(10Q) = 4 only contains 2 | z(5Q).
  CHECK(r.primitive_divisor_misses == std::vector<std::int64_t>{2, 3, 4, 6, 10});

  auto zs = ecd::denominator_sequence(curve_37a1(), Point(0, 0), 40);
  for (std::size_t n = 1; n < zs.size(); ++n) {
    std::vector<Integer> earlier(zs.begin(), zs.begin() + static_cast<long>(n));
    ecd::PrimitiveSplit s = ecd::strip_common(zs[n], earlier);
    CHECK(s.residual * s.stripped == zs[n]);
    for (const Integer& e : earlier) CHECK(ecd::gcd(s.residual, e) == 1);
  }
  ecd::PrimitiveSplit s = ecd::strip_common(4 * 9 * 5, {Integer(2), Integer(3)});
  CHECK(s.residual == 5);
  CHECK(s.stripped == 36);
}

TEST_CASE("verify_all combines the three reports") {
  ecd::DivReport all = ecd::verify_all(curve_37a1(), Point(0, 0), 30);
  CHECK(all.divisibility_failures.empty());
  CHECK(all.primality_exceptions.size() ==
        ecd::verify_lemma(curve_37a1(), Point(0, 0), 30).primality_exceptions.size());
  CHECK(all.primitive_divisor_misses ==
        ecd::primitive_divisors(curve_37a1(), Point(0, 0), 30).primitive_divisor_misses);
}
