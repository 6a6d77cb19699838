// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ecdenom/census.hpp"
#include "ecdenom/report.hpp"
#include "ecdenom/torsion.hpp"
#include "oracle.hpp"

using ecd::Integer;
using ecd::Point;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double time_limit_s,
               const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool in_time = secs < time_limit_s;
  bool pass = out.ok && in_time;
  if (!pass) ++failures;
  std::printf("[%s] %2d %-44s %7.3fs (limit %gs)  %s%s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              secs, time_limit_s, out.detail.c_str(), in_time ? "" : " [too slow]");
  std::fflush(stdout);
}

ecd::CurveModel curve_37a1() { return ecd::make_curve(0, 0, 1, -1, 0); }
ecd::MWBasis basis_37a1() { return ecd::make_basis(curve_37a1(), {Point(0, 0)}, {}); }
const oracle::NaiveCurve kNaive37a1{0, 0, 1, -1, 0};
const oracle::NaivePoint kNaiveGen = std::make_pair(mpq_class(0), mpq_class(0));

std::string join(const std::vector<Integer>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + x.get_str();
  return s;
}

}  // namespace

int main() {
  criterion(1, "golden z(nQ), n = 1..14, on 37a1", 1.0, [] {
    auto expected = oracle::naive_denominators(kNaive37a1, kNaiveGen, 14);
    auto got = ecd::denominator_sequence(curve_37a1(), Point(0, 0), 14);
    bool ok = got == expected && got[4] == 2 && got[6] == 3 && got[7] == 5 && got[8] == 7 &&
              got[9] == 4;
    return Outcome{ok, "z = " + join(got)};
  });

  criterion(2, "census goldens on 37a1 at Z = 10 and 100", 1.0, [] {
    auto zs = oracle::naive_denominators(kNaive37a1, kNaiveGen, 60);
    auto brute = [&](long cap) {
      std::size_t total = 0, prime = 0;
      for (const auto& z : zs) {
        if (z > cap) continue;
        total += 2;
        if (oracle::trial_division_prime(z.get_ui())) prime += 2;
      }
      return std::make_pair(total, prime);
    };
    ecd::CensusResult r10 = ecd::run_census(basis_37a1(), 10);
    ecd::CensusResult r100 = ecd::run_census(basis_37a1(), 100);
    auto b10 = brute(10), b100 = brute(100);
    // Z = 100 includes n = +-16, where z(16Q) = 65.
    bool ok = r10.total_count == 20 && r10.prime_count == 8 && r100.total_count == 28 &&
              r100.prime_count == 14 && b10 == std::make_pair(r10.total_count, r10.prime_count) &&
              b100 == std::make_pair(r100.total_count, r100.prime_count);
    char buf[160];
    std::snprintf(buf, sizeof buf, "Z=10: (%zu,%zu) oracle (%zu,%zu); Z=100: (%zu,%zu) oracle (%zu,%zu)",
                  r10.total_count, r10.prime_count, b10.first, b10.second, r100.total_count,
                  r100.prime_count, b100.first, b100.second);
    return Outcome{ok, buf};
  });

  criterion(3, "z(rQ) | z(nQ) for all r | n <= 60", 10.0, [] {
    ecd::DivReport r = ecd::verify_divisibility(curve_37a1(), Point(0, 0), 60);
    return Outcome{r.divisibility_failures.empty(),
                   std::to_string(r.divisibility_failures.size()) + " failures"};
  });

  criterion(4, "composite n with prime z(nQ), n <= 200", 60.0, [] {
    ecd::DivReport a = ecd::verify_lemma(curve_37a1(), Point(0, 0), 200);
    ecd::DivReport b = ecd::verify_lemma(curve_37a1(), Point(0, 0), 200);
    bool same = a.primality_exceptions.size() == b.primality_exceptions.size();
    std::string list;
    bool small = true;
    for (std::size_t i = 0; same && i < a.primality_exceptions.size(); ++i) {
      const auto& x = a.primality_exceptions[i];
      same = x.n == b.primality_exceptions[i].n && x.z == b.primality_exceptions[i].z;
      small = small && x.n <= 30;
      list += (list.empty() ? "" : ",") + std::to_string(x.n);
    }
    std::size_t digits = mpz_sizeinbase(
        ecd::denominator_sequence(curve_37a1(), Point(0, 0), 200).back().get_mpz_t(), 10);
    return Outcome{same && small, "n in {" + list + "}, z(200Q) has " + std::to_string(digits) +
                                      " digits"};
  });

  criterion(5, "growth slope stable over [50,100] vs [100,200]", 60.0, [] {
    ecd::MWBasis b = basis_37a1();
    ecd::GrowthFit lo = ecd::fit_growth(b, 0, 50, 100);
    ecd::GrowthFit hi = ecd::fit_growth(b, 0, 100, 200);
    double rel = std::abs(hi.slope - lo.slope) / lo.slope;
    bool ordered = lo.c_hat > 0 && lo.c_hat <= lo.slope && lo.slope <= lo.C_hat && hi.c_hat > 0 &&
                   hi.c_hat <= hi.slope && hi.slope <= hi.C_hat;
    char buf[160];
    std::snprintf(buf, sizeof buf, "slopes %.6f / %.6f, rel diff %.4f%%, c_hat %.6f C_hat %.6f",
                  lo.slope, hi.slope, 100 * rel, hi.c_hat, hi.C_hat);
    return Outcome{rel < 0.01 && ordered, buf};
  });

  criterion(6, "torsion goldens", 3.0, [] {
    using Kind = ecd::TorsionStructure::Kind;
    ecd::TorsionGroup a = ecd::torsion_subgroup(ecd::make_curve(0, 0, 0, 0, 1));
    ecd::TorsionGroup b = ecd::torsion_subgroup(ecd::make_curve(0, 0, 0, -1, 0));
    ecd::TorsionGroup c = ecd::torsion_subgroup(curve_37a1());
    bool ok = a.structure == ecd::TorsionStructure{Kind::cyclic, 6} && a.order() == 6 &&
              b.structure == ecd::TorsionStructure{Kind::product, 2} && b.order() == 4 &&
              c.order() == 1;
    // Exhaustive candidate oracle.
    auto ba = oracle::brute_force_torsion({0, 0, 0, 0, 1}, 200);
    auto bb = oracle::brute_force_torsion({0, 0, 0, -1, 0}, 200);
    auto bc = oracle::brute_force_torsion({0, 0, 1, -1, 0}, 200);
    ok = ok && ba.size() == 5 && bb.size() == 3 && bc.empty();
    return Outcome{ok, a.structure.to_string() + ", " + b.structure.to_string() + ", " +
                           c.structure.to_string()};
  });

  criterion(7, "1000 randomized group-law checks", 60.0, [] {
    ecd::CurveModel c = ecd::make_curve(0, 1, 1, -2, 0);
    Point p1(-1, 1), p2(0, 0);
    std::mt19937_64 rng(20230707);
    std::uniform_int_distribution<long> coef(-5, 5);
    auto sample = [&] {
      return ecd::add(c, ecd::scalar_mul(c, coef(rng), p1), ecd::scalar_mul(c, coef(rng), p2));
    };
    int fails = 0;
    for (int i = 0; i < 250; ++i) {
      Point p = sample(), q = sample(), r = sample();
      if (!(ecd::add(c, ecd::add(c, p, q), r) == ecd::add(c, p, ecd::add(c, q, r)))) ++fails;
      if (!(ecd::add(c, p, q) == ecd::add(c, q, p))) ++fails;
      if (!(ecd::add(c, p, Point::infinity()) == p)) ++fails;
      if (!ecd::add(c, p, ecd::negate(c, p)).is_infinity()) ++fails;
    }
    return Outcome{fails == 0, std::to_string(fails) + " failures in 1000 checks"};
  });

  criterion(8, "is_prime matches a sieve below 10^6", 10.0, [] {
    const std::size_t limit = 1000000;
    auto prime = oracle::sieve(limit - 1);
    std::size_t mismatches = 0, count = 0;
    for (unsigned long n = 0; n < limit; ++n) {
      bool p = ecd::is_prime(Integer(n));
      if (p != prime[n]) ++mismatches;
      if (p) ++count;
    }
    return Outcome{mismatches == 0 && count == 78498,
                   std::to_string(count) + " primes, " + std::to_string(mismatches) + " mismatches"};
  });

  criterion(9, "heuristic regime mapping for r = 0..4", 1.0, [] {
    Integer Z = ecd::parse_natural("1e30");
    double log_z = 30 * std::log(10.0);
    const ecd::Regime expected[] = {ecd::Regime::bounded, ecd::Regime::bounded,
                                    ecd::Regime::loglog, ecd::Regime::power, ecd::Regime::power};
    const double value[] = {1.0, 1.0, std::log(log_z), std::pow(log_z, 0.5), log_z};
    bool ok = true;
    std::string got;
    for (std::size_t r = 0; r <= 4; ++r) {
      ecd::Prediction p = ecd::heuristic_count(r, Z, 1.0);
      ok = ok && p.regime == expected[r] && std::abs(p.value - value[r]) < 1e-9 * value[r];
      got += (got.empty() ? "" : ",") + ecd::to_string(p.regime);
    }
    ecd::Prediction e = ecd::heuristic_count_from_log(4, std::exp(1.0), 1.0);
    ok = ok && std::abs(e.value - std::exp(1.0)) < 1e-12;
    return Outcome{ok, got};
  });

  criterion(10, "census CSV identical for 1 and N threads", 10.0, [] {
    ecd::CurveModel c389 = ecd::make_curve(0, 1, 1, -2, 0);
    ecd::MWBasis b389 = ecd::make_basis(c389, {Point(-1, 1), Point(0, 0)}, ecd::torsion_subgroup(c389));
    ecd::EnumerationOptions one, many;
    one.threads = 1;
    many.threads = 8;
    bool ok = true;
    std::size_t rows = 0;
    for (const ecd::MWBasis& basis : {basis_37a1(), b389}) {
      std::string a = ecd::census_csv(ecd::run_census(basis, 100, one));
      std::string z = ecd::census_csv(ecd::run_census(basis, 100, many));
      ok = ok && a == z;
      rows += static_cast<std::size_t>(std::count(a.begin(), a.end(), '\n')) - 1;
    }
    return Outcome{ok, std::to_string(rows) + " rows compared (37a1, 389a1)"};
  });

  std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "OK" : "FAILED", failures);
  return failures == 0 ? 0 : 1;
}
