#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ecd {

/// Arbitrary-precision signed integer.
using Integer = mpz_class;

/// Arbitrary-precision rational. gmpxx keeps arithmetic results canonical
/// (reduced, positive denominator); values built from raw parts must go
/// through make_rational.
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);

/// Non-negative gcd; gcd(0, 0) = 0.
Integer gcd(const Integer& a, const Integer& b);

struct IsqrtResult {
  Integer root;
  bool exact = false;
};

/// floor(sqrt(n)) and whether n is a perfect square. n must be >= 0.
IsqrtResult isqrt_exact(const Integer& n);

/// Deterministic for n < 2^64. Above that, Baillie-PSW (strong base-2
/// Miller-Rabin followed by a strong Lucas test with Selfridge parameters).
/// No BPSW pseudoprime is known, but none has been ruled out either.
bool is_prime(const Integer& n);

/// Deterministic Miller-Rabin on machine words.
bool is_prime_u64(std::uint64_t n);

namespace detail {
/// The Baillie-PSW test alone, valid for any n (used by is_prime above 2^64
/// and exposed so the big-number path can be checked against small oracles).
bool bpsw_probable_prime(const Integer& n);
bool strong_lucas_probable_prime(const Integer& n);
}  // namespace detail

struct PrimePower {
  Integer prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower& a, const PrimePower& b) {
    return a.prime == b.prime && a.exponent == b.exponent;
  }
};

/// Sorted by prime, ascending.
using Factorization = std::vector<PrimePower>;

struct FactorOptions {
  std::uint64_t trial_bound = 10000;
  /// Total Pollard-rho iterations across all splits of one input.
  std::uint64_t rho_budget = 20'000'000;
};

/// Trial division up to options.trial_bound, then Brent's variant of
/// Pollard rho, recursing on both halves of every split. Throws
/// FactoringTimeout when the rho budget runs out.
Factorization factor(const Integer& n, const FactorOptions& options = {});

Integer recompose(const Factorization& f);

/// Natural logarithm of a positive integer of any size.
double log_abs(const Integer& n);

}  // namespace ecd
