#include "ecdenom/arith.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "ecdenom/errors.hpp"

namespace ecd {

Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

IsqrtResult isqrt_exact(const Integer& n) {
  if (sgn(n) < 0) throw PreconditionViolation("isqrt_exact: negative argument");
  IsqrtResult r;
  Integer rem;
  mpz_sqrtrem(r.root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
  r.exact = (sgn(rem) == 0);
  return r;
}

double log_abs(const Integer& n) {
  if (sgn(n) == 0) throw PreconditionViolation("log_abs: zero argument");
  long exp = 0;
  double mant = std::fabs(mpz_get_d_2exp(&exp, n.get_mpz_t()));
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

// ---------------------------------------------------------------------------
// Primality

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool strong_probable_prime_u64(u64 n, u64 a) {
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

constexpr std::array<unsigned, 25> kSmallPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                                   29, 31, 37, 41, 43, 47, 53, 59, 61,
                                                   67, 71, 73, 79, 83, 89, 97};

bool strong_probable_prime_base2(const Integer& n) {
  Integer d = n - 1;
  mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  Integer x;
  Integer two = 2;
  mpz_powm(x.get_mpz_t(), two.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  Integer n_minus_1 = n - 1;
  if (x == 1 || x == n_minus_1) return true;
  for (mp_bitcnt_t i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == n_minus_1) return true;
  }
  return false;
}

// (a + n * [a odd]) / 2, i.e. division by 2 modulo odd n, for 0 <= a < n.
void halve_mod(Integer& a, const Integer& n) {
  if (mpz_odd_p(a.get_mpz_t())) a += n;
  mpz_tdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), 1);
}

void reduce(Integer& a, const Integer& n) { mpz_mod(a.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t()); }

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (unsigned p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  // These twelve bases are a proven witness set below 3.3 * 10^24.
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (!strong_probable_prime_u64(n, a)) return false;
  }
  return true;
}

namespace detail {

bool strong_lucas_probable_prime(const Integer& n) {
  if (n < 2) return false;
  if (n == 2) return true;
  if (mpz_even_p(n.get_mpz_t())) return false;
  if (mpz_perfect_square_p(n.get_mpz_t())) return false;

  // Selfridge method A: first D in 5, -7, 9, -11, ... with (D/n) = -1.
  long D = 5;
  for (;;) {
    Integer dz = D;
    int j = mpz_jacobi(dz.get_mpz_t(), n.get_mpz_t());
    if (j == -1) break;
    if (j == 0 && abs(dz) != n) return false;
    D = D > 0 ? -(D + 2) : -D + 2;
  }
  const long P = 1;
  const long Q = (1 - D) / 4;

  // n + 1 = d * 2^s with d odd.
  Integer d = n + 1;
  mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  Integer U = 1, V = P, Qk = Q;
  reduce(Qk, n);
  Integer Dn = D, Qn = Q;
  reduce(Dn, n);
  reduce(Qn, n);

  for (long bit = static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2)) - 2; bit >= 0; --bit) {
    // k -> 2k
    U = U * V;
    reduce(U, n);
    V = V * V - 2 * Qk;
    reduce(V, n);
    Qk = Qk * Qk;
    reduce(Qk, n);
    if (mpz_tstbit(d.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) {
      // k -> k + 1
      Integer U1 = P * U + V;
      Integer V1 = Dn * U + P * V;
      reduce(U1, n);
      reduce(V1, n);
      halve_mod(U1, n);
      halve_mod(V1, n);
      U = std::move(U1);
      V = std::move(V1);
      Qk = Qk * Qn;
      reduce(Qk, n);
    }
  }
  if (sgn(U) == 0 || sgn(V) == 0) return true;
  for (mp_bitcnt_t r = 1; r < s; ++r) {
    V = V * V - 2 * Qk;
    reduce(V, n);
    if (sgn(V) == 0) return true;
    Qk = Qk * Qk;
    reduce(Qk, n);
  }
  return false;
}

bool bpsw_probable_prime(const Integer& n) {
  if (n < 2) return false;
  for (unsigned p : kSmallPrimes) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  return strong_probable_prime_base2(n) && strong_lucas_probable_prime(n);
}

}  // namespace detail

bool is_prime(const Integer& n) {
  if (sgn(n) <= 0) return false;
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
    u64 v = 0;
    mpz_export(&v, nullptr, -1, sizeof(v), 0, 0, n.get_mpz_t());
    return is_prime_u64(v);
  }
  return detail::bpsw_probable_prime(n);
}

// ---------------------------------------------------------------------------
// Factoring

namespace {

class RhoBudget {
 public:
  explicit RhoBudget(std::uint64_t limit) : left_(limit) {}
  void spend(std::uint64_t n, const Integer& target) {
    if (n > left_) {
      throw FactoringTimeout("factor: Pollard-rho budget exhausted on " + target.get_str());
    }
    left_ -= n;
  }

 private:
  std::uint64_t left_;
};

// Brent's cycle-finding variant; returns a nontrivial divisor of the odd
// composite n, trying successive polynomial constants.
Integer rho_split(const Integer& n, RhoBudget& budget) {
  constexpr std::uint64_t kBatch = 128;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, ys, q = 1, g = 1;
    std::uint64_t r = 1;
    auto step = [&](Integer& v) {
      v = v * v + c;
      reduce(v, n);
    };
    while (g == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) step(y);
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        std::uint64_t m = std::min(kBatch, r - k);
        budget.spend(m, n);
        for (std::uint64_t i = 0; i < m; ++i) {
          step(y);
          q = q * abs(x - y);
          reduce(q, n);
        }
        g = gcd(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      // Batched product overshot; back up one step at a time.
      do {
        step(ys);
        budget.spend(1, n);
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_into(const Integer& n, std::map<Integer, unsigned>& out, RhoBudget& budget,
                unsigned multiplicity) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += multiplicity;
    return;
  }
  IsqrtResult sq = isqrt_exact(n);
  if (sq.exact) {
    split_into(sq.root, out, budget, multiplicity * 2);
    return;
  }
  Integer d = rho_split(n, budget);
  Integer cofactor = n / d;
  split_into(d, out, budget, multiplicity);
  split_into(cofactor, out, budget, multiplicity);
}

}  // namespace

Factorization factor(const Integer& n, const FactorOptions& options) {
  if (n < 1) throw PreconditionViolation("factor: argument must be >= 1");
  std::map<Integer, unsigned> found;
  Integer rest = n;

  auto strip = [&](unsigned long p) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    if (e > 0) found[Integer(p)] += e;
  };
  strip(2);
  for (unsigned long p = 3; p <= options.trial_bound && rest > 1; p += 2) {
    if (Integer(p) * p > rest) break;
    strip(p);
  }
  if (rest > 1) {
    if (rest <= Integer(options.trial_bound) * options.trial_bound) {
      found[rest] += 1;
    } else {
      RhoBudget budget(options.rho_budget);
      split_into(rest, found, budget, 1);
    }
  }

  Factorization f;
  f.reserve(found.size());
  for (auto& [p, e] : found) f.push_back({p, e});
  return f;
}

Integer recompose(const Factorization& f) {
  Integer n = 1;
  for (const auto& pp : f) {
    Integer t;
    mpz_pow_ui(t.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
    n *= t;
  }
  return n;
}

}  // namespace ecd
