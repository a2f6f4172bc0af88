#pragma once

// Exact integer and rational helpers on top of GMP: factorization,
// valuations, squarefree parts and residue symbols.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wittkit {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when an operation receives an argument outside its domain
/// (zero entries, mismatched fields, non-units, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an input is well formed but outside what the library
/// can decide (e.g. residue fields that are number fields).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an internal guard trips (termination bounds, broken
/// invariants). Indicates a bug or an input far beyond desk scale.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised by the literal parsers.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer pollard_brent(const Integer& n, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  Integer y = seed % 1000 + 2, c = seed % 997 + 1, m = 128;
  Integer g = 1, r = 1, q = 1, x, ys;
  auto f = [&](const Integer& v) {
    Integer t = v * v + c;
    mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    return t;
  };
  while (g == 1) {
    x = y;
    for (Integer i = 0; i < r; ++i) y = f(y);
    Integer k = 0;
    while (k < r && g == 1) {
      ys = y;
      Integer lim = std::min(m, Integer(r - k));
      for (Integer i = 0; i < lim; ++i) {
        y = f(y);
        Integer d = x - y;
        q = q * abs(d);
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      g = gcd(q, n);
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = gcd(abs(Integer(x - ys)), n);
    } while (g == 1);
  }
  return g;
}

inline void factor_into(const Integer& n, std::map<Integer, int>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    ++out[n];
    return;
  }
  for (unsigned long seed = 1;; ++seed) {
    Integer d = pollard_brent(n, seed);
    if (d != n && d != 1) {
      factor_into(d, out);
      factor_into(Integer(n / d), out);
      return;
    }
    if (seed > 200) throw InternalError("factorization did not converge");
  }
}

}  // namespace detail

inline bool is_prime(const Integer& n) {
  return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

/// Prime factorization of |n| (n != 0) as prime -> exponent.
inline std::map<Integer, int> factorize(Integer n) {
  if (n == 0) throw DomainError("factorize: zero");
  n = abs(n);
  std::map<Integer, int> out;
  for (unsigned long p : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL}) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[Integer(p)];
      n /= p;
    }
  }
  for (unsigned long p = 17; p < 20000 && Integer(p) * p <= n; p += 2) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[Integer(p)];
      n /= p;
    }
  }
  detail::factor_into(n, out);
  return out;
}

inline std::vector<Integer> prime_divisors(const Integer& n) {
  std::vector<Integer> ps;
  for (const auto& [p, e] : factorize(n)) ps.push_back(p);
  return ps;
}

/// Primes dividing numerator or denominator of a nonzero rational.
inline std::vector<Integer> prime_divisors(const Rational& r) {
  auto ps = prime_divisors(Integer(r.get_num()));
  for (const auto& p : prime_divisors(Integer(r.get_den()))) ps.push_back(p);
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

/// If q = p^k for a prime p and k >= 1, returns (p, k).
inline std::pair<Integer, int> prime_power(const Integer& q) {
  if (q < 2) throw DomainError("not a prime power: " + q.get_str());
  auto f = factorize(q);
  if (f.size() != 1) throw DomainError("not a prime power: " + q.get_str());
  return *f.begin();
}

/// p-adic valuation of a nonzero rational.
inline int valuation(const Rational& r, const Integer& p) {
  if (r == 0) throw DomainError("valuation of zero");
  int v = 0;
  Integer n = r.get_num(), d = r.get_den();
  while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
    n /= p;
    ++v;
  }
  while (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) {
    d /= p;
    --v;
  }
  return v;
}

/// r / p^{v_p(r)}.
inline Rational unit_part(const Rational& r, const Integer& p) {
  int v = valuation(r, p);
  Rational u = r;
  Integer pk;
  mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(v < 0 ? -v : v));
  if (v > 0) u /= Rational(pk);
  if (v < 0) u *= Rational(pk);
  u.canonicalize();
  return u;
}

/// Signed squarefree integer in the square class of a nonzero rational.
inline Integer squarefree_part(const Rational& r) {
  if (r == 0) throw DomainError("squarefree part of zero");
  Integer n = r.get_num() * r.get_den();
  Integer out = n < 0 ? -1 : 1;
  for (const auto& [p, e] : factorize(n))
    if (e % 2) out *= p;
  return out;
}

/// Reduction of a p-unit rational modulo p, in [0, p).
inline Integer reduce_mod(const Rational& u, const Integer& p) {
  Integer den = u.get_den(), inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
    throw DomainError("reduce_mod: denominator divisible by p");
  Integer r = u.get_num() * inv;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
  return r;
}

/// Legendre symbol of a p-unit rational, p an odd prime.
inline int legendre(const Rational& u, const Integer& p) {
  Integer r = reduce_mod(u, p);
  return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

/// Smallest positive integer that is a quadratic nonresidue mod an odd prime.
inline Integer least_nonresidue(const Integer& p) {
  for (Integer a = 2;; ++a)
    if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) == -1) return a;
}

inline Integer ipow(const Integer& b, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

}  // namespace wittkit
