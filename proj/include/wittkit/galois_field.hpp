#pragma once

// Finite fields F_q, q = p^k odd. Elements are encoded as integers in
// [0, q): the base-p digits are the coefficients (low to high) of a
// polynomial in the generator modulo a fixed irreducible.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "integer.hpp"

namespace wittkit {

class GfContext {
 public:
  using u64 = std::uint64_t;

  u64 p() const { return p_; }
  unsigned degree() const { return k_; }
  u64 order() const { return q_; }
  const std::vector<u64>& modulus() const { return mod_; }
  /// Least code (in integer order) that is not a square.
  u64 nonresidue() const { return nonres_; }

  u64 add(u64 a, u64 b) const {
    if (k_ == 1) return addp(a, b);
    auto x = digits(a), y = digits(b);
    for (unsigned i = 0; i < k_; ++i) x[i] = addp(x[i], y[i]);
    return code(x);
  }
  u64 neg(u64 a) const {
    if (k_ == 1) return a == 0 ? 0 : p_ - a;
    auto x = digits(a);
    for (auto& d : x) d = d == 0 ? 0 : p_ - d;
    return code(x);
  }
  u64 sub(u64 a, u64 b) const { return add(a, neg(b)); }
  u64 mul(u64 a, u64 b) const {
    if (k_ == 1) return mulp(a, b);
    auto x = digits(a), y = digits(b);
    std::vector<u64> r(2 * k_ - 1, 0);
    for (unsigned i = 0; i < k_; ++i)
      for (unsigned j = 0; j < k_; ++j) r[i + j] = addp(r[i + j], mulp(x[i], y[j]));
    for (unsigned i = 2 * k_ - 2; i >= k_; --i) {
      u64 c = r[i];
      if (c == 0) continue;
      for (unsigned j = 0; j < k_; ++j) r[i - k_ + j] = subp(r[i - k_ + j], mulp(c, mod_[j]));
      r[i] = 0;
    }
    r.resize(k_);
    return code(r);
  }
  u64 pow(u64 a, Integer e) const {
    u64 r = 1;
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const {
    if (a == 0) throw DomainError("inverse of zero in F_q");
    return pow(a, Integer(static_cast<unsigned long>(q_ - 2)));
  }
  bool is_square(u64 a) const {
    if (a == 0) return true;
    return pow(a, Integer(static_cast<unsigned long>((q_ - 1) / 2))) == 1;
  }
  /// Image of an integer in the prime field.
  u64 from_integer(const Integer& n) const {
    Integer r = n % Integer(static_cast<unsigned long>(p_));
    if (r < 0) r += static_cast<unsigned long>(p_);
    return r.get_ui();
  }

  static std::shared_ptr<const GfContext> get(const Integer& q) {
    static std::mutex mu;
    static std::map<Integer, std::shared_ptr<const GfContext>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
    auto ctx = std::shared_ptr<const GfContext>(new GfContext(q));
    cache.emplace(q, ctx);
    return ctx;
  }

 private:
  explicit GfContext(const Integer& q) {
    auto [p, k] = prime_power(q);
    if (p == 2) throw DomainError("characteristic 2 is not supported");
    if (q >= Integer(1UL << 62)) throw UnsupportedError("finite field too large");
    p_ = p.get_ui();
    k_ = static_cast<unsigned>(k);
    q_ = q.get_ui();
    mod_ = find_irreducible();
    for (u64 a = 1; a < q_; ++a)
      if (!is_square(a)) {
        nonres_ = a;
        break;
      }
  }

  u64 addp(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 subp(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
  u64 mulp(u64 a, u64 b) const {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p_);
  }
  u64 powp(u64 a, u64 e) const {
    u64 r = 1;
    while (e) {
      if (e & 1) r = mulp(r, a);
      a = mulp(a, a);
      e >>= 1;
    }
    return r;
  }

  std::vector<u64> digits(u64 a) const {
    std::vector<u64> d(k_);
    for (unsigned i = 0; i < k_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }
  u64 code(const std::vector<u64>& d) const {
    u64 r = 0;
    for (unsigned i = k_; i-- > 0;) r = r * p_ + d[i];
    return r;
  }

  // Dense polynomials over F_p, coefficients low to high.
  using P = std::vector<u64>;
  void trim(P& a) const {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  P pmod(P a, const P& m) const {
    trim(a);
    u64 linv = powp(m.back(), p_ - 2);
    while (a.size() >= m.size()) {
      u64 c = mulp(a.back(), linv);
      std::size_t s = a.size() - m.size();
      for (std::size_t i = 0; i < m.size(); ++i) a[s + i] = subp(a[s + i], mulp(c, m[i]));
      trim(a);
    }
    return a;
  }
  P pmulmod(const P& a, const P& b, const P& m) const {
    if (a.empty() || b.empty()) return {};
    P r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = addp(r[i + j], mulp(a[i], b[j]));
    return pmod(r, m);
  }
  P pgcd(P a, P b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      P r = pmod(a, b);
      a = b;
      b = r;
    }
    return a;
  }
  // x^(p^e) mod m
  P frob(const P& m, unsigned e) const {
    P x = pmod(P{0, 1}, m);
    for (unsigned i = 0; i < e; ++i) {
      P r{1}, b = x;
      u64 n = p_;
      while (n) {
        if (n & 1) r = pmulmod(r, b, m);
        b = pmulmod(b, b, m);
        n >>= 1;
      }
      x = r;
    }
    return x;
  }
  bool rabin_irreducible(const P& m) const {
    unsigned n = static_cast<unsigned>(m.size() - 1);
    P xq = frob(m, n);
    P d = xq;
    d.resize(std::max<std::size_t>(d.size(), 2), 0);
    d[1] = subp(d[1], 1);
    trim(d);
    if (!d.empty()) return false;
    for (unsigned r = 2; r <= n; ++r) {
      if (n % r) continue;
      bool prime = true;
      for (unsigned s = 2; s * s <= r; ++s)
        if (r % s == 0) prime = false;
      if (!prime) continue;
      P h = frob(m, n / r);
      h.resize(std::max<std::size_t>(h.size(), 2), 0);
      h[1] = subp(h[1], 1);
      trim(h);
      P g = pgcd(m, h);
      if (g.size() != 1) return false;
    }
    return true;
  }
  std::vector<u64> find_irreducible() const {
    if (k_ == 1) return {0, 1};
    // lexicographically smallest monic irreducible of degree k
    for (u64 low = 0;; ++low) {
      P m(k_ + 1, 0);
      u64 t = low;
      for (unsigned i = k_; i-- > 0;) {
        m[i] = t % p_;
        t /= p_;
      }
      if (t) break;
      m[k_] = 1;
      if (m[0] == 0) continue;
      if (rabin_irreducible(m)) return m;
    }
    throw InternalError("no irreducible polynomial found");
  }

  u64 p_ = 0, q_ = 0, nonres_ = 0;
  unsigned k_ = 1;
  std::vector<u64> mod_;
};

}  // namespace wittkit
