#pragma once

// Dense univariate polynomials over a BaseField, with gcds, modular
// powers, rational-root extraction and factorization over F_q.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"

namespace wittkit {

/// Coefficients low to high, no trailing zeros. The zero polynomial is empty.
struct Poly {
  std::vector<Scalar> c;

  Poly() = default;
  explicit Poly(std::vector<Scalar> coeffs) : c(std::move(coeffs)) { trim(); }
  static Poly constant(const Scalar& a) { return Poly(std::vector<Scalar>{a}); }
  /// T - a
  static Poly linear(const BaseField& K, const Scalar& a) { return Poly({K.neg(a), K.one()}); }
  static Poly x() { return Poly({0, 1}); }

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const Scalar& lead() const { return c.back(); }
  bool is_monic() const { return !c.empty() && c.back() == 1; }
  Scalar coeff(int i) const { return i >= 0 && i < static_cast<int>(c.size()) ? c[i] : Scalar(0); }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  bool operator==(const Poly& o) const { return c == o.c; }
  bool operator!=(const Poly& o) const { return c != o.c; }
  /// Degree first, then coefficients from the top down.
  bool operator<(const Poly& o) const {
    if (c.size() != o.c.size()) return c.size() < o.c.size();
    for (std::size_t i = c.size(); i-- > 0;)
      if (c[i] != o.c[i]) return c[i] < o.c[i];
    return false;
  }
};

namespace poly {

inline Poly add(const BaseField& K, const Poly& a, const Poly& b) {
  std::vector<Scalar> r(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = K.add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
  return Poly(std::move(r));
}
inline Poly neg(const BaseField& K, const Poly& a) {
  std::vector<Scalar> r;
  for (const auto& x : a.c) r.push_back(K.neg(x));
  return Poly(std::move(r));
}
inline Poly sub(const BaseField& K, const Poly& a, const Poly& b) { return add(K, a, neg(K, b)); }
inline Poly scale(const BaseField& K, const Poly& a, const Scalar& s) {
  std::vector<Scalar> r;
  for (const auto& x : a.c) r.push_back(K.mul(x, s));
  return Poly(std::move(r));
}
inline Poly mul(const BaseField& K, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Scalar> r(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] = K.add(r[i + j], K.mul(a.c[i], b.c[j]));
  }
  return Poly(std::move(r));
}
inline Poly pow(const BaseField& K, Poly a, unsigned long e) {
  Poly r = Poly::constant(K.one());
  while (e) {
    if (e & 1) r = mul(K, r, a);
    a = mul(K, a, a);
    e >>= 1;
  }
  return r;
}
/// Quotient and remainder; b nonzero.
inline std::pair<Poly, Poly> divmod(const BaseField& K, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Scalar> r = a.c;
  int db = b.degree();
  std::vector<Scalar> q(std::max(0, a.degree() - db + 1), 0);
  Scalar linv = K.inv(b.lead());
  for (int i = a.degree(); i >= db; --i) {
    if (r[i] == 0) continue;
    Scalar f = K.mul(r[i], linv);
    q[i - db] = f;
    for (int j = 0; j <= db; ++j) r[i - db + j] = K.sub(r[i - db + j], K.mul(f, b.c[j]));
  }
  return {Poly(std::move(q)), Poly(std::move(r))};
}
inline Poly mod(const BaseField& K, const Poly& a, const Poly& b) { return divmod(K, a, b).second; }
inline Poly quo(const BaseField& K, const Poly& a, const Poly& b) { return divmod(K, a, b).first; }
inline Poly monic(const BaseField& K, const Poly& a) {
  if (a.is_zero()) return a;
  return scale(K, a, K.inv(a.lead()));
}
/// Monic gcd (zero if both are zero).
inline Poly gcd(const BaseField& K, Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = mod(K, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(K, a);
}
inline Scalar eval(const BaseField& K, const Poly& a, const Scalar& x) {
  Scalar r = 0;
  for (std::size_t i = a.c.size(); i-- > 0;) r = K.add(K.mul(r, x), a.c[i]);
  return r;
}
inline Poly derivative(const BaseField& K, const Poly& a) {
  std::vector<Scalar> r;
  for (std::size_t i = 1; i < a.c.size(); ++i) r.push_back(K.mul(K.from_integer(Integer(static_cast<unsigned long>(i))), a.c[i]));
  return Poly(std::move(r));
}
inline Poly mulmod(const BaseField& K, const Poly& a, const Poly& b, const Poly& m) {
  return mod(K, mul(K, a, b), m);
}
inline Poly powmod(const BaseField& K, Poly a, Integer e, const Poly& m) {
  Poly r = mod(K, Poly::constant(K.one()), m);
  a = mod(K, a, m);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mulmod(K, r, a, m);
    a = mulmod(K, a, a, m);
    e >>= 1;
  }
  return r;
}
inline Poly compose_linear(const BaseField& K, const Poly& a, const Scalar& s, const Scalar& t) {
  // a(s*X + t)
  Poly lin({t, s}), r;
  for (std::size_t i = a.c.size(); i-- > 0;) r = add(K, mul(K, r, lin), Poly::constant(a.c[i]));
  return r;
}

// ---- text -----------------------------------------------------------------

inline std::string format(const BaseField& K, const Poly& a, const std::string& var = "T") {
  if (a.is_zero()) return "0";
  std::string out;
  for (int i = a.degree(); i >= 0; --i) {
    Scalar co = a.c[i];
    if (co == 0) continue;
    std::string cs = K.format(co);
    bool negative = K.kind() != BaseKind::Finite && co < 0;
    if (negative) cs = K.format(-co);
    std::string term;
    if (i == 0) {
      term = cs;
    } else {
      if (cs != "1") term = cs + "*";
      term += var;
      if (i > 1) term += "^" + std::to_string(i);
    }
    if (out.empty()) out = negative ? "-" + term : term;
    else out += (negative ? "-" : "+") + term;
  }
  return out;
}

// ---- real roots (Q and R coefficients) ----------------------------------

/// An isolating interval (lo, hi) containing exactly one real root, with
/// lo and hi not roots. When the root is rational and was hit exactly it
/// is stored in `exact`.
struct RealRoot {
  Rational lo, hi;
  bool is_exact = false;
  Rational exact;
};

inline int sign_at(const Poly& a, const Rational& x) {
  BaseField Q = BaseField::rationals();
  return sgn(eval(Q, a, x));
}

inline std::vector<Poly> sturm_sequence(const Poly& a) {
  BaseField Q = BaseField::rationals();
  std::vector<Poly> s{a, derivative(Q, a)};
  while (!s.back().is_zero() && s.back().degree() > 0) {
    Poly r = neg(Q, mod(Q, s[s.size() - 2], s.back()));
    if (r.is_zero()) break;
    s.push_back(r);
  }
  return s;
}

inline int sign_changes(const std::vector<Poly>& s, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& p : s) {
    int v = sign_at(p, x);
    if (v == 0) continue;
    if (last != 0 && v != last) ++changes;
    last = v;
  }
  return changes;
}

/// Squarefree part over Q.
inline Poly squarefree_part_q(const Poly& a) {
  BaseField Q = BaseField::rationals();
  Poly g = gcd(Q, a, derivative(Q, a));
  return monic(Q, quo(Q, a, g));
}

/// Sorted isolating intervals for the distinct real roots of a (rational
/// coefficients, nonzero).
inline std::vector<RealRoot> isolate_real_roots(const Poly& input) {
  if (input.is_zero()) throw DomainError("isolate_real_roots: zero polynomial");
  std::vector<RealRoot> out;
  if (input.degree() < 1) return out;
  Poly a = squarefree_part_q(input);
  auto s = sturm_sequence(a);
  auto count = [&](const Rational& lo, const Rational& hi) { return sign_changes(s, lo) - sign_changes(s, hi); };
  Rational bound = 0;
  for (const auto& co : a.c) bound = std::max(bound, Rational(abs(co / a.lead())));
  bound += 1;
  std::vector<std::pair<Rational, Rational>> stack{{-bound, bound}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    int n = count(lo, hi);
    if (n == 0) continue;
    if (n == 1) {
      out.push_back({lo, hi, false, 0});
      continue;
    }
    Rational mid = (lo + hi) / 2;
    if (sign_at(a, mid) == 0) {
      Rational d = (hi - lo) / 4;
      while (sign_at(a, mid - d) == 0 || sign_at(a, mid + d) == 0 || count(mid - d, mid + d) != 1) d /= 2;
      out.push_back({mid - d, mid + d, true, mid});
      stack.push_back({lo, mid - d});
      stack.push_back({mid + d, hi});
    } else {
      stack.push_back({lo, mid});
      stack.push_back({mid, hi});
    }
  }
  std::sort(out.begin(), out.end(), [](const RealRoot& x, const RealRoot& y) { return x.lo < y.lo; });
  return out;
}

inline int count_real_roots(const Poly& a) { return static_cast<int>(isolate_real_roots(a).size()); }

// ---- roots and factorization --------------------------------------------

/// Rational roots of a polynomial with rational coefficients.
inline std::vector<Rational> rational_roots(const Poly& a) {
  std::vector<Rational> roots;
  if (a.degree() < 1) return roots;
  Integer l = 1;
  for (const auto& co : a.c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), co.get_den_mpz_t());
  std::vector<Integer> z;
  for (const auto& co : a.c) z.push_back(Integer(co * l));
  std::size_t shift = 0;
  while (z[shift] == 0) ++shift;
  if (shift) roots.push_back(0);
  Integer a0 = abs(z[shift]), an = abs(z.back());
  auto divisors = [](const Integer& n) {
    std::vector<Integer> ds{1};
    for (const auto& [p, e] : factorize(n)) {
      std::size_t m = ds.size();
      Integer pk = 1;
      for (int i = 0; i < e; ++i) {
        pk *= p;
        for (std::size_t j = 0; j < m; ++j) ds.push_back(ds[j] * pk);
      }
    }
    return ds;
  };
  if (a.degree() - static_cast<int>(shift) < 1) return roots;
  BaseField Q = BaseField::rationals();
  auto dn = divisors(a0), dd = divisors(an);
  std::vector<Rational> found;
  for (const auto& r : dn)
    for (const auto& s : dd)
      for (int sg : {1, -1}) {
        Rational x(r * sg, s);
        x.canonicalize();
        if (eval(Q, a, x) == 0) found.push_back(x);
      }
  for (auto& x : found) roots.push_back(x);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

/// Roots in F_q of a nonzero polynomial (distinct).
inline std::vector<Scalar> finite_roots(const BaseField& K, const Poly& a);

struct PolyFactor {
  Poly pi;
  int e;
};

namespace detail {

/// p-th root of a polynomial whose derivative vanishes, over F_q.
inline Poly pth_root(const BaseField& K, const Poly& a) {
  unsigned long p = K.characteristic();
  const GfContext& gf = K.gf();
  Integer e = ipow(Integer(p), gf.degree() - 1);
  std::vector<Scalar> r;
  for (std::size_t i = 0; i < a.c.size(); i += p) {
    GfContext::u64 v = gf.pow(a.c[i].get_num().get_ui(), e);
    r.push_back(Scalar(Integer(static_cast<unsigned long>(v))));
  }
  return Poly(std::move(r));
}

/// Squarefree factorization of a monic polynomial over F_q.
inline std::vector<PolyFactor> squarefree_finite(const BaseField& K, const Poly& f) {
  std::vector<PolyFactor> out;
  if (f.degree() < 1) return out;
  Poly d = derivative(K, f);
  int p = static_cast<int>(K.characteristic());
  if (d.is_zero()) {
    for (auto& pf : squarefree_finite(K, pth_root(K, f))) out.push_back({pf.pi, pf.e * p});
    return out;
  }
  Poly c = gcd(K, f, d);
  Poly w = quo(K, f, c);
  int i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(K, w, c);
    Poly z = quo(K, w, y);
    if (z.degree() > 0) out.push_back({monic(K, z), i});
    ++i;
    w = y;
    c = quo(K, c, y);
  }
  if (c.degree() > 0) {
    for (auto& pf : squarefree_finite(K, pth_root(K, monic(K, c)))) out.push_back({pf.pi, pf.e * p});
  }
  return out;
}

inline std::vector<Poly> equal_degree(const BaseField& K, const Poly& f, int d, std::mt19937_64& rng) {
  if (f.degree() == d) return {monic(K, f)};
  Integer q = K.order();
  Integer e = (ipow(q, static_cast<unsigned long>(d)) - 1) / 2;
  std::uniform_int_distribution<std::uint64_t> dist(0, q.get_ui() - 1);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Scalar> co;
    for (int i = 0; i < f.degree(); ++i) co.push_back(Scalar(Integer(static_cast<unsigned long>(dist(rng)))));
    Poly a(co);
    if (a.degree() < 1) continue;
    Poly g = gcd(K, a, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      auto l = equal_degree(K, g, d, rng), r = equal_degree(K, quo(K, f, g), d, rng);
      l.insert(l.end(), r.begin(), r.end());
      return l;
    }
    Poly b = sub(K, powmod(K, a, e, f), Poly::constant(K.one()));
    g = gcd(K, b, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      auto l = equal_degree(K, g, d, rng), r = equal_degree(K, quo(K, f, g), d, rng);
      l.insert(l.end(), r.begin(), r.end());
      return l;
    }
  }
  throw InternalError("equal-degree factorization did not split");
}

}  // namespace detail

/// Complete factorization of a nonzero polynomial over F_q into monic
/// irreducibles, sorted.
inline std::vector<PolyFactor> factor_finite(const BaseField& K, const Poly& a) {
  std::vector<PolyFactor> out;
  std::mt19937_64 rng(0x5eed);
  Integer q = K.order();
  for (const auto& sf : detail::squarefree_finite(K, monic(K, a))) {
    Poly f = sf.pi;
    Poly h = mod(K, Poly::x(), f);
    for (int d = 1; f.degree() > 0; ++d) {
      if (2 * d > f.degree()) {
        out.push_back({f, sf.e});
        break;
      }
      h = powmod(K, h, q, f);
      Poly g = gcd(K, sub(K, h, Poly::x()), f);
      if (g.degree() > 0) {
        for (auto& irr : detail::equal_degree(K, g, d, rng)) out.push_back({irr, sf.e});
        f = quo(K, f, g);
        h = mod(K, h, f);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const PolyFactor& x, const PolyFactor& y) { return x.pi < y.pi; });
  std::vector<PolyFactor> merged;
  for (auto& pf : out) {
    if (!merged.empty() && merged.back().pi == pf.pi) merged.back().e += pf.e;
    else merged.push_back(pf);
  }
  return merged;
}

inline std::vector<Scalar> finite_roots(const BaseField& K, const Poly& a) {
  std::vector<Scalar> r;
  for (const auto& pf : factor_finite(K, a))
    if (pf.pi.degree() == 1) r.push_back(K.neg(pf.pi.c[0]));
  std::sort(r.begin(), r.end());
  return r;
}

enum class Irreducibility { Irreducible, Reducible, Unverified };

/// Irreducibility of a polynomial of positive degree over the base.
/// Complete over F_q, R and C; over Q for degree <= 3; over Q_p for
/// degree <= 2. Other cases report Unverified unless a rational root
/// exhibits reducibility.
inline Irreducibility irreducibility(const BaseField& K, const Poly& a) {
  if (a.degree() < 1) throw DomainError("irreducibility of a constant");
  if (a.degree() == 1) return Irreducibility::Irreducible;
  switch (K.kind()) {
    case BaseKind::Finite: {
      auto f = factor_finite(K, a);
      return (f.size() == 1 && f[0].e == 1) ? Irreducibility::Irreducible : Irreducibility::Reducible;
    }
    case BaseKind::SquareClosed: return Irreducibility::Reducible;
    case BaseKind::Real:
      if (a.degree() == 2) {
        Scalar disc = a.c[1] * a.c[1] - 4 * a.c[0] * a.c[2];
        return disc < 0 ? Irreducibility::Irreducible : Irreducibility::Reducible;
      }
      return Irreducibility::Reducible;
    case BaseKind::Rationals:
      if (!rational_roots(a).empty()) return Irreducibility::Reducible;
      return a.degree() <= 3 ? Irreducibility::Irreducible : Irreducibility::Unverified;
    case BaseKind::PAdic:
      if (!rational_roots(a).empty()) return Irreducibility::Reducible;
      if (a.degree() == 2) {
        Scalar disc = a.c[1] * a.c[1] - 4 * a.c[0] * a.c[2];
        return K.is_square(disc) ? Irreducibility::Reducible : Irreducibility::Irreducible;
      }
      return Irreducibility::Unverified;
  }
  return Irreducibility::Unverified;
}

/// Factorization into monic irreducibles where the library can certify
/// or reasonably accept it: complete over F_q; over Q, Q_p, R and C all
/// rational roots are split off and the remaining cofactor is accepted
/// as irreducible when its irreducibility is certified or cannot be
/// decided. Throws UnsupportedError when the cofactor is known to split
/// over the base but not over Q (e.g. T^2-2 over R).
inline std::pair<Scalar, std::vector<PolyFactor>> factor(const BaseField& K, const Poly& a) {
  if (a.is_zero()) throw DomainError("factor: zero polynomial");
  Scalar lead = a.lead();
  if (a.degree() == 0) return {lead, {}};
  if (K.kind() == BaseKind::Finite) return {lead, factor_finite(K, a)};
  BaseField Q = BaseField::rationals();
  Poly f = monic(Q, a);
  std::vector<PolyFactor> out;
  for (const auto& r : rational_roots(f)) {
    Poly lin = Poly::linear(Q, r);
    int e = 0;
    while (f.degree() > 0) {
      auto [qq, rr] = divmod(Q, f, lin);
      if (!rr.is_zero()) break;
      f = qq;
      ++e;
    }
    out.push_back({lin, e});
  }
  if (f.degree() > 0) {
    // remaining cofactor has no rational roots; separate repeated parts
    Poly g = gcd(Q, f, derivative(Q, f));
    std::vector<PolyFactor> parts;
    if (g.degree() == 0) {
      parts.push_back({f, 1});
    } else {
      // Yun decomposition in characteristic zero
      Poly c = g, w = quo(Q, f, g);
      int i = 1;
      while (w.degree() > 0) {
        Poly y = gcd(Q, w, c);
        Poly z = quo(Q, w, y);
        if (z.degree() > 0) parts.push_back({monic(Q, z), i});
        ++i;
        w = y;
        c = quo(Q, c, y);
      }
    }
    for (auto& pf : parts) {
      if (irreducibility(K, pf.pi) == Irreducibility::Reducible)
        throw UnsupportedError("factor " + format(K, pf.pi) + " splits over " + K.name() +
                               " but not into rational factors");
      out.push_back(pf);
    }
  }
  std::sort(out.begin(), out.end(), [](const PolyFactor& x, const PolyFactor& y) { return x.pi < y.pi; });
  return {lead, out};
}

}  // namespace poly
}  // namespace wittkit
