#pragma once

// Diagonal quadratic forms, their classical invariants, isotropy and the
// canonical anisotropic representative over base fields.

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "element.hpp"

namespace wittkit {

/// Nondegenerate diagonal form <a_1,...,a_n> over a supported field.
struct DiagonalForm {
  Field field;
  std::vector<Element> entries;

  DiagonalForm() = default;
  DiagonalForm(Field F, std::vector<Element> e) : field(std::move(F)), entries(std::move(e)) {
    for (const auto& a : entries) elem::check_field(field, a);
  }
  static DiagonalForm of_scalars(const Field& F, const std::vector<Scalar>& xs) {
    std::vector<Element> e;
    for (const auto& x : xs) e.emplace_back(F.base().from_rational(x));
    return DiagonalForm(F, e);
  }
  std::size_t dim() const { return entries.size(); }
  bool operator==(const DiagonalForm& o) const { return field == o.field && entries == o.entries; }
};

inline DiagonalForm direct_sum(const DiagonalForm& a, const DiagonalForm& b) {
  if (a.field != b.field) throw DomainError("direct_sum: field mismatch");
  DiagonalForm r = a;
  r.entries.insert(r.entries.end(), b.entries.begin(), b.entries.end());
  return r;
}

inline DiagonalForm tensor(const DiagonalForm& a, const DiagonalForm& b) {
  if (a.field != b.field) throw DomainError("tensor: field mismatch");
  DiagonalForm r;
  r.field = a.field;
  for (const auto& x : a.entries)
    for (const auto& y : b.entries) r.entries.push_back(elem::mul(a.field, x, y));
  return r;
}

inline std::string format(const DiagonalForm& q) {
  std::string s = "<";
  for (std::size_t i = 0; i < q.entries.size(); ++i) {
    if (i) s += ",";
    s += elem::format(q.field, q.entries[i]);
  }
  return s + ">";
}

/// Parses "<a1,...,an> over F".
inline DiagonalForm parse_form(const std::string& text) {
  auto pos = text.rfind(" over ");
  if (pos == std::string::npos) throw ParseError("form literal needs 'over <field>': " + text);
  Field F = Field::parse(text.substr(pos + 6));
  std::string body = text.substr(0, pos);
  auto l = body.find('<'), r = body.rfind('>');
  if (l == std::string::npos || r == std::string::npos || r < l) throw ParseError("form literal needs <...>: " + text);
  std::string inner = body.substr(l + 1, r - l - 1);
  std::vector<Element> entries;
  int depth = 0;
  std::string cur;
  auto flush = [&]() {
    bool blank = cur.find_first_not_of(" \t") == std::string::npos;
    if (blank) {
      if (!entries.empty() || depth) throw ParseError("empty entry in form: " + text);
    } else {
      try {
        entries.push_back(parse_element(F, cur));
      } catch (const DomainError& e) {
        throw ParseError(std::string("bad entry '") + cur + "': " + e.what());
      }
    }
    cur.clear();
  };
  for (char ch : inner) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      if (cur.find_first_not_of(" \t") == std::string::npos) throw ParseError("empty entry in form: " + text);
      flush();
    } else {
      cur += ch;
    }
  }
  if (cur.find_first_not_of(" \t") != std::string::npos) flush();
  else if (!entries.empty()) throw ParseError("trailing comma in form: " + text);
  return DiagonalForm(F, entries);
}

// ---- invariants over base fields -------------------------------------------

namespace classify {

/// Invariants of a form over a base field: dimension, determinant class,
/// Hasse invariants eps_p = prod_{i<j}(a_i,a_j)_p at finite primes (only
/// the primes with eps_p = -1 are stored), and positive/negative counts
/// at the real place.
struct Inv {
  int n = 0;
  Scalar d = 1;
  std::map<Integer, int> eps;
  int pos = 0, neg = 0;

  bool operator<(const Inv& o) const { return std::tie(n, d, eps, pos, neg) < std::tie(o.n, o.d, o.eps, o.pos, o.neg); }
};

inline bool has_finite_places(const BaseField& K) {
  return K.kind() == BaseKind::Rationals || K.kind() == BaseKind::PAdic;
}

inline std::set<Integer> places(const BaseField& K, const Inv& inv, std::initializer_list<Scalar> extra) {
  std::set<Integer> P;
  if (K.kind() == BaseKind::PAdic) {
    P.insert(K.prime());
    return P;
  }
  if (K.kind() != BaseKind::Rationals) return P;
  P.insert(2);
  for (const auto& [p, e] : inv.eps) P.insert(p);
  for (const auto& p : prime_divisors(inv.d)) P.insert(p);
  for (const auto& x : extra)
    for (const auto& p : prime_divisors(x)) P.insert(p);
  return P;
}

inline int eps_at(const Inv& inv, const Integer& p) {
  auto it = inv.eps.find(p);
  return it == inv.eps.end() ? 1 : it->second;
}
inline void set_eps(Inv& inv, const Integer& p, int v) {
  if (v == 1) inv.eps.erase(p);
  else inv.eps[p] = -1;
}

inline Inv invariants_of(const BaseField& K, const std::vector<Scalar>& entries) {
  Inv inv;
  std::set<Integer> P;
  if (K.kind() == BaseKind::PAdic) P.insert(K.prime());
  if (K.kind() == BaseKind::Rationals) {
    P.insert(2);
    for (const auto& a : entries)
      for (const auto& p : prime_divisors(a)) P.insert(p);
  }
  Scalar d = 1;
  std::map<Integer, int> eps;
  for (const auto& p : P) eps[p] = 1;
  for (const auto& a : entries) {
    if (a == 0) throw DomainError("zero entry");
    for (const auto& p : P) eps[p] *= hilbert_symbol(p, d, a);
    d = K.mul(d, a);
    if (K.is_real()) (K.sign(a) > 0 ? inv.pos : inv.neg)++;
  }
  inv.n = static_cast<int>(entries.size());
  inv.d = K.square_class(d);
  for (const auto& [p, e] : eps) set_eps(inv, p, e);
  return inv;
}

inline bool local_isotropic(const Integer& p, int n, const Scalar& d, int e) {
  if (n <= 1) return false;
  if (n == 2) return is_local_square(p, -d);
  if (n == 3) return hilbert_symbol(p, -1, -d) == e;
  if (n == 4) return !is_local_square(p, d) || e == hilbert_symbol(p, -1, -1);
  return true;
}

inline bool local_represents(const Integer& p, int n, const Scalar& d, int e, const Scalar& t) {
  if (n <= 0) return false;
  if (n == 1) return is_local_square(p, t * d);
  if (n == 2) return hilbert_symbol(p, t, -d) == e;
  if (n == 3) return !is_local_square(p, -t * d) || hilbert_symbol(p, -1, -d) == e;
  return true;
}

inline bool isotropic(const BaseField& K, const Inv& inv) {
  if (inv.n <= 1) return false;
  switch (K.kind()) {
    case BaseKind::SquareClosed: return true;
    case BaseKind::Finite: return inv.n >= 3 || K.is_square(K.neg(inv.d));
    case BaseKind::Real: return inv.pos > 0 && inv.neg > 0;
    case BaseKind::PAdic: return local_isotropic(K.prime(), inv.n, inv.d, eps_at(inv, K.prime()));
    case BaseKind::Rationals: {
      if (inv.n == 2) return K.is_square(K.neg(inv.d));
      if (inv.pos == 0 || inv.neg == 0) return false;
      for (const auto& p : places(K, inv, {}))
        if (!local_isotropic(p, inv.n, inv.d, eps_at(inv, p))) return false;
      return true;
    }
  }
  return false;
}

inline bool represents(const BaseField& K, const Inv& inv, const Scalar& t) {
  if (inv.n <= 0) return false;
  if (inv.n == 1) return K.same_square_class(t, inv.d);
  switch (K.kind()) {
    case BaseKind::SquareClosed:
    case BaseKind::Finite: return true;
    case BaseKind::Real: return t > 0 ? inv.pos > 0 : inv.neg > 0;
    case BaseKind::PAdic: return local_represents(K.prime(), inv.n, inv.d, eps_at(inv, K.prime()), t);
    case BaseKind::Rationals: {
      if (t > 0 ? inv.pos == 0 : inv.neg == 0) return false;
      for (const auto& p : places(K, inv, {t}))
        if (!local_represents(p, inv.n, inv.d, eps_at(inv, p), t)) return false;
      return true;
    }
  }
  return false;
}

/// Invariants of q' where q = q' + <1,-1>.
inline Inv remove_hyperbolic(const BaseField& K, const Inv& inv) {
  Inv r = inv;
  r.n -= 2;
  r.d = K.square_class(K.neg(inv.d));
  if (has_finite_places(K))
    for (const auto& p : places(K, r, {}))
      set_eps(r, p, eps_at(inv, p) * hilbert_symbol(p, r.d, -1));
  if (K.is_real()) {
    --r.pos;
    --r.neg;
  }
  return r;
}

/// Invariants of q' where q = q' + <t>.
inline Inv remove_entry(const BaseField& K, const Inv& inv, const Scalar& t) {
  Inv r = inv;
  r.n -= 1;
  r.d = K.square_class(K.mul(inv.d, t));
  if (has_finite_places(K))
    for (const auto& p : places(K, r, {t}))
      set_eps(r, p, eps_at(inv, p) * hilbert_symbol(p, r.d, t));
  if (K.is_real()) (K.sign(t) > 0 ? r.pos : r.neg)--;
  return r;
}

/// Calls f on canonical square-class candidates in the fixed order until
/// it returns true.
inline Scalar first_candidate(const BaseField& K, const std::function<bool(const Scalar&)>& f) {
  if (auto cls = K.square_classes()) {
    for (const auto& t : *cls)
      if (f(t)) return t;
    throw InternalError("no square class satisfies the representation condition");
  }
  // Q: squarefree integers ordered 1, -1, 2, -2, 3, -3, 5, ...
  for (long m = 1; m < 1000000; ++m) {
    if (squarefree_part(Rational(m)) != m) continue;
    if (f(Scalar(m))) return Scalar(m);
    if (f(Scalar(-m))) return Scalar(-m);
  }
  throw InternalError("candidate search exhausted");
}

/// Canonical anisotropic representative of the Witt class of <entries>:
/// strip hyperbolic planes while isotropic, then pick entries greedily
/// as the first candidate represented by the remaining invariants.
/// Equal Witt classes yield identical vectors.
inline std::vector<Scalar> canonical(const BaseField& K, const std::vector<Scalar>& entries) {
  if (entries.empty()) return {};
  Inv inv = invariants_of(K, entries);
  while (inv.n >= 2 && isotropic(K, inv)) inv = remove_hyperbolic(K, inv);
  // the candidate search over Q is the expensive part; anisotropic
  // invariants determine the class, so the result is cached on them
  static std::mutex mu;
  static std::map<Inv, std::vector<Scalar>> cache;
  bool cached = K.kind() == BaseKind::Rationals;
  if (cached) {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(inv); it != cache.end()) return it->second;
  }
  const Inv key = inv;
  std::vector<Scalar> out;
  while (inv.n > 0) {
    if (inv.n == 1) {
      out.push_back(inv.d);
      break;
    }
    Scalar t = first_candidate(K, [&](const Scalar& c) { return represents(K, inv, c); });
    out.push_back(t);
    inv = remove_entry(K, inv, t);
  }
  if (cached) {
    std::lock_guard<std::mutex> lock(mu);
    if (cache.size() > 100000) cache.clear();
    cache.emplace(key, out);
  }
  return out;
}

inline std::vector<Scalar> scalars_of(const DiagonalForm& q) {
  if (q.field.is_function_field()) throw UnsupportedError("operation requires a base field, got " + q.field.name());
  std::vector<Scalar> v;
  for (const auto& e : q.entries) v.push_back(e.c);
  return v;
}

}  // namespace classify

/// Classical invariants of a form over a base field.
struct FormInvariants {
  int dim = 0;
  Scalar det = 1;          // canonical square class
  Scalar signed_disc = 1;  // (-1)^{n(n-1)/2} det
  /// Hasse invariant eps(q) = prod_{i<j}(a_i,a_j)_v per place; key 0 is
  /// the real place. Present for Q (real place and primes dividing
  /// 2*prod a_i), Q_p (p) and R (real place).
  std::map<Integer, int> hasse;
  std::optional<int> signature;  // Q and R
};

inline FormInvariants invariants(const DiagonalForm& q) {
  if (q.field.is_function_field())
    throw UnsupportedError("invariants over k(T) are accessed through residues");
  const BaseField& K = q.field.base();
  auto xs = classify::scalars_of(q);
  FormInvariants fi;
  fi.dim = static_cast<int>(xs.size());
  Scalar d = 1;
  for (const auto& a : xs) d = K.mul(d, a);
  fi.det = K.square_class(d);
  long n = fi.dim;
  Scalar sd = ((n * (n - 1) / 2) % 2) ? K.neg(d) : d;
  fi.signed_disc = K.square_class(sd);
  std::set<Integer> P;
  if (K.kind() == BaseKind::PAdic) P.insert(K.prime());
  if (K.kind() == BaseKind::Rationals) {
    P.insert(2);
    for (const auto& a : xs)
      for (const auto& p : prime_divisors(a)) P.insert(p);
  }
  if (K.is_real()) P.insert(0);
  for (const auto& p : P) {
    int e = 1;
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = i + 1; j < xs.size(); ++j) e *= hilbert_symbol(p, xs[i], xs[j]);
    fi.hasse[p] = e;
  }
  if (K.is_real()) {
    int s = 0;
    for (const auto& a : xs) s += K.sign(a);
    fi.signature = s;
  }
  return fi;
}

inline bool is_isotropic(const DiagonalForm& q) {
  const BaseField& K = q.field.base();
  auto xs = classify::scalars_of(q);
  return classify::isotropic(K, classify::invariants_of(K, xs));
}

struct WittDecomposition {
  DiagonalForm kernel;
  int witt_index = 0;
};

/// q = kernel + witt_index * <1,-1> with the kernel anisotropic and canonical.
inline WittDecomposition witt_decompose(const DiagonalForm& q) {
  auto xs = classify::scalars_of(q);
  auto ker = classify::canonical(q.field.base(), xs);
  WittDecomposition wd;
  wd.kernel = DiagonalForm::of_scalars(q.field, ker);
  wd.witt_index = static_cast<int>((xs.size() - ker.size()) / 2);
  return wd;
}

// ---- signatures over Q(T), R(T) ---------------------------------------------

/// Piecewise-constant total signature of a form over Q(T) or R(T):
/// values[i] holds on the open gap left of breakpoints[i] (values.back()
/// right of the last breakpoint). Empty for nonreal bases.
struct SignatureFunction {
  std::vector<poly::RealRoot> breakpoints;
  std::vector<int> values;

  bool identically_zero() const {
    for (int v : values)
      if (v) return false;
    return true;
  }
};

inline int sign_of_element_at(const Element& a, const Rational& x) {
  int s = sgn(a.c);
  for (const auto& f : a.f) {
    int v = poly::sign_at(f.pi, x);
    if (v == 0) throw DomainError("sign at a root");
    if (v < 0 && (f.e % 2)) s = -s;
  }
  return s;
}

/// Rational sample points, one per gap, for the real roots of the given
/// polynomials (all with rational coefficients).
inline std::pair<std::vector<poly::RealRoot>, std::vector<Rational>> real_gap_samples(const std::vector<Poly>& polys) {
  BaseField Q = BaseField::rationals();
  Poly prod = Poly::constant(1);
  for (const auto& p : polys)
    if (p.degree() > 0) prod = poly::mul(Q, prod, p);
  std::vector<poly::RealRoot> roots;
  if (prod.degree() > 0) roots = poly::isolate_real_roots(prod);
  std::vector<Rational> samples;
  if (roots.empty()) {
    samples.push_back(0);
  } else {
    samples.push_back(roots.front().lo);
    for (const auto& r : roots) samples.push_back(r.hi);
  }
  return {roots, samples};
}

inline SignatureFunction signature_function(const DiagonalForm& q) {
  SignatureFunction sf;
  const Field& F = q.field;
  if (!F.base().is_real()) return sf;
  std::set<Poly> ps;
  for (const auto& e : q.entries)
    for (const auto& f : e.f) ps.insert(f.pi);
  auto [roots, samples] = real_gap_samples(std::vector<Poly>(ps.begin(), ps.end()));
  sf.breakpoints = roots;
  for (const auto& x : samples) {
    int s = 0;
    for (const auto& e : q.entries) s += sign_of_element_at(e, x);
    sf.values.push_back(s);
  }
  return sf;
}

}  // namespace wittkit
