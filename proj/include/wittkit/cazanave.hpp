#pragma once

// Pointed rational self-maps A/B of P^1, their Bezout forms in GW, the
// degree-3 families realizing <a1, a2, a3>, and the clutching class of a
// G_m-family g(T) = g(1) + (<T> - 1) b.

#include <string>
#include <utility>
#include <vector>

#include "gersten.hpp"

namespace wittkit {

/// Element of k or k(T) as a reduced fraction of polynomials in T.
class RatFunc {
 public:
  RatFunc() : num_(Poly::constant(0)), den_(Poly::constant(1)) {}
  RatFunc(const BaseField& K, Poly num, Poly den = Poly::constant(1)) : num_(std::move(num)), den_(std::move(den)) {
    normalize(K);
  }
  static RatFunc constant(const BaseField& K, const Scalar& c) { return RatFunc(K, Poly::constant(c)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  static RatFunc add(const BaseField& K, const RatFunc& a, const RatFunc& b) {
    return RatFunc(K, poly::add(K, poly::mul(K, a.num_, b.den_), poly::mul(K, b.num_, a.den_)), poly::mul(K, a.den_, b.den_));
  }
  static RatFunc neg(const BaseField& K, const RatFunc& a) { return RatFunc(K, poly::neg(K, a.num_), a.den_); }
  static RatFunc sub(const BaseField& K, const RatFunc& a, const RatFunc& b) { return add(K, a, neg(K, b)); }
  static RatFunc mul(const BaseField& K, const RatFunc& a, const RatFunc& b) {
    return RatFunc(K, poly::mul(K, a.num_, b.num_), poly::mul(K, a.den_, b.den_));
  }
  static RatFunc inv(const BaseField& K, const RatFunc& a) {
    if (a.is_zero()) throw DomainError("RatFunc: division by zero");
    return RatFunc(K, a.den_, a.num_);
  }
  static RatFunc div(const BaseField& K, const RatFunc& a, const RatFunc& b) { return mul(K, a, inv(K, b)); }

  static RatFunc from_element(const Field& F, const Element& e) {
    const BaseField& K = F.base();
    Poly n = Poly::constant(e.c), d = Poly::constant(K.one());
    for (const auto& x : e.f) {
      Poly p = poly::pow(K, x.pi, static_cast<unsigned long>(x.e < 0 ? -x.e : x.e));
      if (x.e > 0) n = poly::mul(K, n, p);
      else d = poly::mul(K, d, p);
    }
    return RatFunc(K, n, d);
  }
  Element to_element(const Field& F) const {
    if (is_zero()) throw DomainError("RatFunc: zero has no square class");
    Element n = parse_detail::element_from_poly(F, num_);
    Element d = parse_detail::element_from_poly(F, den_);
    return elem::div(F, n, d);
  }
  std::string format(const BaseField& K) const {
    std::string n = poly::format(K, num_);
    if (den_.degree() == 0 && den_.c[0] == 1) return n;
    return "(" + n + ")/(" + poly::format(K, den_) + ")";
  }

 private:
  void normalize(const BaseField& K) {
    num_.trim();
    den_.trim();
    if (den_.is_zero()) throw DomainError("RatFunc: zero denominator");
    if (num_.is_zero()) {
      den_ = Poly::constant(K.one());
      return;
    }
    Poly g = poly::gcd(K, num_, den_);
    if (g.degree() > 0) {
      num_ = poly::quo(K, num_, g);
      den_ = poly::quo(K, den_, g);
    }
    Scalar l = den_.lead();
    if (l != 1) {
      Scalar li = K.inv(l);
      num_ = poly::scale(K, num_, li);
      den_ = poly::scale(K, den_, li);
    }
  }

  Poly num_, den_;
};

/// Polynomial in X with coefficients in k or k(T), lowest degree first.
using XPoly = std::vector<RatFunc>;

inline int xdegree(const XPoly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (!a[static_cast<std::size_t>(i)].is_zero()) return i;
  return -1;
}

struct RationalMapP1 {
  Field field;
  XPoly A, B;
};

namespace detail {

inline XPoly xtrim(XPoly a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
  return a;
}

/// Remainder of a by b over the coefficient field.
inline XPoly xmod(const BaseField& K, XPoly a, const XPoly& b) {
  a = xtrim(a);
  int db = xdegree(b);
  if (db < 0) throw DomainError("xmod by zero");
  RatFunc lb_inv = RatFunc::inv(K, b[static_cast<std::size_t>(db)]);
  while (xdegree(a) >= db) {
    int da = xdegree(a);
    RatFunc q = RatFunc::mul(K, a[static_cast<std::size_t>(da)], lb_inv);
    for (int i = 0; i <= db; ++i) {
      auto& slot = a[static_cast<std::size_t>(da - db + i)];
      slot = RatFunc::sub(K, slot, RatFunc::mul(K, q, b[static_cast<std::size_t>(i)]));
    }
    a = xtrim(a);
  }
  return a;
}

inline bool xcoprime(const BaseField& K, XPoly a, XPoly b) {
  a = xtrim(a);
  b = xtrim(b);
  while (xdegree(b) >= 0) {
    XPoly r = xmod(K, a, b);
    a = b;
    b = r;
  }
  return xdegree(a) == 0;
}

inline RatFunc eval_t(const BaseField& K, const parse_detail::Node& n) {
  switch (n.op) {
    case 'n': return RatFunc::constant(K, K.from_rational(n.num));
    case 's': return RatFunc::constant(K, parse_detail::symbol_value(K, n.sym));
    case 'w': return RatFunc(K, Poly::x());
    case '~': return RatFunc::neg(K, eval_t(K, *n.a));
    case '+': return RatFunc::add(K, eval_t(K, *n.a), eval_t(K, *n.b));
    case '-': return RatFunc::sub(K, eval_t(K, *n.a), eval_t(K, *n.b));
    case '*': return RatFunc::mul(K, eval_t(K, *n.a), eval_t(K, *n.b));
    case '/': return RatFunc::div(K, eval_t(K, *n.a), eval_t(K, *n.b));
    case '^': {
      RatFunc b = eval_t(K, *n.a), r = RatFunc::constant(K, K.one());
      long e = n.exp < 0 ? -n.exp : n.exp;
      for (long i = 0; i < e; ++i) r = RatFunc::mul(K, r, b);
      return n.exp < 0 ? RatFunc::inv(K, r) : r;
    }
  }
  throw ParseError("variable X inside a coefficient");
}

inline XPoly xadd(const BaseField& K, XPoly a, const XPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = RatFunc::add(K, a[i], b[i]);
  return xtrim(a);
}
inline XPoly xmul(const BaseField& K, const XPoly& a, const XPoly& b) {
  if (a.empty() || b.empty()) return {};
  XPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = RatFunc::add(K, r[i + j], RatFunc::mul(K, a[i], b[j]));
  return xtrim(r);
}
inline XPoly xscale(const BaseField& K, XPoly a, const RatFunc& s) {
  for (auto& c : a) c = RatFunc::mul(K, c, s);
  return xtrim(a);
}

inline XPoly eval_x(const BaseField& K, const parse_detail::Node& n, bool allow_t) {
  auto has_x = [](const parse_detail::Node& m, auto&& self) -> bool {
    if (m.op == 'v') return true;
    return (m.a && self(*m.a, self)) || (m.b && self(*m.b, self));
  };
  if (!has_x(n, has_x)) {
    if (!allow_t) {
      auto has_t = [](const parse_detail::Node& m, auto&& self) -> bool {
        if (m.op == 'w') return true;
        return (m.a && self(*m.a, self)) || (m.b && self(*m.b, self));
      };
      if (has_t(n, has_t)) throw ParseError("variable T not allowed over a base field");
    }
    RatFunc c = eval_t(K, n);
    return c.is_zero() ? XPoly{} : XPoly{c};
  }
  switch (n.op) {
    case 'v': return {RatFunc(), RatFunc::constant(K, K.one())};
    case '~': return xscale(K, eval_x(K, *n.a, allow_t), RatFunc::constant(K, K.neg(K.one())));
    case '+': return xadd(K, eval_x(K, *n.a, allow_t), eval_x(K, *n.b, allow_t));
    case '-':
      return xadd(K, eval_x(K, *n.a, allow_t), xscale(K, eval_x(K, *n.b, allow_t), RatFunc::constant(K, K.neg(K.one()))));
    case '*': return xmul(K, eval_x(K, *n.a, allow_t), eval_x(K, *n.b, allow_t));
    case '/': {
      XPoly d = eval_x(K, *n.b, allow_t);
      if (xdegree(d) != 0) throw ParseError("division by a polynomial in X");
      return xscale(K, eval_x(K, *n.a, allow_t), RatFunc::inv(K, d[0]));
    }
    case '^': {
      if (n.exp < 0) throw ParseError("negative power of X");
      XPoly b = eval_x(K, *n.a, allow_t), r{RatFunc::constant(K, K.one())};
      for (long i = 0; i < n.exp; ++i) r = xmul(K, r, b);
      return r;
    }
  }
  throw ParseError("bad polynomial in X");
}

}  // namespace detail

/// Parses a polynomial in X with coefficients in k, or in k(T) when F is a
/// function field (e.g. "X^3 - (T+2)*X").
inline XPoly parse_xpoly(const Field& F, const std::string& text) {
  parse_detail::Parser p(text, "X", "T");
  auto n = p.parse();
  return detail::eval_x(F.base(), *n, F.is_function_field());
}

inline RationalMapP1 make_map(const Field& F, XPoly A, XPoly B) {
  const BaseField& K = F.base();
  A = detail::xtrim(std::move(A));
  B = detail::xtrim(std::move(B));
  if (xdegree(B) < 0) throw DomainError("rational map: zero denominator");
  if (xdegree(A) <= xdegree(B)) throw DomainError("rational map: need deg A > deg B");
  if (!detail::xcoprime(K, A, B)) throw DomainError("rational map: A and B are not coprime");
  return RationalMapP1{F, std::move(A), std::move(B)};
}

/// Parses "A / B" where A and B are polynomials in X (the first top-level
/// '/' separates them).
inline RationalMapP1 parse_map(const Field& F, const std::string& text) {
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == '/' && depth == 0) {
      std::string a = text.substr(0, i), b = text.substr(i + 1);
      bool a_has_x = a.find('X') != std::string::npos;
      if (a_has_x) return make_map(F, parse_xpoly(F, a), parse_xpoly(F, b));
    }
  }
  return make_map(F, parse_xpoly(F, text), {RatFunc::constant(F.base(), 1)});
}

/// Bezout matrix: (A(X)B(Y) - A(Y)B(X)) / (X - Y) = sum b_pq X^p Y^q.
inline std::vector<std::vector<RatFunc>> bezout_matrix(const RationalMapP1& f) {
  const BaseField& K = f.field.base();
  int n = xdegree(f.A);
  std::vector<std::vector<RatFunc>> M(static_cast<std::size_t>(n), std::vector<RatFunc>(static_cast<std::size_t>(n)));
  auto coeff = [&](const XPoly& p, int i) { return i < static_cast<int>(p.size()) ? p[static_cast<std::size_t>(i)] : RatFunc(); };
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j < i; ++j) {
      RatFunc d = RatFunc::sub(K, RatFunc::mul(K, coeff(f.A, i), coeff(f.B, j)), RatFunc::mul(K, coeff(f.A, j), coeff(f.B, i)));
      if (d.is_zero()) continue;
      for (int t = 0; t <= i - j - 1; ++t) {
        auto& slot = M[static_cast<std::size_t>(j + t)][static_cast<std::size_t>(i - 1 - t)];
        slot = RatFunc::add(K, slot, d);
      }
    }
  return M;
}

/// Diagonal entries of a symmetric matrix under congruence, by pivoting on
/// a nonzero diagonal entry, or on e_i + e_j when the diagonal vanishes.
inline std::vector<RatFunc> diagonalize_symmetric(const BaseField& K, std::vector<std::vector<RatFunc>> M) {
  std::size_t n = M.size();
  std::vector<RatFunc> diag;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n && piv == n; ++i)
      if (!done[i] && !M[i][i].is_zero()) piv = i;
    if (piv == n) {
      std::size_t bi = n, bj = n;
      for (std::size_t i = 0; i < n && bi == n; ++i)
        for (std::size_t j = 0; j < n && bi == n; ++j)
          if (!done[i] && !done[j] && i != j && !M[i][j].is_zero()) {
            bi = i;
            bj = j;
          }
      if (bi == n) throw DomainError("degenerate symmetric matrix");
      // row/column bi += row/column bj makes M[bi][bi] = 2 M[bi][bj] != 0
      for (std::size_t k = 0; k < n; ++k) M[bi][k] = RatFunc::add(K, M[bi][k], M[bj][k]);
      for (std::size_t k = 0; k < n; ++k) M[k][bi] = RatFunc::add(K, M[k][bi], M[k][bj]);
      piv = bi;
    }
    RatFunc p = M[piv][piv];
    diag.push_back(p);
    done[piv] = true;
    RatFunc pinv = RatFunc::inv(K, p);
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || M[i][piv].is_zero()) continue;
      RatFunc f = RatFunc::mul(K, M[i][piv], pinv);
      for (std::size_t k = 0; k < n; ++k) M[i][k] = RatFunc::sub(K, M[i][k], RatFunc::mul(K, f, M[piv][k]));
      for (std::size_t k = 0; k < n; ++k) M[k][i] = RatFunc::sub(K, M[k][i], RatFunc::mul(K, f, M[k][piv]));
    }
  }
  return diag;
}

struct BezoutResult {
  std::vector<std::vector<RatFunc>> matrix;
  DiagonalForm diagonal;
  GWClass gw;
};

inline BezoutResult bezout_form(const RationalMapP1& f) {
  const BaseField& K = f.field.base();
  BezoutResult r;
  r.matrix = bezout_matrix(f);
  std::vector<Element> entries;
  for (const auto& d : diagonalize_symmetric(K, r.matrix)) entries.push_back(d.to_element(f.field));
  r.diagonal = DiagonalForm(f.field, entries);
  r.gw = GWClass::of(r.diagonal);
  return r;
}

/// (X^3 - (a3/a2 + a2/a1) X) / (a1 X^2 - a1 a3 / a2), whose Bezout class
/// is <a1, a2, a3>.
inline RationalMapP1 family_from_form(const Field& F, const Element& a1, const Element& a2, const Element& a3) {
  const BaseField& K = F.base();
  for (const auto* a : {&a1, &a2, &a3})
    if (a->c == 0) throw DomainError("family_from_form: zero entry");
  RatFunc r1 = RatFunc::from_element(F, a1), r2 = RatFunc::from_element(F, a2), r3 = RatFunc::from_element(F, a3);
  RatFunc lin = RatFunc::neg(K, RatFunc::add(K, RatFunc::div(K, r3, r2), RatFunc::div(K, r2, r1)));
  XPoly A{RatFunc(), lin, RatFunc(), RatFunc::constant(K, K.one())};
  XPoly B{RatFunc::neg(K, RatFunc::div(K, RatFunc::mul(K, r1, r3), r2)), RatFunc(), r1};
  return make_map(F, A, B);
}

/// (X^3 - (T + u) X) / (X^2 - T) over k(T).
inline RationalMapP1 t_family(const BaseField& K, const Scalar& u) {
  Field F = Field::rational_functions(K);
  RatFunc t(K, Poly::x());
  XPoly A{RatFunc(), RatFunc::neg(K, RatFunc::add(K, t, RatFunc::constant(K, u))), RatFunc(), RatFunc::constant(K, K.one())};
  XPoly B{RatFunc::neg(K, t), RatFunc(), RatFunc::constant(K, K.one())};
  return make_map(F, A, B);
}

struct ClutchingClass {
  WittClass b;              // g = g(1) + (<T> - 1) b, b in W(k)_tor
  bool s_present = false;   // S = {0, 1} when T is a sum of squares
  bool trivial = true;      // b in S (or b = 0)
  std::optional<ContractionClass> contraction;  // class of g at (T) when g is a unit
};

/// H^1 class of a G_m-family in normal form g(1) + (<T> - 1) b.
inline ClutchingClass clutching_class(const GWClass& g) {
  const Field& F = g.field();
  if (!F.is_function_field()) throw DomainError("clutching_class: family must live over k(T)");
  const BaseField& K = F.base();
  Field k(K);
  Place at1 = Place::at(F, Poly::linear(K, K.one()));
  Place at0 = Place::at(F, Poly::x());
  const WittClass& w = g.witt();
  if (!is_unramified(at1, w)) throw UnsupportedError("unsupported normalization: family is ramified at T = 1");
  WittClass g1 = specialization(at1, w);
  WittClass diff = w - extend_constant(F, g1);
  WittClass b = second_residue(at0, diff);
  if (diff != (pi_class(F, Poly::x()) - WittClass::one(F)) * extend_constant(F, b))
    throw UnsupportedError("unsupported normalization: g - g(1) is not (<T> - 1) b with b constant");
  if (!is_torsion(b)) throw UnsupportedError("unsupported normalization: b is not torsion");
  ClutchingClass c;
  c.b = b;
  c.s_present = elem::is_sum_of_squares(F, elem::from_poly_factor(Poly::x()));
  c.trivial = b.is_zero() || (c.s_present && b == WittClass::one(k));
  if (is_unit(g)) c.contraction = contraction_classify(at0, w);
  return c;
}

}  // namespace wittkit
