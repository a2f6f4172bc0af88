#pragma once

// Field elements in factored form c * prod pi_i^e_i (pi_i distinct monic
// irreducibles over the base), and the literal parser for elements,
// polynomials and diagonal-form entries.

#include <algorithm>
#include <cctype>
#include <iterator>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "polynomial.hpp"

namespace wittkit {

struct Factor {
  Poly pi;
  int e = 0;
  bool operator==(const Factor& o) const { return e == o.e && pi == o.pi; }
};

/// Nonzero element of a supported field. Base-field elements have no factors.
struct Element {
  Scalar c = 1;
  std::vector<Factor> f;  // sorted by pi, exponents nonzero

  Element() = default;
  Element(Scalar constant) : c(std::move(constant)) {}  // NOLINT: implicit by design
  Element(Scalar constant, std::vector<Factor> factors) : c(std::move(constant)), f(std::move(factors)) {}

  bool is_constant() const { return f.empty(); }
  bool operator==(const Element& o) const { return c == o.c && f == o.f; }
  bool operator!=(const Element& o) const { return !(*this == o); }
  bool operator<(const Element& o) const {
    if (c != o.c) return c < o.c;
    if (f.size() != o.f.size()) return f.size() < o.f.size();
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i].pi != o.f[i].pi) return f[i].pi < o.f[i].pi;
      if (f[i].e != o.f[i].e) return f[i].e < o.f[i].e;
    }
    return false;
  }
};

/// Squarefree monic monomial: sorted list of distinct irreducibles.
using Monomial = std::vector<Poly>;

inline Monomial monomial_product(const Monomial& a, const Monomial& b) {
  // product modulo squares = symmetric difference
  Monomial r;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

namespace elem {

inline void check_field(const Field& F, const Element& a) {
  if (a.c == 0) throw DomainError("zero element");
  if (!F.is_function_field() && !a.f.empty()) throw DomainError("element with factors over base field " + F.name());
}

inline Element mul(const Field& F, const Element& a, const Element& b) {
  const BaseField& K = F.base();
  Element r(K.mul(a.c, b.c));
  std::size_t i = 0, j = 0;
  while (i < a.f.size() || j < b.f.size()) {
    if (j == b.f.size() || (i < a.f.size() && a.f[i].pi < b.f[j].pi)) {
      r.f.push_back(a.f[i++]);
    } else if (i == a.f.size() || b.f[j].pi < a.f[i].pi) {
      r.f.push_back(b.f[j++]);
    } else {
      int e = a.f[i].e + b.f[j].e;
      if (e) r.f.push_back({a.f[i].pi, e});
      ++i;
      ++j;
    }
  }
  return r;
}
inline Element inv(const Field& F, const Element& a) {
  Element r(F.base().inv(a.c), a.f);
  for (auto& x : r.f) x.e = -x.e;
  return r;
}
inline Element div(const Field& F, const Element& a, const Element& b) { return mul(F, a, inv(F, b)); }
inline Element neg(const Field& F, const Element& a) { return Element(F.base().neg(a.c), a.f); }
inline Element pow(const Field& F, const Element& a, long e) {
  Element r(F.base().pow(a.c, e), a.f);
  for (auto& x : r.f) x.e = static_cast<int>(x.e * e);
  r.f.erase(std::remove_if(r.f.begin(), r.f.end(), [](const Factor& x) { return x.e == 0; }), r.f.end());
  return r;
}
inline Element from_poly_factor(const Poly& pi, int e = 1) { return Element(1, {{pi, e}}); }

/// Sum of e_i * deg(pi_i): minus the valuation at infinity.
inline long degree(const Element& a) {
  long d = 0;
  for (const auto& x : a.f) d += static_cast<long>(x.e) * x.pi.degree();
  return d;
}

/// Odd-exponent part as a squarefree monomial.
inline Monomial odd_part(const Element& a) {
  Monomial m;
  for (const auto& x : a.f)
    if (x.e % 2) m.push_back(x.pi);
  return m;
}

/// Canonical square-class representative: canonical constant times the
/// odd-exponent monomial.
inline Element square_class(const Field& F, const Element& a) {
  check_field(F, a);
  Element r(F.base().square_class(a.c));
  for (const auto& pi : odd_part(a)) r.f.push_back({pi, 1});
  return r;
}

inline bool is_square(const Field& F, const Element& a) {
  check_field(F, a);
  for (const auto& x : a.f)
    if (x.e % 2) return false;
  return F.base().is_square(a.c);
}

/// Value at a point of the base where no factor vanishes.
inline Scalar evaluate(const Field& F, const Element& a, const Scalar& t) {
  const BaseField& K = F.base();
  Scalar v = a.c;
  for (const auto& x : a.f) {
    Scalar pv = poly::eval(K, x.pi, t);
    if (pv == 0) throw DomainError("evaluate: factor vanishes at the point");
    v = K.mul(v, K.pow(pv, x.e));
  }
  return v;
}

/// Sum-of-squares decision. Nonreal fields: always. Q, R: positivity.
/// Q(T), R(T): positive semidefinite as a real function, i.e. positive
/// constant and no real root in an odd-exponent factor.
inline bool is_sum_of_squares(const Field& F, const Element& a) {
  check_field(F, a);
  const BaseField& K = F.base();
  if (!K.is_real()) return true;
  if (a.c < 0) return false;
  for (const auto& x : a.f)
    if ((x.e % 2) && poly::count_real_roots(x.pi) > 0) return false;
  return true;
}

inline std::string format(const Field& F, const Element& a) {
  const BaseField& K = F.base();
  if (a.f.empty()) return K.format(a.c);
  std::string out;
  if (a.c != 1) out = K.format(a.c);
  for (const auto& x : a.f) {
    std::string p = poly::format(K, x.pi);
    std::string part = (x.pi == Poly::x()) ? std::string("T") : "(" + p + ")";
    if (x.e != 1) part += "^" + std::to_string(x.e);
    out += out.empty() ? part : "*" + part;
  }
  return out;
}

}  // namespace elem

// ---- parsing ---------------------------------------------------------------

namespace parse_detail {

struct Node {
  char op = 'n';  // n number, v/w variables, s symbol, ~ negate, + - * / ^
  Rational num;
  std::string sym;
  long exp = 0;
  std::unique_ptr<Node> a, b;
};

class Parser {
 public:
  Parser(std::string text, std::string var, std::string var2 = "")
      : s_(std::move(text)), var_(std::move(var)), var2_(std::move(var2)) {}

  std::unique_ptr<Node> parse() {
    auto n = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " in \"" + s_ + "\"");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char ch) {
    skip();
    return i_ < s_.size() && s_[i_] == ch;
  }
  bool starts_atom() {
    skip();
    if (i_ >= s_.size()) return false;
    char ch = s_[i_];
    return std::isdigit(static_cast<unsigned char>(ch)) || std::isalpha(static_cast<unsigned char>(ch)) || ch == '(';
  }
  static std::unique_ptr<Node> bin(char op, std::unique_ptr<Node> a, std::unique_ptr<Node> b) {
    auto n = std::make_unique<Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }
  std::unique_ptr<Node> expr() {
    auto n = term();
    while (peek('+') || peek('-')) {
      char op = s_[i_++];
      n = bin(op, std::move(n), term());
    }
    return n;
  }
  std::unique_ptr<Node> term() {
    auto n = unary();
    for (;;) {
      if (peek('*') || peek('/')) {
        char op = s_[i_++];
        n = bin(op, std::move(n), unary());
      } else if (starts_atom()) {
        n = bin('*', std::move(n), power());
      } else {
        return n;
      }
    }
  }
  std::unique_ptr<Node> unary() {
    if (peek('-')) {
      ++i_;
      auto n = std::make_unique<Node>();
      n->op = '~';
      n->a = unary();
      return n;
    }
    if (peek('+')) {
      ++i_;
      return unary();
    }
    return power();
  }
  std::unique_ptr<Node> power() {
    auto n = atom();
    if (peek('^')) {
      ++i_;
      skip();
      bool negative = false;
      if (peek('-')) {
        negative = true;
        ++i_;
      }
      skip();
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (st == i_) fail("expected exponent");
      if (i_ - st > 6) fail("exponent too large");
      auto p = std::make_unique<Node>();
      p->op = '^';
      p->exp = std::stol(s_.substr(st, i_ - st)) * (negative ? -1 : 1);
      p->a = std::move(n);
      return p;
    }
    return n;
  }
  std::unique_ptr<Node> atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    char ch = s_[i_];
    if (ch == '(') {
      ++i_;
      auto n = expr();
      if (!peek(')')) fail("expected ')'");
      ++i_;
      return n;
    }
    auto n = std::make_unique<Node>();
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      n->op = 'n';
      n->num = Rational(Integer(s_.substr(st, i_ - st)));
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::size_t st = i_;
      while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) ++i_;
      std::string id = s_.substr(st, i_ - st);
      if (id == var_) {
        n->op = 'v';
      } else if (!var2_.empty() && id == var2_) {
        n->op = 'w';
      } else if (id == "u" || id == "p") {
        n->op = 's';
        n->sym = id;
      } else {
        fail("unknown identifier '" + id + "'");
      }
      return n;
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  std::string s_, var_, var2_;
  std::size_t i_ = 0;
};

inline Scalar symbol_value(const BaseField& K, const std::string& sym) {
  if (sym == "u") return K.nonresidue();
  if (sym == "p" && K.kind() == BaseKind::PAdic) return Scalar(K.prime());
  throw ParseError("symbol '" + sym + "' has no meaning over " + K.name());
}

inline Poly eval_poly(const BaseField& K, const Node& n, bool allow_var) {
  switch (n.op) {
    case 'n': return Poly::constant(K.from_rational(n.num));
    case 's': return Poly::constant(symbol_value(K, n.sym));
    case 'v':
      if (!allow_var) throw ParseError("variable not allowed here");
      return Poly::x();
    case '~': return poly::neg(K, eval_poly(K, *n.a, allow_var));
    case '+': return poly::add(K, eval_poly(K, *n.a, allow_var), eval_poly(K, *n.b, allow_var));
    case '-': return poly::sub(K, eval_poly(K, *n.a, allow_var), eval_poly(K, *n.b, allow_var));
    case '*': return poly::mul(K, eval_poly(K, *n.a, allow_var), eval_poly(K, *n.b, allow_var));
    case '/': {
      Poly d = eval_poly(K, *n.b, allow_var);
      if (d.degree() != 0) throw ParseError("division by a non-constant in a polynomial");
      return poly::scale(K, eval_poly(K, *n.a, allow_var), K.inv(d.c[0]));
    }
    case '^':
      if (n.exp < 0) throw ParseError("negative exponent in a polynomial");
      return poly::pow(K, eval_poly(K, *n.a, allow_var), static_cast<unsigned long>(n.exp));
  }
  throw ParseError("bad expression");
}

inline Element element_from_poly(const Field& F, const Poly& p) {
  if (p.is_zero()) throw DomainError("zero element");
  auto [lead, fs] = poly::factor(F.base(), p);
  Element r(lead);
  for (auto& x : fs) r.f.push_back({x.pi, x.e});
  return r;
}

inline Element eval_element(const Field& F, const Node& n) {
  const BaseField& K = F.base();
  bool ff = F.is_function_field();
  switch (n.op) {
    case 'n': {
      Scalar v = K.from_rational(n.num);
      if (v == 0) throw DomainError("zero element");
      return Element(v);
    }
    case 's': return Element(symbol_value(K, n.sym));
    case 'v':
      if (!ff) throw ParseError("variable T not allowed over " + F.name());
      return elem::from_poly_factor(Poly::x());
    case '~': return elem::neg(F, eval_element(F, *n.a));
    case '*': return elem::mul(F, eval_element(F, *n.a), eval_element(F, *n.b));
    case '/': return elem::div(F, eval_element(F, *n.a), eval_element(F, *n.b));
    case '^': return elem::pow(F, eval_element(F, *n.a), n.exp);
    case '+':
    case '-': return element_from_poly(F, eval_poly(K, n, ff));
  }
  throw ParseError("bad expression");
}

}  // namespace parse_detail

/// Polynomial literal over the base, e.g. "T^2 - 2/3*T + 1".
inline Poly parse_poly(const BaseField& K, const std::string& text, const std::string& var = "T") {
  parse_detail::Parser p(text, var);
  auto n = p.parse();
  return parse_detail::eval_poly(K, *n, true);
}

/// Element literal: a product/quotient of constants and polynomials in
/// T, e.g. "3 * (T-1)^2 * (T^2+1)^-1". Polynomials are factored (see
/// poly::factor); zero is rejected.
inline Element parse_element(const Field& F, const std::string& text) {
  parse_detail::Parser p(text, "T");
  auto n = p.parse();
  Element e = parse_detail::eval_element(F, *n);
  if (e.c == 0) throw DomainError("zero element");
  return e;
}

}  // namespace wittkit
