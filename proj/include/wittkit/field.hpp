#pragma once

// Base fields (Q, R, F_q, Q_p, the square-closed mock field C), rational
// function fields k(T) over them, square classes and Hilbert symbols.

#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "galois_field.hpp"
#include "integer.hpp"

namespace wittkit {

/// A scalar of a base field. For Q, R, Q_p and C this is the rational
/// value itself; for F_q it is the integer code of the element (see
/// GfContext). Arithmetic must go through the owning BaseField.
using Scalar = Rational;

enum class BaseKind { Rationals, Real, Finite, PAdic, SquareClosed };

/// Hilbert symbol (a,b)_p of nonzero rationals; p == 0 denotes the real place.
inline int hilbert_symbol(const Integer& p, const Rational& a, const Rational& b) {
  if (a == 0 || b == 0) throw DomainError("hilbert_symbol: zero argument");
  if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
  if (!is_prime(p)) throw DomainError("hilbert_symbol: not a prime: " + p.get_str());
  int al = valuation(a, p), be = valuation(b, p);
  Rational u = unit_part(a, p), v = unit_part(b, p);
  if (p != 2) {
    int s = 1;
    if ((al & 1) && (be & 1) && mpz_fdiv_ui(p.get_mpz_t(), 4) == 3) s = -s;
    if (be & 1) s *= legendre(u, p);
    if (al & 1) s *= legendre(v, p);
    return s;
  }
  auto mod8 = [](const Rational& r) {
    Integer t = r.get_num() * r.get_den();
    return static_cast<int>(mpz_fdiv_ui(t.get_mpz_t(), 8));
  };
  int u8 = mod8(u), v8 = mod8(v);
  int eu = ((u8 - 1) / 2) & 1, ev = ((v8 - 1) / 2) & 1;
  int wu = ((u8 * u8 - 1) / 8) & 1, wv = ((v8 * v8 - 1) / 8) & 1;
  int e = (eu * ev + (al & 1) * wv + (be & 1) * wu) & 1;
  return e ? -1 : 1;
}

/// Whether a nonzero rational is a square in Q_p (p == 0: in R).
inline bool is_local_square(const Integer& p, const Rational& a) {
  if (a == 0) throw DomainError("is_local_square: zero");
  if (p == 0) return a > 0;
  if (valuation(a, p) % 2) return false;
  Rational u = unit_part(a, p);
  if (p == 2) {
    Integer t = u.get_num() * u.get_den();
    return mpz_fdiv_ui(t.get_mpz_t(), 8) == 1;
  }
  return legendre(u, p) == 1;
}

class BaseField {
 public:
  static BaseField rationals() { return BaseField(BaseKind::Rationals); }
  static BaseField real() { return BaseField(BaseKind::Real); }
  static BaseField square_closed() { return BaseField(BaseKind::SquareClosed); }
  static BaseField finite(const Integer& q) {
    BaseField k(BaseKind::Finite);
    k.gf_ = GfContext::get(q);
    k.p_ = static_cast<unsigned long>(k.gf_->p());
    return k;
  }
  static BaseField padic(const Integer& p) {
    if (!is_prime(p)) throw DomainError("Qp: not a prime: " + p.get_str());
    BaseField k(BaseKind::PAdic);
    k.p_ = p;
    return k;
  }

  BaseKind kind() const { return kind_; }
  /// Characteristic of F_q, or the prime of Q_p.
  const Integer& prime() const { return p_; }
  Integer order() const {
    if (kind_ != BaseKind::Finite) throw DomainError("order of an infinite field");
    return Integer(static_cast<unsigned long>(gf_->order()));
  }
  const GfContext& gf() const { return *gf_; }
  unsigned long characteristic() const {
    return kind_ == BaseKind::Finite ? static_cast<unsigned long>(gf_->p()) : 0;
  }
  /// Q and R carry an ordering; the other bases are nonreal.
  bool is_real() const { return kind_ == BaseKind::Rationals || kind_ == BaseKind::Real; }
  /// Bases whose Witt ring is finite.
  bool has_finite_witt() const {
    return kind_ == BaseKind::Finite || kind_ == BaseKind::PAdic || kind_ == BaseKind::SquareClosed;
  }

  std::string name() const {
    switch (kind_) {
      case BaseKind::Rationals: return "Q";
      case BaseKind::Real: return "R";
      case BaseKind::SquareClosed: return "C";
      case BaseKind::Finite: return "F(" + order().get_str() + ")";
      case BaseKind::PAdic: return "Qp(" + p_.get_str() + ")";
    }
    return "?";
  }

  bool operator==(const BaseField& o) const {
    if (kind_ != o.kind_) return false;
    if (kind_ == BaseKind::Finite) return gf_->order() == o.gf_->order();
    if (kind_ == BaseKind::PAdic) return p_ == o.p_;
    return true;
  }
  bool operator!=(const BaseField& o) const { return !(*this == o); }

  // ---- arithmetic -------------------------------------------------------
  Scalar zero() const { return 0; }
  Scalar one() const { return 1; }
  Scalar from_integer(const Integer& n) const {
    if (kind_ == BaseKind::Finite) return Scalar(Integer(static_cast<unsigned long>(gf_->from_integer(n))));
    return Scalar(n);
  }
  Scalar from_rational(const Rational& r) const {
    if (kind_ != BaseKind::Finite) return r;
    Integer den = r.get_den();
    if (mpz_divisible_p(den.get_mpz_t(), p_.get_mpz_t()))
      throw DomainError("rational " + r.get_str() + " has no image in " + name());
    return div(from_integer(Integer(r.get_num())), from_integer(den));
  }
  bool is_zero(const Scalar& a) const { return a == 0; }
  Scalar add(const Scalar& a, const Scalar& b) const {
    if (kind_ == BaseKind::Finite) return code(gf_->add(u(a), u(b)));
    return a + b;
  }
  Scalar sub(const Scalar& a, const Scalar& b) const {
    if (kind_ == BaseKind::Finite) return code(gf_->sub(u(a), u(b)));
    return a - b;
  }
  Scalar neg(const Scalar& a) const {
    if (kind_ == BaseKind::Finite) return code(gf_->neg(u(a)));
    return -a;
  }
  Scalar mul(const Scalar& a, const Scalar& b) const {
    if (kind_ == BaseKind::Finite) return code(gf_->mul(u(a), u(b)));
    return a * b;
  }
  Scalar inv(const Scalar& a) const {
    if (a == 0) throw DomainError("inverse of zero");
    if (kind_ == BaseKind::Finite) return code(gf_->inv(u(a)));
    return 1 / a;
  }
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }
  Scalar pow(const Scalar& a, long e) const {
    if (e < 0) return pow(inv(a), -e);
    Scalar r = one(), b = a;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }
  /// Sign of a scalar of Q or R.
  int sign(const Scalar& a) const {
    if (!is_real()) throw DomainError("sign: field " + name() + " is not ordered");
    return sgn(a);
  }

  // ---- square classes ---------------------------------------------------
  bool is_square(const Scalar& a) const {
    if (a == 0) throw DomainError("is_square: zero");
    switch (kind_) {
      case BaseKind::SquareClosed: return true;
      case BaseKind::Real: return a > 0;
      case BaseKind::Rationals:
        return mpz_perfect_square_p(a.get_num_mpz_t()) && mpz_perfect_square_p(a.get_den_mpz_t());
      case BaseKind::PAdic: return is_local_square(p_, a);
      case BaseKind::Finite: return gf_->is_square(u(a));
    }
    return false;
  }
  /// The canonical nonsquare: least nonresidue code for F_q, the least
  /// positive integer nonresidue mod p for Q_p (3 for Q_2).
  Scalar nonresidue() const {
    if (kind_ == BaseKind::Finite) return code(gf_->nonresidue());
    if (kind_ == BaseKind::PAdic) return p_ == 2 ? Scalar(3) : Scalar(least_nonresidue(p_));
    throw DomainError("no canonical nonresidue for " + name());
  }
  /// Canonical representative of the square class of a.
  Scalar square_class(const Scalar& a) const {
    if (a == 0) throw DomainError("square_class: zero");
    switch (kind_) {
      case BaseKind::SquareClosed: return 1;
      case BaseKind::Real: return a > 0 ? 1 : -1;
      case BaseKind::Rationals: return Scalar(squarefree_part(a));
      case BaseKind::Finite: return gf_->is_square(u(a)) ? Scalar(1) : nonresidue();
      case BaseKind::PAdic: {
        Rational rep = (valuation(a, p_) % 2) ? Rational(p_) : Rational(1);
        Rational un = unit_part(a, p_);
        if (p_ == 2) {
          Integer t = un.get_num() * un.get_den();
          rep *= static_cast<long>(mpz_fdiv_ui(t.get_mpz_t(), 8));
        } else if (legendre(un, p_) == -1) {
          rep *= nonresidue();
        }
        return rep;
      }
    }
    return a;
  }
  bool same_square_class(const Scalar& a, const Scalar& b) const { return is_square(mul(a, b)); }

  /// All canonical square classes when finitely many.
  std::optional<std::vector<Scalar>> square_classes() const {
    switch (kind_) {
      case BaseKind::SquareClosed: return std::vector<Scalar>{1};
      case BaseKind::Real: return std::vector<Scalar>{1, -1};
      case BaseKind::Finite: return std::vector<Scalar>{1, nonresidue()};
      case BaseKind::PAdic: {
        if (p_ == 2) return std::vector<Scalar>{1, 3, 5, 7, 2, 6, 10, 14};
        Scalar u = nonresidue(), p(p_);
        return std::vector<Scalar>{1, u, p, u * p};
      }
      case BaseKind::Rationals: return std::nullopt;
    }
    return std::nullopt;
  }

  // ---- text -------------------------------------------------------------
  std::string format(const Scalar& a) const {
    if (kind_ == BaseKind::Finite) return a.get_str();
    return a.get_str();
  }
  /// Scalar literal: an integer or fraction, "u" (canonical nonresidue),
  /// or "p" (the prime of Q_p).
  Scalar parse(const std::string& s) const {
    std::string t;
    for (char ch : s)
      if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.empty()) throw ParseError("empty scalar literal");
    bool negate = false;
    if (t[0] == '-' || t[0] == '+') {
      negate = t[0] == '-';
      t = t.substr(1);
    }
    Scalar v;
    if (t == "u") {
      v = nonresidue();
    } else if (t == "p" && kind_ == BaseKind::PAdic) {
      v = Scalar(p_);
    } else {
      Rational r;
      for (char ch : t)
        if (!std::isdigit(static_cast<unsigned char>(ch)) && ch != '/')
          throw ParseError("bad scalar literal: " + s);
      if (r.set_str(t, 10) != 0) throw ParseError("bad scalar literal: " + s);
      if (r.get_den() == 0) throw ParseError("zero denominator: " + s);
      r.canonicalize();
      v = from_rational(r);
    }
    return negate ? neg(v) : v;
  }

 private:
  explicit BaseField(BaseKind k) : kind_(k) {}
  static GfContext::u64 u(const Scalar& a) { return a.get_num().get_ui(); }
  static Scalar code(GfContext::u64 c) { return Scalar(Integer(static_cast<unsigned long>(c))); }

  BaseKind kind_;
  Integer p_ = 0;
  std::shared_ptr<const GfContext> gf_;
};

/// A supported field: a base field, or the rational function field k(T)
/// over a base field (nesting depth exactly one).
class Field {
 public:
  Field() : base_(BaseField::rationals()) {}
  explicit Field(BaseField base, bool function_field = false)
      : base_(std::move(base)), function_field_(function_field) {
    if (function_field_ && base_.kind() == BaseKind::SquareClosed)
      throw UnsupportedError("function fields over the square-closed mock field are not supported");
  }
  static Field rational_functions(const BaseField& k) { return Field(k, true); }

  const BaseField& base() const { return base_; }
  bool is_function_field() const { return function_field_; }
  BaseKind kind() const { return base_.kind(); }
  std::string name() const { return function_field_ ? base_.name() + "(T)" : base_.name(); }
  bool operator==(const Field& o) const { return function_field_ == o.function_field_ && base_ == o.base_; }
  bool operator!=(const Field& o) const { return !(*this == o); }

  /// Parses "Q", "R", "C", "F(7)", "Qp(3)", optionally followed by "(T)".
  static Field parse(const std::string& text) {
    std::string s;
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    bool ff = false;
    if (s.size() > 3 && s.compare(s.size() - 3, 3, "(T)") == 0) {
      ff = true;
      s = s.substr(0, s.size() - 3);
    }
    auto arg = [&](const std::string& prefix) -> Integer {
      if (s.size() <= prefix.size() + 1 || s.back() != ')') throw ParseError("bad field: " + text);
      std::string num = s.substr(prefix.size(), s.size() - prefix.size() - 1);
      for (char ch : num)
        if (!std::isdigit(static_cast<unsigned char>(ch))) throw ParseError("bad field: " + text);
      return Integer(num);
    };
    BaseField k = BaseField::rationals();
    try {
      if (s == "Q") k = BaseField::rationals();
      else if (s == "R") k = BaseField::real();
      else if (s == "C") k = BaseField::square_closed();
      else if (s.rfind("Qp(", 0) == 0) k = BaseField::padic(arg("Qp("));
      else if (s.rfind("F(", 0) == 0) k = BaseField::finite(arg("F("));
      else throw ParseError("unknown field: " + text);
    } catch (const DomainError& e) {
      throw ParseError(std::string("bad field: ") + e.what());
    }
    return Field(k, ff);
  }

 private:
  BaseField base_;
  bool function_field_ = false;
};

enum class Orderings { None, OneArchimedean, RealPoints };

/// Ordering-set descriptor of a field.
inline Orderings orderings(const Field& F) {
  if (!F.base().is_real()) return Orderings::None;
  return F.is_function_field() ? Orderings::RealPoints : Orderings::OneArchimedean;
}

}  // namespace wittkit
