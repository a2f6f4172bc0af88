#pragma once

// Discrete valuations: p-adic places on Q and Q_p, monic irreducible
// places and the place at infinity on k(T). Residue fields, unit
// reduction and the first/second residue of diagonal data.

#include <map>
#include <string>
#include <vector>

#include "quad_forms.hpp"

namespace wittkit {

/// Diagonal data in normal form: sum over squarefree monomials m of
/// <m> * w_m with w_m a canonical base-field class (entry vector).
/// Base-field classes use only the empty monomial.
using WittTerms = std::map<Monomial, std::vector<Scalar>>;

class Place {
 public:
  enum class Kind { PAdic, Polynomial, Infinity };

  /// p-adic place of Q or Q_p (p odd).
  static Place padic(const Field& F, const Integer& p) {
    if (F.is_function_field() || (F.kind() != BaseKind::Rationals && F.kind() != BaseKind::PAdic))
      throw DomainError("p-adic place needs Q or Q_p, got " + F.name());
    if (F.kind() == BaseKind::PAdic && F.base().prime() != p)
      throw DomainError("Q_p carries only the place p");
    if (!is_prime(p)) throw DomainError("not a prime: " + p.get_str());
    if (p == 2) throw DomainError("residue characteristic 2 is not supported");
    Place v(F, Kind::PAdic);
    v.p_ = p;
    v.kappa_ = Field(BaseField::finite(p));
    return v;
  }

  /// Place of k(T) at a monic irreducible polynomial.
  static Place at(const Field& F, const Poly& pi) {
    if (!F.is_function_field()) throw DomainError("polynomial place needs k(T), got " + F.name());
    const BaseField& K = F.base();
    if (pi.degree() < 1 || !pi.is_monic()) throw DomainError("place must be a monic polynomial of positive degree");
    Place v(F, Kind::Polynomial);
    v.pi_ = pi;
    auto irr = poly::irreducibility(K, pi);
    if (irr == poly::Irreducibility::Reducible) throw DomainError("place polynomial " + poly::format(K, pi) + " is reducible");
    v.verified_ = irr == poly::Irreducibility::Irreducible;
    if (pi.degree() == 1) {
      v.kappa_ = Field(K);
    } else if (K.kind() == BaseKind::Finite) {
      v.kappa_ = Field(BaseField::finite(ipow(K.order(), static_cast<unsigned long>(pi.degree()))));
    } else if (K.kind() == BaseKind::Real) {
      v.kappa_ = Field(BaseField::square_closed());
    } else {
      v.kappa_supported_ = false;
    }
    return v;
  }

  static Place infinity(const Field& F) {
    if (!F.is_function_field()) throw DomainError("infinite place needs k(T), got " + F.name());
    Place v(F, Kind::Infinity);
    v.kappa_ = Field(F.base());
    return v;
  }

  /// Parses "(T-1)", "T", "inf"/"oo" for k(T), or a prime for Q / Q_p.
  static Place parse(const Field& F, const std::string& text) {
    std::string s;
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s == "inf" || s == "oo" || s == "infinity" || s == "∞") return infinity(F);
    if (!F.is_function_field()) {
      try {
        return padic(F, Integer(s));
      } catch (const std::invalid_argument&) {
        throw ParseError("bad place: " + text);
      }
    }
    Poly pi;
    try {
      pi = parse_poly(F.base(), s);
    } catch (const DomainError& e) {
      throw ParseError(std::string("bad place: ") + e.what());
    }
    if (pi.degree() < 1) throw ParseError("place must be a polynomial of positive degree: " + text);
    return at(F, poly::monic(F.base(), pi));
  }

  /// Same place with uniformizer (canonical uniformizer) * w, w a unit here.
  Place with_uniformizer_unit(const Element& w) const {
    if (valuation(w) != 0) throw DomainError("uniformizer override must be a unit at the place");
    Place v = *this;
    v.override_ = w;
    v.has_override_ = true;
    return v;
  }

  const Field& field() const { return F_; }
  Kind kind() const { return kind_; }
  const Poly& pi() const { return pi_; }
  const Integer& p() const { return p_; }
  int degree() const { return kind_ == Kind::Polynomial ? pi_.degree() : 1; }
  bool irreducibility_verified() const { return verified_; }
  bool has_uniformizer_override() const { return has_override_; }
  const Element& uniformizer_unit() const { return override_; }
  bool residue_field_supported() const { return kappa_supported_; }
  const Field& residue_field() const {
    if (!kappa_supported_)
      throw UnsupportedError("residue field at " + name() + " is a number field (unsupported)");
    return kappa_;
  }

  std::string name() const {
    switch (kind_) {
      case Kind::PAdic: return p_.get_str();
      case Kind::Infinity: return "inf";
      case Kind::Polynomial: return pi_ == Poly::x() ? "(T)" : "(" + poly::format(F_.base(), pi_) + ")";
    }
    return "?";
  }

  bool operator==(const Place& o) const {
    return F_ == o.F_ && kind_ == o.kind_ && pi_ == o.pi_ && p_ == o.p_ && has_override_ == o.has_override_ &&
           (!has_override_ || override_ == o.override_);
  }
  bool operator<(const Place& o) const {
    if (kind_ != o.kind_) return kind_ < o.kind_;
    if (kind_ == Kind::PAdic) return p_ < o.p_;
    return pi_ < o.pi_;
  }

  /// Canonical uniformizer (times the override): p, pi, or 1/T.
  Element uniformizer() const {
    Element u;
    if (kind_ == Kind::PAdic) u = Element(Scalar(p_));
    else if (kind_ == Kind::Polynomial) u = elem::from_poly_factor(pi_);
    else u = elem::from_poly_factor(Poly::x(), -1);
    return has_override_ ? elem::mul(F_, u, override_) : u;
  }

  int valuation(const Element& a) const {
    elem::check_field(F_, a);
    switch (kind_) {
      case Kind::PAdic: return wittkit::valuation(a.c, p_);
      case Kind::Infinity: return static_cast<int>(-elem::degree(a));
      case Kind::Polynomial:
        for (const auto& x : a.f)
          if (x.pi == pi_) return x.e;
        return 0;
    }
    return 0;
  }

  /// Residue of the unit a / uniformizer^{v(a)} as a scalar of the residue
  /// field. Only for residue fields whose scalars the library carries
  /// directly (p-adic places, degree-1 places, infinity).
  Scalar reduce(const Element& a) const {
    int v = valuation(a);
    Scalar r = reduce_canonical(a, v);
    if (has_override_) {
      const BaseField& k = residue_field().base();
      r = k.mul(r, k.pow(reduce_canonical(override_, 0), -v));
    }
    return r;
  }

  /// Canonical square class in the residue field of a / uniformizer^{v(a)}.
  Scalar residue_square_class(const Element& a) const {
    const BaseField& k = residue_field().base();
    if (kind_ != Kind::Polynomial || pi_.degree() == 1) return k.square_class(reduce(a));
    if (k.kind() == BaseKind::SquareClosed) return 1;
    // degree >= 2 over F_q: quadratic character of the residue polynomial
    int v = valuation(a);
    Poly r = residue_poly(a, v);
    if (has_override_) {
      Poly w = residue_poly(override_, 0);
      r = poly::mulmod(F_.base(), r, pow_mod_signed(w, -v), pi_);
    }
    return quadratic_character(r) ? Scalar(1) : k.nonresidue();
  }

  /// Square class in the residue field of a base scalar c (a constant).
  Scalar constant_square_class(const Scalar& c) const { return residue_square_class(Element(c)); }

 private:
  Place(Field F, Kind k) : F_(std::move(F)), kind_(k) {}

  Scalar reduce_canonical(const Element& a, int v) const {
    const BaseField& K = F_.base();
    switch (kind_) {
      case Kind::PAdic: {
        Rational u = unit_part(a.c, p_);
        return residue_field().base().from_rational(u);
      }
      case Kind::Infinity: return a.c;
      case Kind::Polynomial: {
        if (pi_.degree() != 1) throw InternalError("reduce: higher-degree place");
        Scalar alpha = K.neg(pi_.c[0]);
        Scalar r = a.c;
        for (const auto& x : a.f) {
          if (x.pi == pi_) continue;
          r = K.mul(r, K.pow(poly::eval(K, x.pi, alpha), x.e));
        }
        (void)v;
        return r;
      }
    }
    return 0;
  }

  Poly pow_mod_signed(const Poly& b, long e) const {
    const BaseField& K = F_.base();
    Integer q = ipow(K.order(), static_cast<unsigned long>(pi_.degree()));
    // inverse via b^(Q-2) in F_q[T]/pi
    Poly base = e < 0 ? poly::powmod(K, b, q - 2, pi_) : b;
    return poly::powmod(K, base, Integer(e < 0 ? -e : e), pi_);
  }

  Poly residue_poly(const Element& a, int /*v*/) const {
    const BaseField& K = F_.base();
    Poly r = Poly::constant(a.c);
    for (const auto& x : a.f) {
      if (x.pi == pi_) continue;
      r = poly::mulmod(K, r, pow_mod_signed(poly::mod(K, x.pi, pi_), x.e), pi_);
    }
    return r;
  }

  bool quadratic_character(const Poly& r) const {
    const BaseField& K = F_.base();
    Integer q = ipow(K.order(), static_cast<unsigned long>(pi_.degree()));
    Poly s = poly::powmod(K, r, (q - 1) / 2, pi_);
    if (s.is_zero()) throw InternalError("quadratic character of zero");
    return s == Poly::constant(K.one());
  }

  Field F_;
  Kind kind_;
  Poly pi_;
  Integer p_ = 0;
  Field kappa_;
  bool kappa_supported_ = true;
  bool verified_ = true;
  bool has_override_ = false;
  Element override_;
};

namespace detail {

/// Expands normal-form terms to diagonal entries.
inline std::vector<Element> expand_terms(const Field& F, const WittTerms& t) {
  std::vector<Element> out;
  for (const auto& [m, w] : t)
    for (const auto& c : w) {
      Element e(c);
      for (const auto& pi : m) e.f.push_back({pi, 1});
      out.push_back(e);
    }
  (void)F;
  return out;
}

/// First (which = 1) or second (which = 2) residue of normal-form data,
/// as a canonical class of the residue field.
inline std::vector<Scalar> residue_terms(const Place& v, const WittTerms& t, int which) {
  const Field& F = v.field();
  const BaseField& k = v.residue_field().base();
  std::vector<Scalar> acc;
  for (const auto& e : expand_terms(F, t)) {
    int val = v.valuation(e);
    bool odd = (val % 2) != 0;
    if (odd != (which == 2)) continue;
    acc.push_back(v.residue_square_class(e));
  }
  return classify::canonical(k, acc);
}

}  // namespace detail

}  // namespace wittkit
