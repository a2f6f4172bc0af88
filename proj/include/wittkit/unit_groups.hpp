#pragma once

// Unit groups W(F)^x and GW(F)^x: membership, inverses, the normal form
// +-<u>(1+n), the pushout square of units, and the quotient NQ(F).

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "witt_ring.hpp"

namespace wittkit {

inline bool is_unit(const WittClass& x) {
  if (x.dim_parity() == 0) return false;
  return is_nilpotent(x * x - WittClass::one(x.field()));
}

inline bool is_unit(const GWClass& x) { return (x.rank() == 1 || x.rank() == -1) && is_unit(x.witt()); }

/// x^{-1} = x (1+m)^{-1} with m = x^2 - 1 nilpotent.
inline WittClass unit_inverse(const WittClass& x) {
  if (!is_unit(x)) throw DomainError("unit_inverse: not a unit: " + x.to_string());
  const Field& F = x.field();
  WittClass m = x * x - WittClass::one(F);
  WittClass sum = WittClass::one(F), term = WittClass::one(F);
  for (int i = 1; i <= 64; ++i) {
    term = term * (-m);
    if (term.is_zero()) return x * sum;
    sum = sum + term;
  }
  throw InternalError("unit_inverse: nilpotent part did not vanish within 64 powers");
}

inline GWClass unit_inverse(const GWClass& x) {
  if (!is_unit(x)) throw DomainError("unit_inverse: not a unit");
  return GWClass(unit_inverse(x.witt()), x.rank());
}

/// Square class of the signed discriminant (-1)^{n(n-1)/2} det.
inline Element signed_discriminant(const WittClass& x) {
  const Field& F = x.field();
  auto rep = x.representative();
  Element d(1);
  for (const auto& e : rep.entries) d = elem::mul(F, d, e);
  std::size_t n = rep.entries.size();
  if ((n * (n - 1) / 2) % 2) d = elem::neg(F, d);
  return elem::square_class(F, d);
}

struct UnitDecomposition {
  int sign = 1;
  Element square_class;
  WittClass nilpotent_part;
};

/// x = sign * <u> * (1 + n). The square class is the signed discriminant,
/// whose sign pattern matches the signature of x; over Q and R a negative
/// class is folded into the sign. Unique only up to square classes lying
/// in 1 + Nil.
inline UnitDecomposition unit_decompose(const WittClass& x) {
  if (!is_unit(x)) throw DomainError("unit_decompose: not a unit: " + x.to_string());
  const Field& F = x.field();
  UnitDecomposition d;
  d.square_class = signed_discriminant(x);
  if (F.base().is_real() && !F.is_function_field() && d.square_class.c < 0) {
    d.sign = -1;
    d.square_class = elem::neg(F, d.square_class);
  }
  WittClass s = WittClass::of_element(F, d.square_class) * x;
  if (d.sign < 0) s = -s;
  d.nilpotent_part = s - WittClass::one(F);
  if (!is_nilpotent(d.nilpotent_part)) throw InternalError("unit_decompose: remainder is not nilpotent");
  return d;
}

inline WittClass recompose(const Field& F, const UnitDecomposition& d) {
  WittClass r = WittClass::of_element(F, d.square_class) * (WittClass::one(F) + d.nilpotent_part);
  return d.sign < 0 ? -r : r;
}

/// A square class <u> equal to x, if one exists. The signed discriminant
/// is a Witt invariant, so it is the only candidate.
inline std::optional<Element> represented_by_square_class(const WittClass& x) {
  if (!is_unit(x)) throw DomainError("represented_by_square_class: not a unit");
  Element u = signed_discriminant(x);
  if (WittClass::of_element(x.field(), u) == x) return u;
  return std::nullopt;
}

/// Coset of a unit modulo square-class units.
struct NQClass {
  WittClass rep;
};

inline NQClass nq_class(const WittClass& x) {
  if (!is_unit(x)) throw DomainError("nq_class: not a unit");
  return NQClass{x};
}

inline bool nq_eq(const NQClass& a, const NQClass& b) {
  return represented_by_square_class(a.rep * unit_inverse(b.rep)).has_value();
}

/// Pushout square of units for a field with finite Witt ring:
/// square classes and 1 + Nil generate W^x, amalgamated over their
/// intersection.
struct PushoutReport {
  std::string field;
  int witt_size = 0;
  int units = 0;
  int square_classes = 0;
  int one_plus_nil = 0;
  int intersection = 0;
  int nq_order = 0;
  bool generated = false;
  bool amalgamated = false;
  bool ok() const { return generated && amalgamated && units == square_classes * one_plus_nil / intersection; }
  std::string quotient() const { return nq_order == 1 ? "0" : "Z/" + std::to_string(nq_order); }
};

inline PushoutReport verify_pushout_square(const BaseField& K) {
  const auto& R = FiniteWittRing::get(K);
  PushoutReport r;
  r.field = K.name();
  r.witt_size = R.size();
  auto units = R.units();
  r.units = static_cast<int>(units.size());
  std::set<int> sq(R.square_class_indices().begin(), R.square_class_indices().end());
  std::set<int> onil;
  for (int u : units) {
    int n = R.add(u, R.neg(R.one()));
    if (is_nilpotent(R.element(n))) onil.insert(u);
  }
  std::set<int> inter;
  for (int s : sq)
    if (onil.count(s)) inter.insert(s);
  r.square_classes = static_cast<int>(sq.size());
  r.one_plus_nil = static_cast<int>(onil.size());
  r.intersection = static_cast<int>(inter.size());
  std::set<int> prod;
  for (int s : sq)
    for (int n : onil) prod.insert(R.mul(s, n));
  r.generated = prod == std::set<int>(units.begin(), units.end());
  // s*n = s'*n' iff s^{-1}s' lies in the intersection
  r.amalgamated = true;
  for (int s : sq)
    for (int n : onil)
      for (int s2 : sq)
        for (int n2 : onil)
          if (R.mul(s, n) == R.mul(s2, n2) && !inter.count(R.mul(R.inverse(s), s2))) r.amalgamated = false;
  std::set<std::set<int>> cosets;
  for (int u : units) {
    std::set<int> c;
    for (int s : sq) c.insert(R.mul(u, s));
    cosets.insert(c);
  }
  r.nq_order = static_cast<int>(cosets.size());
  return r;
}

}  // namespace wittkit
