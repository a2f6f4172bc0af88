#pragma once

// Witt and Grothendieck-Witt rings: canonical classes, ring operations,
// torsion and nilpotence, the level-n groups W_tor^(n), and memoized
// tables for finite Witt rings.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "place.hpp"

namespace wittkit {

/// Witt class. Over a base field the terms hold the canonical anisotropic
/// representative under the empty monomial. Over k(T) they hold a normal
/// form sum <m> w_m that is not unique; equality is decided by residues.
class WittClass {
 public:
  WittClass() : F_(BaseField::rationals()) {}
  explicit WittClass(Field F) : F_(std::move(F)) {}

  static WittClass zero(const Field& F) { return WittClass(F); }
  static WittClass one(const Field& F) { return of_element(F, Element(1)); }
  static WittClass of_element(const Field& F, const Element& a) {
    return of(DiagonalForm(F, {a}));
  }
  static WittClass of_scalars(const Field& F, const std::vector<Scalar>& xs) {
    return of(DiagonalForm::of_scalars(F, xs));
  }
  static WittClass of(const DiagonalForm& q) {
    WittClass x(q.field);
    const BaseField& K = q.field.base();
    std::map<Monomial, std::vector<Scalar>> acc;
    for (const auto& e : q.entries) {
      elem::check_field(q.field, e);
      acc[elem::odd_part(e)].push_back(e.c);
    }
    for (auto& [m, w] : acc) {
      auto c = classify::canonical(K, w);
      if (!c.empty()) x.t_[m] = std::move(c);
    }
    return x;
  }
  static WittClass from_terms(const Field& F, const WittTerms& t) {
    WittClass x(F);
    for (const auto& [m, w] : t) {
      auto c = classify::canonical(F.base(), w);
      if (!c.empty()) x.t_[m] = std::move(c);
    }
    return x;
  }

  const Field& field() const { return F_; }
  const WittTerms& terms() const { return t_; }
  bool is_function_field() const { return F_.is_function_field(); }

  /// Canonical entries of a base-field class.
  std::vector<Scalar> base_entries() const {
    if (F_.is_function_field()) throw DomainError("base_entries on a function-field class");
    auto it = t_.find(Monomial{});
    return it == t_.end() ? std::vector<Scalar>{} : it->second;
  }

  /// Diagonal representative (canonical anisotropic over base fields).
  DiagonalForm representative() const { return DiagonalForm(F_, detail::expand_terms(F_, t_)); }

  int representative_dim() const {
    int d = 0;
    for (const auto& [m, w] : t_) d += static_cast<int>(w.size());
    return d;
  }
  /// Rank mod 2, a ring homomorphism W -> Z/2.
  int dim_parity() const { return representative_dim() % 2; }

  void check_same(const WittClass& o) const {
    if (F_ != o.F_) throw DomainError("field mismatch: " + F_.name() + " vs " + o.F_.name());
  }

  WittClass operator+(const WittClass& o) const {
    check_same(o);
    WittTerms acc = t_;
    for (const auto& [m, w] : o.t_) acc[m].insert(acc[m].end(), w.begin(), w.end());
    return from_terms(F_, acc);
  }
  WittClass operator-() const {
    const BaseField& K = F_.base();
    WittTerms acc;
    for (const auto& [m, w] : t_)
      for (const auto& c : w) acc[m].push_back(K.neg(c));
    return from_terms(F_, acc);
  }
  WittClass operator-(const WittClass& o) const { return *this + (-o); }
  WittClass operator*(const WittClass& o) const {
    check_same(o);
    const BaseField& K = F_.base();
    WittTerms acc;
    for (const auto& [m1, w1] : t_)
      for (const auto& [m2, w2] : o.t_) {
        auto& slot = acc[monomial_product(m1, m2)];
        for (const auto& a : w1)
          for (const auto& b : w2) slot.push_back(K.mul(a, b));
      }
    return from_terms(F_, acc);
  }
  WittClass& operator+=(const WittClass& o) { return *this = *this + o; }
  WittClass& operator*=(const WittClass& o) { return *this = *this * o; }

  /// n * x for an integer n.
  WittClass times(long n) const {
    WittClass r(F_), b = n < 0 ? -*this : *this;
    unsigned long k = static_cast<unsigned long>(n < 0 ? -n : n);
    while (k) {
      if (k & 1) r = r + b;
      k >>= 1;
      if (k) b = b + b;
    }
    return r;
  }
  WittClass pow(unsigned long e) const {
    WittClass r = one(F_), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  /// Second residues at finite support places and the first residue at
  /// infinity determine a class over k(T) (Milnor's exact sequence).
  bool is_zero() const {
    if (t_.empty()) return true;
    if (!F_.is_function_field()) return false;
    std::set<Poly> support;
    for (const auto& [m, w] : t_)
      for (const auto& pi : m) support.insert(pi);
    for (const auto& pi : support)
      if (!detail::residue_terms(Place::at(F_, pi), t_, 2).empty()) return false;
    return detail::residue_terms(Place::infinity(F_), t_, 1).empty();
  }
  bool operator==(const WittClass& o) const {
    check_same(o);
    if (t_ == o.t_) return true;
    if (!F_.is_function_field()) return false;
    return (*this - o).is_zero();
  }
  bool operator!=(const WittClass& o) const { return !(*this == o); }

  std::string to_string() const { return format(representative()); }

 private:
  Field F_;
  WittTerms t_;
};

/// Witt class of a diagonal form.
inline WittClass witt_class(const DiagonalForm& q) { return WittClass::of(q); }

inline bool in_fundamental_ideal(const WittClass& x) { return x.dim_parity() == 0; }

/// Total signature data: for Q and R the signature of the representative;
/// over Q(T), R(T) the piecewise signature function.
inline SignatureFunction total_signature(const WittClass& x) { return signature_function(x.representative()); }

inline bool is_torsion(const WittClass& x) {
  const BaseField& K = x.field().base();
  if (!K.is_real()) return true;
  if (!x.is_function_field()) {
    int s = 0;
    for (const auto& c : x.base_entries()) s += K.sign(c);
    return s == 0;
  }
  return total_signature(x).identically_zero();
}

/// Additive order of a torsion class (a power of 2); nullopt if not torsion.
inline std::optional<long> torsion_order(const WittClass& x) {
  if (!is_torsion(x)) return std::nullopt;
  WittClass y = x;
  long k = 1;
  while (!y.is_zero()) {
    y = y + y;
    k *= 2;
    if (k > (1L << 25)) throw InternalError("torsion order exceeds 2^25");
  }
  return k;
}

inline bool is_nilpotent(const WittClass& x) { return x.is_zero() || (in_fundamental_ideal(x) && is_torsion(x)); }

/// Grothendieck-Witt class: a Witt class and a rank of the same parity.
class GWClass {
 public:
  GWClass() = default;
  GWClass(WittClass w, long rank) : w_(std::move(w)), rank_(rank) {
    if (((rank_ % 2) + 2) % 2 != w_.dim_parity()) throw DomainError("GW class: rank parity mismatch");
  }
  static GWClass of(const DiagonalForm& q) { return GWClass(WittClass::of(q), static_cast<long>(q.dim())); }
  static GWClass one(const Field& F) { return GWClass(WittClass::one(F), 1); }
  static GWClass zero(const Field& F) { return GWClass(WittClass::zero(F), 0); }

  const WittClass& witt() const { return w_; }
  long rank() const { return rank_; }
  const Field& field() const { return w_.field(); }

  GWClass operator+(const GWClass& o) const { return GWClass(w_ + o.w_, rank_ + o.rank_); }
  GWClass operator-() const { return GWClass(-w_, -rank_); }
  GWClass operator-(const GWClass& o) const { return *this + (-o); }
  GWClass operator*(const GWClass& o) const { return GWClass(w_ * o.w_, rank_ * o.rank_); }
  bool operator==(const GWClass& o) const { return rank_ == o.rank_ && w_ == o.w_; }
  bool operator!=(const GWClass& o) const { return !(*this == o); }

  std::string to_string() const { return "(" + w_.to_string() + ", rank " + std::to_string(rank_) + ")"; }

 private:
  WittClass w_;
  long rank_ = 0;
};

inline GWClass gw_class(const DiagonalForm& q) { return GWClass::of(q); }

// ---- level-n torsion groups ------------------------------------------------

/// Torsion class carried at level n with group law a + b + (-2)^n ab.
struct TorsionLevelElement {
  int level = 0;
  WittClass value;

  TorsionLevelElement() = default;
  TorsionLevelElement(int n, WittClass v) : level(n), value(std::move(v)) {
    if (n < 0) throw DomainError("negative level");
    if (!is_torsion(value)) throw DomainError("level element must be torsion");
  }
  bool operator==(const TorsionLevelElement& o) const { return level == o.level && value == o.value; }
  bool operator!=(const TorsionLevelElement& o) const { return !(*this == o); }
};

/// (-2)^n as a Witt scalar multiple.
inline WittClass minus_two_pow(const WittClass& x, int n) {
  long k = 1;
  for (int i = 0; i < n; ++i) k *= -2;
  return x.times(k);
}

inline WittClass boxplus_value(int n, const WittClass& a, const WittClass& b) {
  return a + b + minus_two_pow(a * b, n);
}

inline TorsionLevelElement boxplus(const TorsionLevelElement& a, const TorsionLevelElement& b) {
  if (a.level != b.level) throw DomainError("boxplus: level mismatch");
  a.value.check_same(b.value);
  return TorsionLevelElement(a.level, boxplus_value(a.level, a.value, b.value));
}

/// Inverse under the level-n law via the finite sum
/// -sum_{i=1}^{j} (-1)^{(i-1)(n-1)} 2^{n(i-1)} a^i, stopped once
/// 2^{nj} a^{j+1} vanishes. Guarded at 64 terms.
inline TorsionLevelElement boxplus_inverse(const TorsionLevelElement& a) {
  int n = a.level;
  const WittClass& x = a.value;
  WittClass sum = WittClass::zero(x.field());
  WittClass power = x;  // a^i
  for (int i = 1; i <= 64; ++i) {
    long sgn_ = (((i - 1) * (n - 1)) % 2 == 0) ? 1 : -1;
    WittClass term = power;
    for (int k = 0; k < n * (i - 1); ++k) term = term + term;
    sum = sgn_ > 0 ? sum + term : sum - term;
    power = power * x;
    WittClass next = power;
    for (int k = 0; k < n * i; ++k) {
      if (next.is_zero()) break;
      next = next + next;
    }
    if (next.is_zero()) return TorsionLevelElement(n, -sum);
  }
  throw InternalError("boxplus_inverse: series did not terminate within 64 terms");
}

// ---- finite Witt rings ----------------------------------------------------

/// Exhaustive addition/multiplication tables for W(k) with k finite,
/// p-adic or square-closed. Built once per field and shared.
class FiniteWittRing {
 public:
  static const FiniteWittRing& get(const BaseField& K) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<FiniteWittRing>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[K.name()];
    if (!slot) slot.reset(new FiniteWittRing(K));
    return *slot;
  }

  const Field& field() const { return F_; }
  int size() const { return static_cast<int>(elems_.size()); }
  const WittClass& element(int i) const { return elems_.at(i); }
  int index(const WittClass& x) const {
    auto it = index_.find(x.base_entries());
    if (it == index_.end()) throw InternalError("class not in finite Witt ring");
    return it->second;
  }
  int add(int a, int b) const { return add_[a][b]; }
  int mul(int a, int b) const { return mul_[a][b]; }
  int neg(int a) const { return neg_[a]; }
  int zero() const { return zero_; }
  int one() const { return one_; }
  int dim_parity(int a) const { return elems_[a].dim_parity(); }
  /// Index of <c> for a canonical square class c.
  int square_class_index(const Scalar& c) const { return index(WittClass::of_scalars(F_, {c})); }
  const std::vector<int>& square_class_indices() const { return sq_; }
  bool is_unit(int a) const { return inverse_[a] >= 0; }
  int inverse(int a) const {
    if (inverse_[a] < 0) throw DomainError("not a unit");
    return inverse_[a];
  }
  std::vector<int> units() const {
    std::vector<int> u;
    for (int i = 0; i < size(); ++i)
      if (is_unit(i)) u.push_back(i);
    return u;
  }
  /// n * a with n an integer.
  int times(int a, long n) const {
    int r = zero_, b = n < 0 ? neg_[a] : a;
    unsigned long k = static_cast<unsigned long>(n < 0 ? -n : n);
    while (k) {
      if (k & 1) r = add(r, b);
      b = add(b, b);
      k >>= 1;
    }
    return r;
  }
  int boxplus(int n, int a, int b) const {
    long k = 1;
    for (int i = 0; i < n; ++i) k *= -2;
    return add(add(a, b), times(mul(a, b), k));
  }

 private:
  explicit FiniteWittRing(const BaseField& K) : F_(K) {
    if (!K.has_finite_witt()) throw DomainError("W(" + K.name() + ") is infinite");
    auto cls = *K.square_classes();
    std::vector<WittClass> gens;
    for (const auto& c : cls) gens.push_back(WittClass::of_scalars(F_, {c}));
    elems_.push_back(WittClass::zero(F_));
    index_[{}] = 0;
    for (std::size_t i = 0; i < elems_.size(); ++i)
      for (const auto& g : gens) {
        WittClass y = elems_[i] + g;
        if (index_.emplace(y.base_entries(), static_cast<int>(elems_.size())).second) elems_.push_back(y);
      }
    int n = size();
    add_.assign(n, std::vector<int>(n));
    mul_.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        add_[a][b] = add_[b][a] = index(elems_[a] + elems_[b]);
        mul_[a][b] = mul_[b][a] = index(elems_[a] * elems_[b]);
      }
    zero_ = 0;
    one_ = index(WittClass::one(F_));
    neg_.resize(n);
    inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (add_[a][b] == zero_) neg_[a] = b;
        if (mul_[a][b] == one_) inverse_[a] = b;
      }
    }
    for (const auto& c : cls) sq_.push_back(square_class_index(c));
  }

  Field F_;
  std::vector<WittClass> elems_;
  std::map<std::vector<Scalar>, int> index_;
  std::vector<std::vector<int>> add_, mul_;
  std::vector<int> neg_, inverse_, sq_;
  int zero_ = 0, one_ = 0;
};

}  // namespace wittkit
