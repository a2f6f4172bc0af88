#pragma once

// Finite-support Gersten complexes on curves over k, H^0 and H^1 of P^1
// by stabilized cokernels, the three-column diagram
// G_m/2 -> GW^x -> NQ, sphere cohomology and orientation characters.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "residue.hpp"

namespace wittkit {

enum class Scheme { DVRSpec, AffineLine, ProjectiveLine };
enum class Sheaf { GWUnits, SquareClasses, OnePlusITor, NQ, TorsionLevel };

inline std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::DVRSpec: return "DVR";
    case Scheme::AffineLine: return "A1";
    case Scheme::ProjectiveLine: return "P1";
  }
  return "?";
}
inline std::string to_string(Sheaf s) {
  switch (s) {
    case Sheaf::GWUnits: return "GWx";
    case Sheaf::SquareClasses: return "Gm/2";
    case Sheaf::OnePlusITor: return "1+Itor";
    case Sheaf::NQ: return "NQ";
    case Sheaf::TorsionLevel: return "Wtor";
  }
  return "?";
}
inline Scheme parse_scheme(const std::string& s) {
  if (s == "DVR" || s == "dvr") return Scheme::DVRSpec;
  if (s == "A1" || s == "affine") return Scheme::AffineLine;
  if (s == "P1" || s == "projective") return Scheme::ProjectiveLine;
  throw ParseError("unknown scheme: " + s);
}
inline Sheaf parse_sheaf(const std::string& s) {
  if (s == "GWx" || s == "GWUnits") return Sheaf::GWUnits;
  if (s == "Gm/2" || s == "SquareClasses") return Sheaf::SquareClasses;
  if (s == "1+Itor" || s == "OnePlusITor") return Sheaf::OnePlusITor;
  if (s == "NQ") return Sheaf::NQ;
  if (s == "Wtor" || s == "TorsionLevel") return Sheaf::TorsionLevel;
  throw ParseError("unknown sheaf: " + s);
}

/// Order of W(k)_tor when finite: W(k) for finite Witt rings, 0 for R.
inline std::optional<long> torsion_order_of_witt(const BaseField& K) {
  if (K.has_finite_witt()) return FiniteWittRing::get(K).size();
  if (K.kind() == BaseKind::Real) return 1;
  return std::nullopt;
}

// ---- complexes ----------------------------------------------------------------

struct DegreeOneTerm {
  std::string point;
  std::string group;  // e.g. "A + W(Qp(3))_tor^(1)"
  bool a_present = false;
  std::optional<long> order;
};

struct GerstenComplexData {
  Field field;
  Scheme scheme = Scheme::ProjectiveLine;
  Sheaf sheaf = Sheaf::GWUnits;
  int level = 1;
  std::vector<Place> support;
  std::string degree0;
  std::vector<DegreeOneTerm> degree1;
};

inline DegreeOneTerm degree_one_term(const Place& v, Sheaf sheaf, int level) {
  DegreeOneTerm t;
  t.point = v.name();
  t.a_present = a_summand_present(v);
  std::string kappa = v.residue_field_supported() ? v.residue_field().name() : "kappa(" + v.name() + ")";
  std::optional<long> wt;
  if (v.residue_field_supported()) wt = torsion_order_of_witt(v.residue_field().base());
  switch (sheaf) {
    case Sheaf::GWUnits:
      t.group = (t.a_present ? "Z/2 + " : "") + std::string("W(") + kappa + ")_tor^(1)";
      if (wt) t.order = (t.a_present ? 2 : 1) * *wt;
      break;
    case Sheaf::SquareClasses:
      t.group = "Z/2";
      t.order = 2;
      break;
    case Sheaf::OnePlusITor:
      t.group = "W(" + kappa + ")_tor^(1)";
      t.order = wt;
      break;
    case Sheaf::NQ:
      t.group = "W(" + kappa + ")_tor^(1)" + (t.a_present ? "" : "/S");
      if (wt) t.order = t.a_present ? *wt : *wt / 2;
      break;
    case Sheaf::TorsionLevel:
      t.group = "W(" + kappa + ")_tor^(" + std::to_string(level + 1) + ")";
      t.order = wt;
      break;
  }
  return t;
}

inline GerstenComplexData build_complex(const BaseField& K, Scheme scheme, Sheaf sheaf, const std::vector<Place>& support,
                                        int level = 1) {
  if (K.characteristic() == 2) throw DomainError("characteristic 2 is not supported");
  GerstenComplexData c;
  c.field = Field::rational_functions(K);
  c.scheme = scheme;
  c.sheaf = sheaf;
  c.level = level;
  bool has_inf = false;
  for (const auto& v : support) {
    if (v.field() != c.field) throw DomainError("build_complex: support place over a different field");
    if (v.kind() == Place::Kind::Infinity) {
      if (scheme == Scheme::AffineLine) throw DomainError("the affine line has no point at infinity");
      has_inf = true;
    }
    c.support.push_back(v);
  }
  if (scheme == Scheme::DVRSpec && c.support.size() != 1) throw DomainError("DVR complex needs exactly one closed point");
  if (scheme == Scheme::ProjectiveLine && !has_inf) c.support.push_back(Place::infinity(c.field));
  std::sort(c.support.begin(), c.support.end());
  switch (sheaf) {
    case Sheaf::GWUnits: c.degree0 = "GW(" + c.field.name() + ")^x"; break;
    case Sheaf::SquareClasses: c.degree0 = c.field.name() + "^x/2"; break;
    case Sheaf::OnePlusITor: c.degree0 = "1+I(" + c.field.name() + ")_tor"; break;
    case Sheaf::NQ: c.degree0 = "NQ(" + c.field.name() + ")"; break;
    case Sheaf::TorsionLevel: c.degree0 = "W(" + c.field.name() + ")_tor^(" + std::to_string(level) + ")"; break;
  }
  for (const auto& v : c.support) c.degree1.push_back(degree_one_term(v, sheaf, level));
  return c;
}

/// Image of a generic-point element at one closed point, as a string key
/// (for comparison) and a display value.
struct DifferentialValue {
  std::string point;
  std::string value;
  bool trivial = true;
};

/// Differential of a generic-point element: a square class (Element) for
/// Gm/2, otherwise a Witt class over k(T).
inline std::vector<DifferentialValue> differential(const GerstenComplexData& c, const WittClass& x) {
  std::vector<DifferentialValue> out;
  for (const auto& v : c.support) {
    DifferentialValue d;
    d.point = v.name();
    switch (c.sheaf) {
      case Sheaf::GWUnits: {
        auto cc = contraction_classify(v, x);
        d.value = cc.to_string();
        d.trivial = cc.is_trivial();
        break;
      }
      case Sheaf::OnePlusITor: {
        auto t = unit_residue(v, x);
        d.value = t.value.to_string();
        d.trivial = t.value.is_zero();
        break;
      }
      case Sheaf::NQ: {
        auto cc = contraction_classify(v, x);
        WittClass t = cc.torsion_component.value;
        bool in_s = t.is_zero() || (!cc.a_present && t == WittClass::one(t.field()));
        d.value = t.to_string() + (cc.a_present ? "" : " mod S");
        d.trivial = in_s;
        break;
      }
      case Sheaf::TorsionLevel: {
        auto t = torsion_level_residue(c.level, v, TorsionLevelElement(c.level, x));
        d.value = t.value.to_string();
        d.trivial = t.value.is_zero();
        break;
      }
      case Sheaf::SquareClasses: throw DomainError("differential: use differential_square_class for Gm/2");
    }
    out.push_back(d);
  }
  return out;
}

inline std::vector<DifferentialValue> differential_square_class(const GerstenComplexData& c, const Element& f) {
  std::vector<DifferentialValue> out;
  for (const auto& v : c.support) {
    int e = v.valuation(f) % 2 != 0;
    out.push_back({v.name(), std::to_string(e), e == 0});
  }
  return out;
}

struct DSquaredReport {
  bool ok = true;
  std::string note;
  int composites_checked = 0;
};

/// Curve complexes have length one, so d o d = 0 is vacuous there; the
/// composable pairs are the diagram rows, checked by exact_diagram_check.
inline DSquaredReport check_d_squared(const GerstenComplexData&) {
  return {true, "length-1 complex: no composable differentials", 0};
}

/// H^0 membership: a unit unramified at the support, at every place of
/// its own divisor and (on P^1) at infinity.
inline bool in_h0(const GerstenComplexData& c, const WittClass& x) {
  if (!is_unit(x)) return false;
  std::vector<Place> places = c.support;
  if (c.scheme != Scheme::DVRSpec)
    for (const auto& pi : support_polys(x)) places.push_back(Place::at(c.field, pi));
  for (const auto& v : places)
    if (!is_unramified(v, x)) return false;
  return true;
}

// ---- coordinate model over degree-1 supports ---------------------------------

/// Coefficients W(k) as integer handles: table indices for finite Witt
/// rings, the signature for R (W(R) = Z).
class Coefficients {
 public:
  explicit Coefficients(const BaseField& K) : K_(K) {
    if (K.has_finite_witt()) R_ = &FiniteWittRing::get(K);
    else if (K.kind() != BaseKind::Real) throw UnsupportedError("coordinate model needs a finite Witt ring or R");
  }
  const BaseField& base() const { return K_; }
  bool real() const { return R_ == nullptr; }
  const FiniteWittRing& ring() const { return *R_; }
  long zero() const { return real() ? 0 : R_->zero(); }
  long one() const { return real() ? 1 : R_->one(); }
  long add(long a, long b) const { return real() ? a + b : R_->add(static_cast<int>(a), static_cast<int>(b)); }
  long mul(long a, long b) const { return real() ? a * b : R_->mul(static_cast<int>(a), static_cast<int>(b)); }
  long neg(long a) const { return real() ? -a : R_->neg(static_cast<int>(a)); }
  long square_class(const Scalar& c) const {
    return real() ? K_.sign(c) : R_->square_class_index(K_.square_class(c));
  }
  int parity(long a) const { return real() ? static_cast<int>(((a % 2) + 2) % 2) : R_->dim_parity(static_cast<int>(a)); }
  bool is_unit(long a) const { return real() ? (a == 1 || a == -1) : R_->is_unit(static_cast<int>(a)); }
  long inverse(long a) const {
    if (real()) {
      if (!is_unit(a)) throw DomainError("not a unit");
      return a;
    }
    return R_->inverse(static_cast<int>(a));
  }
  bool is_torsion(long a) const { return real() ? a == 0 : true; }
  long boxplus1(long a, long b) const { return add(add(a, b), neg(add(mul(a, b), mul(a, b)))); }
  /// Elements of W(k)_tor.
  std::vector<long> torsion() const {
    if (real()) return {0};
    std::vector<long> t;
    for (int i = 0; i < R_->size(); ++i) t.push_back(i);
    return t;
  }
  WittClass to_class(long a) const {
    Field k(K_);
    if (!real()) return R_->element(static_cast<int>(a));
    return WittClass::of_scalars(k, std::vector<Scalar>(static_cast<std::size_t>(a < 0 ? -a : a), a < 0 ? -1 : 1));
  }
  std::string format(long a) const { return to_class(a).to_string(); }

 private:
  BaseField K_;
  const FiniteWittRing* R_ = nullptr;
};

/// Classes over k(T) of the form c + sum_i <T - alpha_i> w_i: exactly the
/// classes whose finite residues are supported on {alpha_i}.
class PointModel {
 public:
  struct Elem {
    long c = 0;
    std::vector<long> w;
    bool operator<(const Elem& o) const { return std::tie(c, w) < std::tie(o.c, o.w); }
    bool operator==(const Elem& o) const { return c == o.c && w == o.w; }
  };
  /// Contraction class at one point: (A component, torsion handle).
  using Component = std::pair<int, long>;

  PointModel(const BaseField& K, std::vector<Scalar> points) : W_(K), alpha_(std::move(points)) {
    std::size_t s = alpha_.size();
    diff_.assign(s, std::vector<long>(s, W_.zero()));
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j)
        if (i != j) {
          Scalar d = K.sub(alpha_[i], alpha_[j]);
          if (d == 0) throw DomainError("PointModel: repeated point");
          diff_[i][j] = W_.square_class(d);
        }
    Field F = Field::rational_functions(K);
    for (const auto& a : alpha_) a_present_.push_back(a_summand_present(Place::at(F, Poly::linear(K, a))));
    a_present_.push_back(a_summand_present(Place::infinity(F)));
  }

  const Coefficients& coefficients() const { return W_; }
  std::size_t points() const { return alpha_.size(); }
  const std::vector<Scalar>& alphas() const { return alpha_; }
  /// Index points() denotes infinity.
  bool a_present(std::size_t i) const { return a_present_[i]; }

  Elem constant(long c) const { return Elem{c, std::vector<long>(points(), W_.zero())}; }
  Elem pi(std::size_t i) const {
    Elem e = constant(W_.zero());
    e.w[i] = W_.one();
    return e;
  }

  Elem mul(const Elem& x, const Elem& y) const {
    std::size_t s = points();
    Elem r = constant(W_.mul(x.c, y.c));
    for (std::size_t i = 0; i < s; ++i) {
      r.w[i] = W_.add(W_.mul(x.c, y.w[i]), W_.mul(x.w[i], y.c));
      for (std::size_t j = 0; j < s; ++j) {
        long p = W_.mul(x.w[i], y.w[j]);
        r.c = W_.add(r.c, p);  // <pi_i>^2 = 1 and the 1 in <pi_i pi_j>
      }
    }
    for (std::size_t k = 0; k < s; ++k)
      for (std::size_t j = 0; j < s; ++j)
        if (j != k) {
          long t = W_.add(W_.mul(x.w[k], y.w[j]), W_.mul(x.w[j], y.w[k]));
          r.w[k] = W_.add(r.w[k], W_.mul(diff_[k][j], t));
        }
    return r;
  }
  Elem add(const Elem& x, const Elem& y) const {
    Elem r = constant(W_.add(x.c, y.c));
    for (std::size_t i = 0; i < points(); ++i) r.w[i] = W_.add(x.w[i], y.w[i]);
    return r;
  }

  /// First and second residue at point i (i == points() is infinity).
  std::pair<long, long> residues(const Elem& x, std::size_t i) const {
    if (i == points()) {
      long b = W_.zero();
      for (long w : x.w) b = W_.add(b, w);
      return {x.c, b};
    }
    long a = x.c;
    for (std::size_t j = 0; j < points(); ++j)
      if (j != i) a = W_.add(a, W_.mul(diff_[i][j], x.w[j]));
    return {a, x.w[i]};
  }

  bool is_unit(const Elem& x) const {
    if (!W_.real()) {
      long r = x.c;
      for (long w : x.w) r = W_.add(r, w);
      return W_.parity(r) == 1;
    }
    // signature on each interval between sorted real points is +-1
    std::vector<std::size_t> order(points());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return alpha_[a] < alpha_[b]; });
    for (std::size_t gap = 0; gap <= points(); ++gap) {
      long sig = x.c;
      for (std::size_t r = 0; r < order.size(); ++r) sig += (r < gap ? 1 : -1) * x.w[order[r]];
      if (sig != 1 && sig != -1) return false;
    }
    return true;
  }

  Component contraction(const Elem& x, std::size_t i) const {
    auto [a, b] = residues(x, i);
    int e = W_.parity(b);
    long d = W_.add(a, b);
    long c = W_.mul(e ? a : b, W_.inverse(d));
    if (!W_.is_torsion(c)) throw InternalError("PointModel: non-torsion contraction component");
    if (a_present_[i]) return {e, c};
    return {0, e ? W_.boxplus1(W_.one(), c) : c};
  }

  /// Torsion part modulo S = {0, 1} where S is present.
  long mod_s(long t, std::size_t i) const {
    if (a_present_[i]) return t;
    return std::min(t, W_.boxplus1(W_.one(), t));
  }

  /// Level-1 residue of 1 + n from the residues of n: b (1 + a + b)^{-1}.
  long unit_residue(const Elem& x, std::size_t i) const {
    Elem n = add(x, constant(W_.neg(W_.one())));
    auto [a, b] = residues(n, i);
    return W_.mul(b, W_.inverse(W_.add(W_.one(), W_.add(a, b))));
  }

  /// Symbolic class over k(T).
  WittClass to_class(const Elem& x) const {
    const BaseField& K = W_.base();
    Field F = Field::rational_functions(K);
    WittClass r = extend_constant(F, W_.to_class(x.c));
    for (std::size_t i = 0; i < points(); ++i)
      r = r + pi_class(F, Poly::linear(K, alpha_[i])) * extend_constant(F, W_.to_class(x.w[i]));
    return r;
  }

  /// Enumerates coordinate tuples: all of W(k)^{s+1} for finite rings; for
  /// R, w_i in {-1, 0, 1} and |c| <= s + 1, which contains every unit.
  template <class Fn>
  void for_each(Fn&& fn) const {
    std::vector<long> range;
    if (!W_.real()) {
      for (int i = 0; i < W_.ring().size(); ++i) range.push_back(i);
    } else {
      range = {-1, 0, 1};
    }
    std::vector<long> crange = range;
    if (W_.real()) {
      crange.clear();
      long b = static_cast<long>(points()) + 1;
      for (long c = -b; c <= b; ++c) crange.push_back(c);
    }
    Elem x = constant(W_.zero());
    std::vector<std::size_t> idx(points() + 1, 0);
    while (true) {
      x.c = crange[idx[0]];
      for (std::size_t i = 0; i < points(); ++i) x.w[i] = range[idx[i + 1]];
      fn(x);
      std::size_t k = 0;
      while (k < idx.size()) {
        std::size_t lim = k == 0 ? crange.size() : range.size();
        if (++idx[k] < lim) break;
        idx[k] = 0;
        ++k;
      }
      if (k == idx.size()) break;
    }
  }

 private:
  Coefficients W_;
  std::vector<Scalar> alpha_;
  std::vector<std::vector<long>> diff_;
  std::vector<bool> a_present_;
};

/// Default degree-1 points 0, 1, 2, ... of k.
inline std::vector<Scalar> default_points(const BaseField& K, std::size_t n) {
  std::vector<Scalar> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(K.from_integer(static_cast<long>(i)));
  return pts;
}

struct CokernelCount {
  std::size_t finite_points = 0;
  long components = 0;  // order of the sum of component groups
  long image = 0;
  long cokernel = 0;
};

/// Cokernel of (generic units with support in the points) -> sum over
/// points and infinity of the component groups.
inline CokernelCount cokernel_count(const PointModel& M, Sheaf sheaf) {
  const auto& W = M.coefficients();
  std::size_t s = M.points();
  long wt = static_cast<long>(W.torsion().size());
  CokernelCount r;
  r.finite_points = s;
  r.components = 1;
  for (std::size_t i = 0; i <= s; ++i) {
    long comp = 0;
    switch (sheaf) {
      case Sheaf::GWUnits: comp = (M.a_present(i) ? 2 : 1) * wt; break;
      case Sheaf::NQ: comp = M.a_present(i) ? wt : wt / 2; break;
      case Sheaf::SquareClasses: comp = 2; break;
      default: throw UnsupportedError("cokernel_count: sheaf " + to_string(sheaf));
    }
    r.components *= comp;
  }
  std::set<std::vector<long>> image;
  if (sheaf == Sheaf::SquareClasses) {
    for (unsigned long mask = 0; mask < (1UL << s); ++mask) {
      std::vector<long> v;
      long total = 0;
      for (std::size_t i = 0; i < s; ++i) {
        v.push_back((mask >> i) & 1);
        total += (mask >> i) & 1;
      }
      v.push_back(total % 2);
      image.insert(v);
    }
  } else {
    M.for_each([&](const PointModel::Elem& x) {
      if (!M.is_unit(x)) return;
      std::vector<long> v;
      for (std::size_t i = 0; i <= s; ++i) {
        auto [a, t] = M.contraction(x, i);
        if (sheaf == Sheaf::GWUnits) {
          v.push_back(a);
          v.push_back(t);
        } else {
          v.push_back(M.mod_s(t, i));
        }
      }
      image.insert(v);
    });
  }
  r.image = static_cast<long>(image.size());
  if (r.components % r.image) throw InternalError("cokernel_count: image order does not divide the target order");
  r.cokernel = r.components / r.image;
  return r;
}

/// Component vector of O(d) for GW^x: the image of d mod 2 at infinity
/// under Z/2 -> A + W_tor^(1), i.e. (1, 0) with A present and (0, 1) otherwise.
inline std::vector<long> line_bundle_vector(const PointModel& M, long d) {
  const auto& W = M.coefficients();
  std::size_t s = M.points();
  std::vector<long> v;
  for (std::size_t i = 0; i < s; ++i) {
    v.push_back(0);
    v.push_back(W.zero());
  }
  bool odd = (d % 2) != 0;
  if (M.a_present(s)) {
    v.push_back(odd ? 1 : 0);
    v.push_back(W.zero());
  } else {
    v.push_back(0);
    v.push_back(odd ? W.one() : W.zero());
  }
  return v;
}

/// True iff the GW^x component vector lies in the image of generic units.
inline bool in_unit_image(const PointModel& M, const std::vector<long>& target) {
  bool found = false;
  M.for_each([&](const PointModel::Elem& x) {
    if (found || !M.is_unit(x)) return;
    std::vector<long> v;
    for (std::size_t i = 0; i <= M.points(); ++i) {
      auto [a, t] = M.contraction(x, i);
      v.push_back(a);
      v.push_back(t);
    }
    found = v == target;
  });
  return found;
}

struct LineBundleClass {
  long degree = 0;
  int mod2() const { return static_cast<int>(((degree % 2) + 2) % 2); }
};

inline LineBundleClass tangent_bundle_p1() { return {-2}; }

struct H1Report {
  std::string field;
  std::string sheaf;
  long cardinality = 0;
  bool stabilized = false;
  std::vector<CokernelCount> by_support;
  std::optional<long> structural_a;  // A + W_tor^(1)
  std::optional<long> structural_s;  // S + W_tor^(1)
  // GW^x only: Pic/2 -> H^1(GW^x) -> H^1(NQ) -> 0
  long pic2_image = 0;
  long nq_cardinality = 0;
  bool two_way_consistent = false;
  bool o_minus_1_nontrivial = false;
  bool o_minus_2_trivial = false;
};

/// H^1(P^1, sheaf) as the cokernel over supports {0, ..., s-1, inf},
/// certified stable when s = 1, 2, 3 give the same order.
inline H1Report h1_p1(const BaseField& K, Sheaf sheaf, std::size_t max_points = 3) {
  H1Report r;
  r.field = K.name();
  r.sheaf = to_string(sheaf);
  for (std::size_t s = 1; s <= max_points; ++s) r.by_support.push_back(cokernel_count(PointModel(K, default_points(K, s)), sheaf));
  r.cardinality = r.by_support.back().cokernel;
  r.stabilized = std::all_of(r.by_support.begin(), r.by_support.end(),
                             [&](const CokernelCount& c) { return c.cokernel == r.cardinality; });
  Field FT = Field::rational_functions(K);
  bool a = !elem::is_sum_of_squares(FT, elem::from_poly_factor(Poly::x()));
  if (auto wt = torsion_order_of_witt(K)) {
    r.structural_a = (a ? 2 : 1) * *wt;
    r.structural_s = (a ? 1 : 2) * *wt;
  }
  if (sheaf == Sheaf::GWUnits) {
    PointModel M(K, default_points(K, 2));
    r.o_minus_1_nontrivial = !in_unit_image(M, line_bundle_vector(M, -1));
    r.o_minus_2_trivial = in_unit_image(M, line_bundle_vector(M, tangent_bundle_p1().degree));
    r.pic2_image = r.o_minus_1_nontrivial ? 2 : 1;
    r.nq_cardinality = cokernel_count(M, Sheaf::NQ).cokernel;
    r.two_way_consistent = r.cardinality == r.pic2_image * r.nq_cardinality;
  }
  return r;
}

/// Class of O(d) in H^1(P^1, GW^x): trivial iff its component vector is hit.
inline bool line_bundle_class_trivial(const BaseField& K, const LineBundleClass& L) {
  PointModel M(K, default_points(K, 2));
  return in_unit_image(M, line_bundle_vector(M, L.degree));
}

/// One class of H^1(P^1, GW^x), as the clutching datum at (T) in
/// A + W_tor^(1) and a transition unit realizing it.
struct P1Class {
  int a_component = 0;
  WittClass torsion;
  WittClass transition;
  std::string label() const {
    return "(" + std::to_string(a_component) + ", " + torsion.to_string() + ")";
  }
};

/// Classes of H^1(P^1, GW^x) enumerated through the normal form at (T).
/// Throws if their number disagrees with the cokernel count.
inline std::vector<P1Class> p1_fibration_classes(const BaseField& K) {
  Field F = Field::rational_functions(K);
  Place v = Place::at(F, Poly::x());
  bool a = a_summand_present(v);
  std::vector<WittClass> tor;
  if (K.kind() == BaseKind::Real) tor.push_back(WittClass::zero(Field(K)));
  else if (K.has_finite_witt()) tor = torsion_targets(K);
  else throw UnsupportedError("p1_fibration_classes needs a finite Witt ring or R, got " + K.name());
  std::vector<P1Class> out;
  for (int c = 0; c <= (a ? 1 : 0); ++c)
    for (const auto& t : tor) out.push_back({c, t, lift_contraction(v, expected_class(v, c, t))});
  long h1 = h1_p1(K, Sheaf::GWUnits).cardinality;
  if (static_cast<long>(out.size()) != h1)
    throw InternalError("p1_fibration_classes: " + std::to_string(out.size()) + " normal forms but |H^1| = " +
                        std::to_string(h1));
  return out;
}

// ---- three-column diagram ----------------------------------------------------

struct DiagramReport {
  std::string field;
  std::vector<std::string> support;
  bool row0_exact = false;  // generic point: Gm/2 -> W^x -> NQ
  bool row1_exact = false;  // each closed point: Z/2 -> A + W_tor^(1) -> W_tor^(1)/S -> 0
  bool left_square = false;
  bool right_square = false;
  bool d_squared = false;
  long square_classes = 0, units = 0, nq = 0;
  long elements_checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return row0_exact && row1_exact && left_square && right_square && d_squared; }
};

inline DiagramReport exact_diagram_check(const BaseField& K, const std::vector<Scalar>& points) {
  PointModel M(K, points);
  const auto& W = M.coefficients();
  std::size_t s = M.points();
  DiagramReport r;
  r.field = Field::rational_functions(K).name();
  Field FT = Field::rational_functions(K);
  for (const auto& a : points) r.support.push_back(Place::at(FT, Poly::linear(K, a)).name());
  r.support.push_back("inf");
  auto fail = [&](const std::string& m) {
    if (r.failures.size() < 20) r.failures.push_back(m);
  };

  // generic square classes <c * prod pi_i^{e_i}>
  auto sq = *K.square_classes();
  std::map<PointModel::Elem, std::pair<long, unsigned long>> sq_image;
  bool injective = true, units_ok = true, left = true;
  for (const auto& c : sq)
    for (unsigned long mask = 0; mask < (1UL << s); ++mask) {
      PointModel::Elem f = M.constant(W.square_class(c));
      for (std::size_t i = 0; i < s; ++i)
        if ((mask >> i) & 1) f = M.mul(f, M.pi(i));
      if (!sq_image.emplace(f, std::make_pair(W.square_class(c), mask)).second) injective = false;
      if (!M.is_unit(f)) units_ok = false;
      // left square: divisor parity vs contraction
      long total = 0;
      for (std::size_t i = 0; i <= s; ++i) {
        long e = i < s ? static_cast<long>((mask >> i) & 1) : total % 2;
        if (i < s) total += e;
        auto comp = M.contraction(f, i);
        PointModel::Component want = M.a_present(i) ? PointModel::Component{static_cast<int>(e), W.zero()}
                                                    : PointModel::Component{0, e ? W.one() : W.zero()};
        if (comp != want) {
          left = false;
          fail("left square at point " + std::to_string(i) + " for square class mask " + std::to_string(mask));
        }
      }
      ++r.elements_checked;
    }
  r.square_classes = static_cast<long>(sq_image.size());
  // square classes form a subgroup of the units
  bool closed = true;
  for (const auto& [f, _] : sq_image)
    for (const auto& [g, __] : sq_image)
      if (!sq_image.count(M.mul(f, g))) closed = false;

  // units, NQ cosets and the right square
  std::vector<PointModel::Elem> units;
  M.for_each([&](const PointModel::Elem& x) {
    if (M.is_unit(x)) units.push_back(x);
  });
  r.units = static_cast<long>(units.size());
  std::set<std::set<PointModel::Elem>> cosets;
  bool right = true;
  for (const auto& x : units) {
    std::set<PointModel::Elem> coset;
    for (const auto& [f, _] : sq_image) coset.insert(M.mul(x, f));
    cosets.insert(coset);
    // decompose x = <u>(1+n) with <u> the square class of the A-parities,
    // then compare the level-1 residue of 1+n with the contraction of x mod S
    PointModel::Elem u = M.constant(W.one());
    for (std::size_t i = 0; i < s; ++i)
      if (W.parity(x.w[i])) u = M.mul(u, M.pi(i));
    PointModel::Elem onen = M.mul(u, x);
    for (std::size_t i = 0; i <= s; ++i) {
      long lhs = M.mod_s(M.contraction(x, i).second, i);
      // over R the torsion components vanish (W(R)_tor = 0)
      long rhs = W.real() ? W.zero() : M.mod_s(M.unit_residue(onen, i), i);
      if (lhs != rhs) {
        right = false;
        fail("right square at point " + std::to_string(i));
      }
    }
    ++r.elements_checked;
  }
  r.nq = static_cast<long>(cosets.size());
  r.row0_exact = injective && units_ok && closed && r.nq * r.square_classes == r.units;

  // closed points: Z/2 -> A + W_tor -> W_tor/S -> 0, and the composite is zero
  bool row1 = true, d2 = true;
  auto tor = W.torsion();
  for (std::size_t i = 0; i <= s; ++i) {
    std::set<std::pair<int, long>> image_first, kernel_second;
    for (int z = 0; z < 2; ++z) {
      auto img = M.a_present(i) ? std::make_pair(z, W.zero()) : std::make_pair(0, z ? W.one() : W.zero());
      if (!image_first.insert(img).second) row1 = false;  // injective
      if (M.mod_s(img.second, i) != M.mod_s(W.zero(), i)) d2 = false;
    }
    std::set<long> hit;
    for (int a = 0; a < (M.a_present(i) ? 2 : 1); ++a)
      for (long t : tor) {
        long q = M.mod_s(t, i);
        hit.insert(q);
        if (q == M.mod_s(W.zero(), i)) kernel_second.insert({a, t});
      }
    std::set<long> all;
    for (long t : tor) all.insert(M.mod_s(t, i));
    if (hit != all) row1 = false;                  // surjective
    if (kernel_second != image_first) row1 = false;  // exact in the middle
  }
  r.row1_exact = row1;
  r.left_square = left;
  r.right_square = right;
  r.d_squared = d2;
  return r;
}

// ---- spheres and orientation -------------------------------------------------

struct GroupDescriptor {
  std::string description;
  std::optional<long> order;
  bool trivial() const { return order && *order == 1; }
};

/// Order of GW(k)^x: rank +-1 over each unit of W(k).
inline std::optional<long> gw_unit_order(const BaseField& K) {
  if (K.has_finite_witt()) return 2 * static_cast<long>(FiniteWittRing::get(K).units().size());
  if (K.kind() == BaseKind::Real) return 4;
  return std::nullopt;
}

/// H^i(S^p ^ G_m^q, GW^x) = H^{i-p}(k, (GW^x)_{-q}).
inline GroupDescriptor sphere_cohomology(const BaseField& K, int i, int p, int q) {
  if (q < 0 || p < 0) throw DomainError("sphere_cohomology: negative index");
  if (i != p) return {"0", 1};
  std::string k = K.name();
  auto wt = torsion_order_of_witt(K);
  if (q == 0) return {"GW(" + k + ")^x", gw_unit_order(K)};
  if (q == 1) {
    bool a = !elem::is_sum_of_squares(Field::rational_functions(K), elem::from_poly_factor(Poly::x()));
    GroupDescriptor g{(a ? "Z/2 + " : "") + std::string("W(") + k + ")_tor^(1)", std::nullopt};
    if (wt) g.order = (a ? 2 : 1) * *wt;
    return g;
  }
  return {"W(" + k + ")_tor^(" + std::to_string(q) + ")", wt};
}

struct OrientationCharacter {
  std::string base;
  long exponent = 0;  // u -> <u^exponent>
  std::string to_string() const { return "u -> <u^" + std::to_string(exponent) + ">"; }
};

/// Orientation character of the tangent bundle of P^n: exponent n + 1.
inline OrientationCharacter orientation_character(long n, const BaseField& K) {
  if (K.kind() == BaseKind::Rationals) throw UnsupportedError("orientation: base Q is not supported");
  return {K.name(), n + 1};
}

struct Orientability {
  bool orientable = false;
  std::string reason;  // "even-exponent", "nonreal-base", "real-odd-exponent"
};

inline Orientability is_orientable_ST(long n, const BaseField& K) {
  auto ch = orientation_character(n, K);
  if (ch.exponent % 2 == 0) return {true, "even-exponent"};
  if (!K.is_real()) return {true, "nonreal-base"};
  return {false, "real-odd-exponent"};
}

}  // namespace wittkit
