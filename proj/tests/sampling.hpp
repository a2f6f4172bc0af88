#pragma once

// Seeded generators of torsion classes and scalars shared by the tests and
// the acceptance runner.

#include <random>
#include <vector>

#include "wittkit/wittkit.hpp"

namespace wittkit::sampling {

/// Random nonzero scalar: from the prime field over F_q, otherwise a signed
/// small integer.
inline Scalar scalar(const BaseField& K, std::mt19937_64& rng) {
  if (K.kind() == BaseKind::Finite) {
    unsigned long p = K.characteristic();
    return K.from_integer(static_cast<long>(1 + rng() % (p - 1)));
  }
  static const long pool[] = {1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 21};
  long v = pool[rng() % (sizeof(pool) / sizeof(pool[0]))];
  if (rng() % 2) v = -v;
  return K.from_integer(v);
}

/// Random torsion class of W(K). Over fields with a finite Witt ring the
/// class is uniform over the torsion subgroup; over Q it is a sum of one
/// or two forms <a, -b> with a, b > 0.
inline WittClass torsion(const BaseField& K, std::mt19937_64& rng) {
  Field F(K);
  if (K.has_finite_witt()) {
    const auto& R = FiniteWittRing::get(K);
    for (;;) {
      WittClass x = R.element(static_cast<int>(rng() % static_cast<std::uint64_t>(R.size())));
      if (is_torsion(x)) return x;
    }
  }
  WittClass x = WittClass::zero(F);
  int pairs = 1 + static_cast<int>(rng() % 2);
  for (int i = 0; i < pairs; ++i) {
    Scalar a = abs(scalar(K, rng)), b = abs(scalar(K, rng));
    x = x + WittClass::of_scalars(F, {a, -b});
  }
  return x;
}

}  // namespace wittkit::sampling
