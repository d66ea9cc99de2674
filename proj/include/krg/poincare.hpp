#pragma once

// Graded ranks of the KR side, truncated to irreps of bounded dimension.

#include <cstdint>
#include <string>
#include <vector>

#include "krg/presentation.hpp"

namespace krg {

struct PoincareRow {
  int degree = 0;
  std::int64_t free_rank = 0;
  std::int64_t torsion = 0;  // number of Z/2 summands
  friend bool operator==(const PoincareRow&, const PoincareRow&) = default;
};

/// Rows for degrees 1, 0, -1, ..., -6.
using PoincareTable = std::vector<PoincareRow>;

struct PoincareOptions {
  /// Negative-control fixture: forget the mu-shifted quaternionic summands in degree 0.
  bool drop_mu_shifted_h = false;
};

/// From the normal-form basis: coefficient pieces times exterior monomials,
/// plus one free summand per r-class term when t > 0.
PoincareTable poincare_table(const KRPresentation& p, std::int64_t bound, PoincareOptions opt = {});

/// Non-equivariant ring: the coefficient pattern of a point times the exterior monomials.
PoincareTable nonequivariant_table(const KRPresentation& p);

/// (real classes + quaternionic classes shifted by -4) x non-equivariant ring,
/// plus r(complex pairs x K-side monomials).
PoincareTable structure_table(const KRPresentation& p, std::int64_t bound);

std::string to_string(const PoincareTable& t);

}  // namespace krg
