#pragma once

// Differential model on the maximal torus of U(n): Laurent polynomials in
// e_1..e_n tensored with the exterior algebra on delta_1..delta_n, where
// delta_i stands for e_i^{-1} de_i.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "krg/bz.hpp"

namespace krg {

struct TorusElement {
  using Key = std::pair<Mask, std::vector<std::int64_t>>;
  std::map<Key, std::int64_t> terms;

  bool is_zero() const { return terms.empty(); }
  TorusElement& add(Mask m, const std::vector<std::int64_t>& e, std::int64_t c);
  TorusElement& operator+=(const TorusElement& o);
  friend bool operator==(const TorusElement&, const TorusElement&) = default;
};

/// Serial reference product.
TorusElement torus_multiply(const TorusElement& a, const TorusElement& b);
/// OpenMP product; same result as the serial one.
TorusElement torus_multiply_parallel(const TorusElement& a, const TorusElement& b);

/// Image of delta_F(Lambda^k) on the torus: sum over |J| = k of e^J (x) sum_{j in J} delta_j.
/// The field must match the involution: sigmaR gives R throughout, sigmaH gives H for odd k.
TorusElement torus_restriction_un(int n, FieldType field, int k, InvolutionKind kind);

/// Product of the images for k = 1..n, in order.
TorusElement torus_top_form(int n, InvolutionKind kind, bool parallel = false);

/// prod_{i<j} (e_i - e_j) * e_1...e_n * delta_1...delta_n.
TorusElement weyl_denominator_form(int n);

std::string to_string(const TorusElement& x);

}  // namespace krg
