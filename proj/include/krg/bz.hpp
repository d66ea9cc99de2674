#pragma once

// Equivariant K-theory of the group acting on itself by conjugation:
// an exterior algebra over R(G)[beta]/(beta^4 - 1) on delta_G of the
// fundamental representations, each of degree -1.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "krg/equivariant.hpp"

namespace krg {

using Mask = std::uint32_t;

inline int popcount(Mask m) { return __builtin_popcount(m); }

struct BZElement {
  std::map<Mask, KGScalar> terms;  // exterior monomial (bit = fundamental index) -> coefficient

  bool is_zero() const { return terms.empty(); }
  BZElement& add(Mask m, const KGScalar& c);
  BZElement& operator+=(const BZElement& o);
  friend BZElement operator+(BZElement a, const BZElement& b) { return a += b; }
  friend BZElement operator*(std::int64_t k, const BZElement& a);
  friend bool operator==(const BZElement&, const BZElement&) = default;
};

/// Sign of the product of exterior monomials a*b (all generators odd); 0 when they overlap.
int wedge_sign(Mask a, Mask b);

class BZPresentation {
 public:
  /// abar_sign is the sign s in delta(abar rho) = s * delta(twisted dual of rho).
  explicit BZPresentation(TypeContext ctx, int abar_sign = -1);

  const TypeContext& context() const { return ctx_; }
  int generator_count() const { return static_cast<int>(ctx_.root_data().fundamental_weights.size()); }
  int abar_sign() const { return abar_sign_; }
  std::string generator_name(int f) const;

  BZElement unit() const;
  BZElement scalar(const KGScalar& c) const;
  BZElement generator(int f) const;  // delta_G of the f-th fundamental
  /// delta_G(abar rho) for the f-th fundamental.
  BZElement abar_generator(int f) const;

  BZElement multiply(const BZElement& a, const BZElement& b) const;
  /// beta -> -beta, V -> twisted dual, delta(f) -> delta(abar f).
  BZElement tau(const BZElement& a) const;

  /// Index of the fundamental that is the twisted dual of fundamental f.
  int partner(int f) const;

  /// Value of a Laurent monomial in the fundamentals, in R(G).
  KGScalar evaluate(const std::vector<std::int64_t>& exponents) const;
  KGScalar evaluate(const FundamentalPolynomial& p) const;
  /// Leibniz extension of delta_G to a polynomial in the fundamentals.
  BZElement delta_lift(const FundamentalPolynomial& p) const;
  BZElement delta_lift(const Weight& lambda) const {
    return delta_lift(ctx_.group().fundamental_polynomial(lambda));
  }

  /// Ranks over R(G) of the exterior powers.
  std::vector<std::int64_t> exterior_ranks() const;
  /// Total rank over Z after augmenting R(G) -> Z (one beta period).
  std::int64_t augmented_rank() const { return std::int64_t{1} << generator_count(); }

  static int degree(Mask m, int beta_power);
  std::string to_string(const BZElement& a) const;

 private:
  TypeContext ctx_;
  int abar_sign_;
  std::vector<int> partner_;
  struct Memo;
  std::shared_ptr<Memo> memo_;
};

}  // namespace krg
