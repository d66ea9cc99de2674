#pragma once

// Real equivariant K-theory of the group with the twisted conjugation action.
//
// Normal form of an element:
//   sum  a * M              a in the coefficient ring, M a monomial in the
//                           exterior generators (delta_R, delta_H, lambda)
// + sum  n * M * r[rho,i,eps,nu]
// where r[rho,i,eps,nu] = r(beta^i rho prod delta(gamma_k)^eps_k prod delta(abar gamma_k)^nu_k).
// Products of r-classes and scalar actions on them go through the
// projection formula x * r(w) = r(c(x) w); factors that are complexifications
// of exterior generators are pulled back out, so the form is canonical.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "krg/bz.hpp"

namespace krg {

enum class GenKind { DeltaR, DeltaH, Lambda, RClass };

std::string to_string(GenKind k);

struct RClassIndex {
  Weight rho;
  int i = 0;  // beta exponent mod 4
  std::vector<std::uint8_t> eps, nu;

  int degree() const;
  /// Set of pairs k touched by eps or nu.
  Mask support() const;
  /// No k with both bits, some bit set, and the first eps index precedes the first nu index.
  bool canonical() const;
  std::string to_string() const;
  auto operator<=>(const RClassIndex&) const = default;
};

struct Generator {
  GenKind kind = GenKind::DeltaR;
  std::string name;
  int degree = 0;
  IrrepClass payload;  // fundamental for delta/lambda generators
  std::optional<RClassIndex> rclass;
  int slot = -1;  // exterior slot, -1 for r-classes
};

struct KRElement {
  std::map<Mask, KRGScalar> omega;
  std::map<std::pair<Mask, RClassIndex>, std::int64_t> rpart;

  bool is_zero() const { return omega.empty() && rpart.empty(); }
  KRElement& add(Mask m, const KRGScalar& a);
  KRElement& add(Mask m, const RClassIndex& idx, std::int64_t n);
  KRElement& operator+=(const KRElement& o);
  friend KRElement operator+(KRElement a, const KRElement& b) { return a += b; }
  friend KRElement operator*(std::int64_t k, const KRElement& a);
  friend bool operator==(const KRElement&, const KRElement&) = default;
};

struct Relation {
  std::string lhs;
  KRElement rhs;
  std::string provenance;
};

/// Tabulated square of an r-class, decided by its degree.
struct RSquare {
  enum class Case { Zero, Eta2, Mu };
  Case which = Case::Zero;
  KRElement value;
  int sign = 1;
  int transpositions = 0;
  bool exponent_extrapolated = false;  // lambda exponents beyond the single-pair case
};

class KRPresentation {
 public:
  /// truncation bounds the dimension of rho in listed r-class generators.
  KRPresentation(TypeContext ctx, std::int64_t truncation = 50, int abar_sign = -1);

  const TypeContext& context() const { return bz_.context(); }
  const BZPresentation& bz() const { return bz_; }
  const FundamentalSplit& split() const { return split_; }
  bool omega_form() const { return split_.t() == 0; }
  std::int64_t truncation() const { return truncation_; }

  int slot_count() const { return static_cast<int>(slots_.size()); }
  const Generator& slot(int k) const { return slots_.at(k); }
  bool odd(int k) const { return slots_.at(k).kind != GenKind::Lambda; }
  int mask_degree(Mask m) const;
  int odd_count(Mask m) const;
  /// Exterior generators followed by the listed r-classes.
  std::vector<Generator> generators() const;
  std::vector<RClassIndex> listed_rclasses() const;

  KRElement unit() const;
  KRElement scalar(const KRGScalar& a) const;
  KRElement gen(int k) const;
  KRElement rclass(const RClassIndex& idx) const;
  /// Degrees of the terms, deduplicated.
  std::vector<int> degrees(const KRElement& x) const;

  KRElement multiply(const KRElement& a, const KRElement& b) const;

  /// r: K side -> KR side, in normal form.
  KRElement realify(const BZElement& z) const;
  /// c: KR side -> K side.
  BZElement complexify(const KRElement& x) const;
  /// The K-side element w with r[idx] = r(w).
  BZElement rclass_preimage(const RClassIndex& idx) const;

  /// Tabulated square by degree mod 8, with the sign from sorting the delta factors.
  RSquare rclass_square(const RClassIndex& idx) const;

  /// Leibniz extension of delta_R / delta_H to a polynomial in the fundamentals.
  /// Needs every fundamental to be of real or quaternionic type.
  KRElement delta_lift(const FundamentalPolynomial& p) const;
  KRElement delta_lift(const Weight& lambda) const;
  /// delta of a degree 0 / -4 coefficient (linear extension over irreducibles).
  KRElement delta_scalar(const KRGScalar& x) const;
  /// The coefficient-ring value of a polynomial in the fundamentals.
  KRGScalar evaluate(const std::vector<std::int64_t>& exponents) const;

  /// Relation table: generator squares plus the generic r-class rules.
  std::vector<Relation> relations() const;

  /// Overrides the tabulated square of an exterior generator (test fixtures).
  void set_square(int k, KRElement value);
  const KRElement& square(int k) const { return squares_.at(k); }

  std::string to_string(const KRElement& x) const;

 private:
  KRElement mul_monomials(Mask a, Mask b) const;
  KRElement left_monomial(Mask m, const KRElement& x) const;
  KRElement push_into_r(const KRGScalar& a, Mask m, const RClassIndex& idx, std::int64_t n) const;
  KRElement scale(const KRGScalar& a, const KRElement& x) const;
  KRElement times_r(const KRElement& x, const RClassIndex& idx, std::int64_t n) const;
  void add_r(KRElement& out, Mask m, const RClassIndex& idx, std::int64_t n) const;
  Mask lambda_mask(Mask support) const;

  BZPresentation bz_;
  FundamentalSplit split_;
  std::int64_t truncation_;
  std::vector<Generator> slots_;
  std::vector<KRElement> squares_;
  std::map<int, int> slot_of_fundamental_;
  std::map<int, int> pair_of_fundamental_;  // fundamental index -> k for gamma_k and its partner
  std::vector<bool> overridden_;
  struct Memo;
  std::shared_ptr<Memo> memo_;
};

}  // namespace krg
