#pragma once

// Equivariant coefficients of a point.
//
// KR side: each irreducible class contributes a copy of a periodic
// coefficient ring according to its type:
//   R(b, V)   V real type,        b in {1, eta, eta^2, mu}, degree deg(b)
//   H(b, V)   V quaternionic type, b as above,             degree deg(b) - 4
//   C(k, V)   = r(beta^k V) for V a chosen member of a complex pair, degree -2k
// K side: beta^j V.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "krg/coefficients.hpp"
#include "krg/real_structures.hpp"

namespace krg {

/// Group, involution and a memo of irrep classifications.
class TypeContext {
 public:
  TypeContext(LieGroup g, Involution inv);

  const LieGroup& group() const { return group_; }
  const Involution& involution() const { return inv_; }
  const RootData& root_data() const { return group_.root_data(); }

  IrrepClass info(const Weight& lambda) const;
  /// Chosen member of the pair {lambda, twisted dual}; lambda itself when self-dual.
  Weight representative(const Weight& lambda) const;

 private:
  LieGroup group_;
  Involution inv_;
  struct Memo;
  std::shared_ptr<Memo> memo_;
};

enum class TermKind { R, H, C };

struct ScalarTerm {
  TermKind kind = TermKind::R;
  int index = 0;  // KRBasis value for R/H, beta exponent mod 4 for C
  Weight weight;

  int degree() const;
  std::string to_string() const;
  auto operator<=>(const ScalarTerm&) const = default;
};

/// Element of the KR coefficient ring in normal form.
struct KRGScalar {
  std::map<ScalarTerm, std::int64_t> terms;

  static KRGScalar term(TermKind kind, int index, Weight w, std::int64_t coeff = 1);
  static KRGScalar unit(const TypeContext& ctx);

  bool is_zero() const { return terms.empty(); }
  std::string to_string() const;
  /// Degrees present (canonical representatives).
  std::vector<int> degrees() const;

  KRGScalar& add(const ScalarTerm& t, std::int64_t coeff);
  KRGScalar& operator+=(const KRGScalar& o);
  friend KRGScalar operator+(KRGScalar a, const KRGScalar& b) { return a += b; }
  friend KRGScalar operator*(std::int64_t k, const KRGScalar& a);
  friend bool operator==(const KRGScalar&, const KRGScalar&) = default;
};

/// Element of the K coefficient ring: (beta exponent mod 4, weight) -> coefficient.
struct KGScalar {
  std::map<std::pair<int, Weight>, std::int64_t> terms;

  static KGScalar term(int j, Weight w, std::int64_t coeff = 1);

  bool is_zero() const { return terms.empty(); }
  std::string to_string() const;
  KGScalar& add(int j, const Weight& w, std::int64_t coeff);
  KGScalar& operator+=(const KGScalar& o);
  friend KGScalar operator+(KGScalar a, const KGScalar& b) { return a += b; }
  friend KGScalar operator*(std::int64_t k, const KGScalar& a);
  friend bool operator==(const KGScalar&, const KGScalar&) = default;
};

/// Normalizes a C term onto the pair representative, fixing the sign.
KRGScalar normalize(const TypeContext& ctx, const KRGScalar& x);

KRGScalar multiply(const TypeContext& ctx, const KRGScalar& a, const KRGScalar& b);
KGScalar multiply(const TypeContext& ctx, const KGScalar& a, const KGScalar& b);
/// KR coefficient of a point acting on the equivariant ring.
KRGScalar act(const TypeContext& ctx, const KRCoeff& b, const KRGScalar& x);

/// Class of V (x) W in degree 0 when V and W carry structures of the same type.
KRGScalar real_structure(const TypeContext& ctx, const Weight& v, const Weight& w);

KGScalar complexify(const TypeContext& ctx, const KRGScalar& x);
KRGScalar realify(const TypeContext& ctx, const KGScalar& y);
/// beta -> -beta, V -> twisted dual of V.
KGScalar conjugate(const TypeContext& ctx, const KGScalar& y);

/// Degree-q piece of the coefficient ring restricted to the given irreps.
struct KRGCoeffPiece {
  int degree = 0;
  std::vector<std::pair<IrrepClass, std::int64_t>> free;
  std::vector<std::pair<IrrepClass, std::int64_t>> torsion;
  std::vector<ScalarTerm> free_basis, torsion_basis;

  std::int64_t free_rank() const;
  std::int64_t torsion_rank() const;
};

/// Complex pairs are counted once, whichever member appears in `irreps`.
KRGCoeffPiece kr_g_pt_piece(const TypeContext& ctx, const std::vector<Weight>& irreps, int q);

/// Non-equivariant pattern per degree q = 0, -1, ..., -7: free rank and Z/2 rank.
std::pair<int, int> kr_pt_pattern(int q);

}  // namespace krg
