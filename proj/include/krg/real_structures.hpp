#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "krg/lie.hpp"

namespace krg {

enum class FieldType { Real, Complex, Quaternionic };
enum class Provenance { Rule, Oracle, Override };

const char* to_string(FieldType t);
const char* to_string(Provenance p);
FieldType parse_field_type(const std::string& s);

/// Per-factor involution kinds. Uncataloged is what sigmaR/sigmaH become on
/// a non-unitary factor, and what an override-only (user defined) job uses.
enum class InvolutionKind { Trivial, SigmaR, SigmaH, Uncataloged };

const char* to_string(InvolutionKind k);

struct Involution {
  std::vector<InvolutionKind> kinds;  // one per simple factor
  IntMatrix diagram;                  // lattice automorphism applied after -w0
  std::map<Weight, FieldType> overrides;
  std::string name;

  static Involution trivial(const RootData& rd);
  /// sigmaR, sigmaH or trivial applied to every factor.
  static Involution uniform(const RootData& rd, InvolutionKind kind);
  static Involution per_factor(const RootData& rd, std::vector<InvolutionKind> kinds);

  bool has_matrix_realization(const RootData& rd) const;
};

/// Throws PreconditionError when sigmaH is requested on a factor that is not
/// an even-rank unitary group.
void validate_involution(const RootData& rd, const Involution& inv);

struct IrrepClass {
  Weight highest;
  Weight twisted;
  FieldType type = FieldType::Real;
  Provenance provenance = Provenance::Rule;

  friend bool operator==(const IrrepClass&, const IrrepClass&) = default;
};

struct FundamentalSplit {
  std::vector<IrrepClass> real;          // phi list
  std::vector<IrrepClass> quaternionic;  // theta list
  std::vector<IrrepClass> complex;       // gamma list, one per pair
  std::vector<int> real_index, quaternionic_index, complex_index, complex_partner_index;
  int fundamental_count = 0;

  int r() const { return static_cast<int>(real.size()); }
  int s() const { return static_cast<int>(quaternionic.size()); }
  int t() const { return static_cast<int>(complex.size()); }
};

Weight twisted_dual(const RootData& rd, const Involution& inv, const Weight& lambda);

/// Real/Quaternionic decision by parity of <lambda, 2 rho^vee>; lambda must be self-dual.
FieldType fs_rule_type(const RootData& rd, const Weight& lambda);

/// Catalog rule for a self-twisted-dual weight, when one applies.
std::optional<FieldType> catalog_type(const RootData& rd, const Involution& inv, const Weight& lambda);

/// Override > catalog rule > matrix oracle; throws Unclassifiable otherwise.
IrrepClass classify(const LieGroup& g, const Involution& inv, const Weight& lambda);
inline FieldType classify_type(const LieGroup& g, const Involution& inv, const Weight& lambda) {
  return classify(g, inv, lambda).type;
}

FundamentalSplit split_fundamentals(const LieGroup& g, const Involution& inv);

}  // namespace krg
