#include "krg/real_structures.hpp"

#include <algorithm>

#include "krg/error.hpp"
#include "krg/matrix_oracle.hpp"

namespace krg {

const char* to_string(FieldType t) {
  switch (t) {
    case FieldType::Real: return "R";
    case FieldType::Complex: return "C";
    case FieldType::Quaternionic: return "H";
  }
  return "?";
}

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Rule: return "rule";
    case Provenance::Oracle: return "oracle";
    case Provenance::Override: return "override";
  }
  return "?";
}

FieldType parse_field_type(const std::string& s) {
  if (s == "R") return FieldType::Real;
  if (s == "C") return FieldType::Complex;
  if (s == "H") return FieldType::Quaternionic;
  throw PreconditionError("unknown field type '" + s + "' (expected R, C or H)");
}

const char* to_string(InvolutionKind k) {
  switch (k) {
    case InvolutionKind::Trivial: return "trivial";
    case InvolutionKind::SigmaR: return "sigmaR";
    case InvolutionKind::SigmaH: return "sigmaH";
    case InvolutionKind::Uncataloged: return "uncataloged";
  }
  return "?";
}

namespace {

IntMatrix identity_matrix(int n) {
  IntMatrix m(n, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// Coordinates of lambda outside factor f zeroed.
Weight restrict_to_factor(const RootData& rd, const Weight& lambda, int f) {
  Weight out(lambda.size(), 0);
  int lo = rd.factor_coord_offset[f], hi = lo + rd.factor_dim(f);
  for (int i = lo; i < hi; ++i) out[i] = lambda[i];
  return out;
}

bool is_zero(const Weight& w) {
  return std::all_of(w.begin(), w.end(), [](std::int64_t x) { return x == 0; });
}

}  // namespace

Involution Involution::trivial(const RootData& rd) { return uniform(rd, InvolutionKind::Trivial); }

Involution Involution::uniform(const RootData& rd, InvolutionKind kind) {
  Involution inv = per_factor(rd, std::vector<InvolutionKind>(rd.factor_count(), kind));
  inv.name = to_string(kind);
  return inv;
}

Involution Involution::per_factor(const RootData& rd, std::vector<InvolutionKind> kinds) {
  if (static_cast<int>(kinds.size()) != rd.factor_count())
    throw PreconditionError("involution list has " + std::to_string(kinds.size()) + " entries for " +
                            std::to_string(rd.factor_count()) + " factors");
  Involution inv;
  inv.diagram = identity_matrix(rd.dim);
  for (int f = 0; f < rd.factor_count(); ++f) {
    const SimpleFactor& sf = rd.spec.factors[f];
    if (kinds[f] == InvolutionKind::SigmaR && !sf.unitary()) kinds[f] = InvolutionKind::Uncataloged;
    bool conjugating = kinds[f] == InvolutionKind::SigmaR || kinds[f] == InvolutionKind::SigmaH;
    if (conjugating && sf.unitary()) {
      int lo = rd.factor_coord_offset[f], hi = lo + rd.factor_dim(f);
      for (int i = lo; i < hi; ++i)
        for (int j = lo; j < hi; ++j) inv.diagram[i][j] = -rd.w0[i][j];
    }
  }
  for (std::size_t f = 0; f < kinds.size(); ++f) inv.name += (f ? "," : "") + std::string(to_string(kinds[f]));
  inv.kinds = std::move(kinds);
  return inv;
}

bool Involution::has_matrix_realization(const RootData& rd) const {
  return matrix_involution(rd, *this).has_value();
}

void validate_involution(const RootData& rd, const Involution& inv) {
  if (static_cast<int>(inv.kinds.size()) != rd.factor_count())
    throw PreconditionError("involution does not match the number of factors");
  for (int f = 0; f < rd.factor_count(); ++f) {
    const SimpleFactor& sf = rd.spec.factors[f];
    if (inv.kinds[f] == InvolutionKind::SigmaH && !(sf.unitary() && sf.n % 2 == 0))
      throw PreconditionError("sigmaH requires SU(2m) or U(2m), got " + sf.to_string());
  }
  if (inv.diagram.size() != static_cast<std::size_t>(rd.dim))
    throw PreconditionError("involution diagram has wrong size");
  for (int i = 0; i < rd.dim; ++i) {
    Weight e(rd.dim, 0);
    e[i] = 1;
    if (apply_matrix(inv.diagram, apply_matrix(inv.diagram, e)) != e)
      throw PreconditionError("involution diagram does not square to the identity");
  }
}

Weight twisted_dual(const RootData& rd, const Involution& inv, const Weight& lambda) {
  return apply_matrix(inv.diagram, dual_highest_weight(rd, lambda));
}

FieldType fs_rule_type(const RootData& rd, const Weight& lambda) {
  std::int64_t total = 0;
  for (const auto& c : rd.positive_coroots) total = checked_add(total, pairing(lambda, c));
  return total % 2 == 0 ? FieldType::Real : FieldType::Quaternionic;
}

std::optional<FieldType> catalog_type(const RootData& rd, const Involution& inv, const Weight& lambda) {
  int quaternionic = 0;
  for (int f = 0; f < rd.factor_count(); ++f) {
    Weight part = restrict_to_factor(rd, lambda, f);
    if (is_zero(part)) continue;
    const SimpleFactor& sf = rd.spec.factors[f];
    FieldType t;
    switch (inv.kinds[f]) {
      case InvolutionKind::Trivial:
        t = fs_rule_type(rd, part);
        break;
      case InvolutionKind::SigmaR:
        if (!sf.unitary()) return std::nullopt;
        t = FieldType::Real;
        break;
      case InvolutionKind::SigmaH: {
        if (!sf.unitary() || sf.n % 2) return std::nullopt;
        // parity of the box count, i.e. the action of -1
        std::int64_t boxes = 0;
        int lo = rd.factor_coord_offset[f];
        for (int i = 0; i < rd.factor_dim(f); ++i)
          boxes += sf.family == Family::U ? part[lo + i] : (i + 1) * part[lo + i];
        t = boxes % 2 == 0 ? FieldType::Real : FieldType::Quaternionic;
        break;
      }
      default:
        return std::nullopt;
    }
    if (t == FieldType::Quaternionic) ++quaternionic;
  }
  return quaternionic % 2 == 0 ? FieldType::Real : FieldType::Quaternionic;
}

IrrepClass classify(const LieGroup& g, const Involution& inv, const Weight& lambda) {
  const RootData& rd = g.root_data();
  if (lambda.size() != static_cast<std::size_t>(rd.dim) || !is_dominant(rd, lambda))
    throw PreconditionError("not a dominant weight: " + weight_to_string(lambda));
  IrrepClass c;
  c.highest = lambda;
  c.twisted = twisted_dual(rd, inv, lambda);
  bool self_dual = c.twisted == lambda;

  if (auto it = inv.overrides.find(lambda); it != inv.overrides.end()) {
    if ((it->second == FieldType::Complex) == self_dual)
      throw PreconditionError("override for " + weight_to_string(lambda) + " contradicts its twisted dual " +
                              weight_to_string(c.twisted));
    c.type = it->second;
    c.provenance = Provenance::Override;
    return c;
  }
  if (!self_dual) {
    c.type = FieldType::Complex;
    return c;
  }
  if (auto t = catalog_type(rd, inv, lambda)) {
    c.type = *t;
    return c;
  }
  if (auto mi = matrix_involution(rd, inv)) {
    if (auto repr = realize(rd, lambda)) {
      c.type = matrix_oracle_type(*repr, *mi).type;
      c.provenance = Provenance::Oracle;
      return c;
    }
  }
  throw Unclassifiable("no rule, oracle or override classifies " + weight_to_string(lambda) +
                           "; supply an override entry for this weight",
                       weight_to_string(lambda));
}

FundamentalSplit split_fundamentals(const LieGroup& g, const Involution& inv) {
  const RootData& rd = g.root_data();
  FundamentalSplit split;
  const auto& fund = rd.fundamental_weights;
  int n = static_cast<int>(fund.size());
  split.fundamental_count = n;
  std::vector<bool> done(n, false);
  for (int i = 0; i < n; ++i) {
    if (done[i]) continue;
    IrrepClass c = classify(g, inv, fund[i]);
    if (c.type == FieldType::Real) {
      split.real.push_back(c);
      split.real_index.push_back(i);
    } else if (c.type == FieldType::Quaternionic) {
      split.quaternionic.push_back(c);
      split.quaternionic_index.push_back(i);
    } else {
      auto it = std::find(fund.begin(), fund.end(), c.twisted);
      if (it == fund.end())
        throw UnsupportedGroup("the involution does not permute the fundamental representations of " +
                               rd.spec.to_string() + " (" + weight_to_string(fund[i]) + " -> " +
                               weight_to_string(c.twisted) + ")");
      int j = static_cast<int>(it - fund.begin());
      done[j] = true;
      auto ei = fundamental_exponents(rd, fund[i]), ej = fundamental_exponents(rd, fund[j]);
      int rep = ej < ei ? j : i, partner = rep == i ? j : i;
      split.complex.push_back(classify(g, inv, fund[rep]));
      split.complex_index.push_back(rep);
      split.complex_partner_index.push_back(partner);
    }
    done[i] = true;
  }
  // gamma list ordered by representative index
  std::vector<int> order(split.complex.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return split.complex_index[a] < split.complex_index[b]; });
  FundamentalSplit sorted = split;
  for (std::size_t k = 0; k < order.size(); ++k) {
    sorted.complex[k] = split.complex[order[k]];
    sorted.complex_index[k] = split.complex_index[order[k]];
    sorted.complex_partner_index[k] = split.complex_partner_index[order[k]];
  }
  return sorted;
}

}  // namespace krg
