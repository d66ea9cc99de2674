#include "krg/equivariant.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "krg/error.hpp"

namespace krg {

namespace {

int mod4(int x) { return ((x % 4) + 4) % 4; }

bool torsion_index(int index) { return index == 1 || index == 2; }

// R/H terms of coefficient x on the given weight.
void add_coeff(KRGScalar& out, TermKind kind, const Weight& w, const KRCoeff& x, std::int64_t k) {
  for (KRBasis b : kKRBasis) {
    std::int64_t c = x.coefficient(b);
    if (c != 0) out.add({kind, static_cast<int>(b), w}, checked_mul(c, k));
  }
}

}  // namespace

struct TypeContext::Memo {
  std::mutex mu;
  std::map<Weight, IrrepClass> classes;
};

TypeContext::TypeContext(LieGroup g, Involution inv)
    : group_(std::move(g)), inv_(std::move(inv)), memo_(std::make_shared<Memo>()) {
  validate_involution(group_.root_data(), inv_);
}

IrrepClass TypeContext::info(const Weight& lambda) const {
  {
    std::lock_guard<std::mutex> lock(memo_->mu);
    if (auto it = memo_->classes.find(lambda); it != memo_->classes.end()) return it->second;
  }
  IrrepClass c = classify(group_, inv_, lambda);
  std::lock_guard<std::mutex> lock(memo_->mu);
  return memo_->classes.emplace(lambda, std::move(c)).first->second;
}

Weight TypeContext::representative(const Weight& lambda) const {
  IrrepClass c = info(lambda);
  if (c.type != FieldType::Complex) return lambda;
  const RootData& rd = root_data();
  return fundamental_exponents(rd, c.twisted) < fundamental_exponents(rd, lambda) ? c.twisted : lambda;
}

int ScalarTerm::degree() const {
  switch (kind) {
    case TermKind::R: return canon_degree(-index);
    case TermKind::H: return canon_degree(-index - 4);
    case TermKind::C: return canon_degree(-2 * index);
  }
  return 0;
}

std::string ScalarTerm::to_string() const {
  static const char* basis_names[] = {"1", "eta", "eta^2", "", "mu"};
  std::ostringstream os;
  switch (kind) {
    case TermKind::R: os << "R[" << basis_names[index] << "]"; break;
    case TermKind::H: os << "H[" << basis_names[index] << "]"; break;
    case TermKind::C: os << "C[b^" << index << "]"; break;
  }
  os << weight_to_string(weight);
  return os.str();
}

KRGScalar KRGScalar::term(TermKind kind, int index, Weight w, std::int64_t coeff) {
  KRGScalar s;
  s.add({kind, index, std::move(w)}, coeff);
  return s;
}

KRGScalar KRGScalar::unit(const TypeContext& ctx) { return term(TermKind::R, 0, ctx.group().zero_weight()); }

KRGScalar& KRGScalar::add(const ScalarTerm& t, std::int64_t coeff) {
  if (coeff == 0) return *this;
  auto [it, inserted] = terms.try_emplace(t, 0);
  it->second = checked_add(it->second, coeff);
  if (t.kind != TermKind::C && torsion_index(t.index)) it->second = ((it->second % 2) + 2) % 2;
  if (it->second == 0) terms.erase(it);
  return *this;
}

KRGScalar& KRGScalar::operator+=(const KRGScalar& o) {
  for (const auto& [t, c] : o.terms) add(t, c);
  return *this;
}

KRGScalar operator*(std::int64_t k, const KRGScalar& a) {
  KRGScalar out;
  for (const auto& [t, c] : a.terms) out.add(t, checked_mul(k, c));
  return out;
}

std::string KRGScalar::to_string() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, c] : terms) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    std::int64_t a = c < 0 ? -c : c;
    if (a != 1) os << a << "*";
    os << t.to_string();
    first = false;
  }
  return os.str();
}

std::vector<int> KRGScalar::degrees() const {
  std::set<int> ds;
  for (const auto& [t, c] : terms) ds.insert(t.degree());
  return {ds.begin(), ds.end()};
}

KGScalar KGScalar::term(int j, Weight w, std::int64_t coeff) {
  KGScalar s;
  s.add(j, w, coeff);
  return s;
}

KGScalar& KGScalar::add(int j, const Weight& w, std::int64_t coeff) {
  if (coeff == 0) return *this;
  auto [it, inserted] = terms.try_emplace({mod4(j), w}, 0);
  it->second = checked_add(it->second, coeff);
  if (it->second == 0) terms.erase(it);
  return *this;
}

KGScalar& KGScalar::operator+=(const KGScalar& o) {
  for (const auto& [k, c] : o.terms) add(k.first, k.second, c);
  return *this;
}

KGScalar operator*(std::int64_t k, const KGScalar& a) {
  KGScalar out;
  for (const auto& [t, c] : a.terms) out.add(t.first, t.second, checked_mul(k, c));
  return out;
}

std::string KGScalar::to_string() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, c] : terms) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    std::int64_t a = c < 0 ? -c : c;
    if (a != 1) os << a << "*";
    if (t.first) os << "b^" << t.first << "*";
    os << "V" << weight_to_string(t.second);
    first = false;
  }
  return os.str();
}

KRGScalar normalize(const TypeContext& ctx, const KRGScalar& x) {
  KRGScalar out;
  for (const auto& [t, c] : x.terms) {
    if (t.kind != TermKind::C) {
      out.add(t, c);
      continue;
    }
    Weight rep = ctx.representative(t.weight);
    std::int64_t sign = rep == t.weight || t.index % 2 == 0 ? 1 : -1;
    out.add({TermKind::C, mod4(t.index), rep}, sign * c);
  }
  return out;
}

namespace {

// Real (self-conjugate) structure on V (x) W when the two structures agree.
KRGScalar real_embedding(const TypeContext& ctx, const Weight& v, const Weight& w) {
  KRGScalar out;
  for (const auto& [u, m] : ctx.group().tensor_decompose(v, w)) {
    IrrepClass c = ctx.info(u);
    if (c.type == FieldType::Real) {
      out.add({TermKind::R, 0, u}, m);
    } else if (c.type == FieldType::Quaternionic) {
      if (m % 2) throw InvariantViolation("odd quaternionic multiplicity in a real tensor product");
      out.add({TermKind::H, static_cast<int>(KRBasis::Mu), u}, m / 2);
    } else if (ctx.representative(u) == u) {
      out.add({TermKind::C, 0, u}, m);
    }
  }
  return out;
}

// Quaternionic structure on V (x) W when the two structures differ.
KRGScalar quaternionic_embedding(const TypeContext& ctx, const Weight& v, const Weight& w) {
  KRGScalar out;
  for (const auto& [u, m] : ctx.group().tensor_decompose(v, w)) {
    IrrepClass c = ctx.info(u);
    if (c.type == FieldType::Quaternionic) {
      out.add({TermKind::H, 0, u}, m);
    } else if (c.type == FieldType::Real) {
      if (m % 2) throw InvariantViolation("odd real multiplicity in a quaternionic tensor product");
      out.add({TermKind::R, static_cast<int>(KRBasis::Mu), u}, m / 2);
    } else if (ctx.representative(u) == u) {
      out.add({TermKind::C, 2, u}, m);
    }
  }
  return out;
}

KRGScalar multiply_terms(const TypeContext& ctx, const ScalarTerm& a, const ScalarTerm& b) {
  if (a.kind == TermKind::C || b.kind == TermKind::C) {
    const ScalarTerm& cterm = a.kind == TermKind::C ? a : b;
    const ScalarTerm& other = a.kind == TermKind::C ? b : a;
    KGScalar y = multiply(ctx, KGScalar::term(cterm.index, cterm.weight),
                          complexify(ctx, KRGScalar::term(other.kind, other.index, other.weight)));
    return realify(ctx, y);
  }
  KRGScalar base = a.kind == b.kind ? real_embedding(ctx, a.weight, b.weight)
                                    : quaternionic_embedding(ctx, a.weight, b.weight);
  KRCoeff coeff = KRCoeff::basis(static_cast<KRBasis>(a.index)) * KRCoeff::basis(static_cast<KRBasis>(b.index));
  return act(ctx, coeff, base);
}

}  // namespace

KRGScalar real_structure(const TypeContext& ctx, const Weight& v, const Weight& w) {
  return real_embedding(ctx, v, w);
}

KRGScalar act(const TypeContext& ctx, const KRCoeff& b, const KRGScalar& x) {
  KRGScalar out;
  for (const auto& [t, c] : x.terms) {
    if (t.kind == TermKind::C) {
      out.add(t, checked_mul(b.one, c));
      out.add({TermKind::C, mod4(t.index + 2), t.weight}, checked_mul(2, checked_mul(b.mu, c)));
    } else {
      add_coeff(out, t.kind, t.weight, KRCoeff::basis(static_cast<KRBasis>(t.index)) * b, c);
    }
  }
  return normalize(ctx, out);
}

KRGScalar multiply(const TypeContext& ctx, const KRGScalar& a, const KRGScalar& b) {
  KRGScalar out;
  for (const auto& [ta, ca] : a.terms)
    for (const auto& [tb, cb] : b.terms) out += checked_mul(ca, cb) * multiply_terms(ctx, ta, tb);
  return out;
}

KGScalar multiply(const TypeContext& ctx, const KGScalar& a, const KGScalar& b) {
  KGScalar out;
  for (const auto& [ta, ca] : a.terms)
    for (const auto& [tb, cb] : b.terms) {
      std::int64_t k = checked_mul(ca, cb);
      for (const auto& [u, m] : ctx.group().tensor_decompose(ta.second, tb.second))
        out.add(ta.first + tb.first, u, checked_mul(k, m));
    }
  return out;
}

KGScalar complexify(const TypeContext& ctx, const KRGScalar& x) {
  KGScalar out;
  for (const auto& [t, c] : x.terms) {
    if (t.kind == TermKind::C) {
      out.add(t.index, t.weight, c);
      out.add(t.index, ctx.info(t.weight).twisted, t.index % 2 ? -c : c);
      continue;
    }
    KCoeff k = c_coeff(KRCoeff::basis(static_cast<KRBasis>(t.index)));
    int shift = t.kind == TermKind::H ? 2 : 0;
    for (int i = 0; i < 4; ++i) out.add(i + shift, t.weight, checked_mul(k.c[i], c));
  }
  return out;
}

KRGScalar realify(const TypeContext& ctx, const KGScalar& y) {
  KRGScalar out;
  for (const auto& [t, c] : y.terms) {
    auto [j, nu] = t;
    IrrepClass info = ctx.info(nu);
    switch (info.type) {
      case FieldType::Real:
        add_coeff(out, TermKind::R, nu, r_coeff(KCoeff::beta_power(j)), c);
        break;
      case FieldType::Quaternionic:
        add_coeff(out, TermKind::H, nu, r_coeff(KCoeff::beta_power(j - 2)), c);
        break;
      case FieldType::Complex:
        out.add({TermKind::C, j, nu}, c);
        break;
    }
  }
  return normalize(ctx, out);
}

KGScalar conjugate(const TypeContext& ctx, const KGScalar& y) {
  KGScalar out;
  for (const auto& [t, c] : y.terms) out.add(t.first, ctx.info(t.second).twisted, t.first % 2 ? -c : c);
  return out;
}

std::int64_t KRGCoeffPiece::free_rank() const {
  std::int64_t n = 0;
  for (const auto& [c, k] : free) n += k;
  return n;
}

std::int64_t KRGCoeffPiece::torsion_rank() const {
  std::int64_t n = 0;
  for (const auto& [c, k] : torsion) n += k;
  return n;
}

std::pair<int, int> kr_pt_pattern(int q) {
  switch (canon_degree(q)) {
    case 0: return {1, 0};
    case -1: return {0, 1};
    case -2: return {0, 1};
    case -4: return {1, 0};
    default: return {0, 0};
  }
}

KRGCoeffPiece kr_g_pt_piece(const TypeContext& ctx, const std::vector<Weight>& irreps, int q) {
  KRGCoeffPiece piece;
  piece.degree = canon_degree(q);
  std::set<Weight> seen;
  for (const auto& w : irreps) {
    Weight rep = ctx.representative(w);
    if (!seen.insert(rep).second) continue;
    IrrepClass c = ctx.info(rep);
    int d = piece.degree;
    auto put = [&](TermKind kind, int index, bool torsion) {
      (torsion ? piece.torsion : piece.free).emplace_back(c, 1);
      (torsion ? piece.torsion_basis : piece.free_basis).push_back({kind, index, rep});
    };
    if (c.type == FieldType::Complex) {
      if (d % 2 == 0) put(TermKind::C, mod4(-d / 2), false);
      continue;
    }
    TermKind kind = c.type == FieldType::Real ? TermKind::R : TermKind::H;
    int shifted = canon_degree(c.type == FieldType::Real ? d : d + 4);
    switch (shifted) {
      case 0: put(kind, 0, false); break;
      case -1: put(kind, 1, true); break;
      case -2: put(kind, 2, true); break;
      case -4: put(kind, 4, false); break;
      default: break;
    }
  }
  return piece;
}

}  // namespace krg
