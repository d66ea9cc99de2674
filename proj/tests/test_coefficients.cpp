#include <doctest.h>

#include <random>

#include "krg/coefficients.hpp"
#include "krg/equivariant.hpp"

using namespace krg;

namespace {

// Rewriting normalizer on monomials eta^a mu^b, independent of KRCoeff::operator*.
KRCoeff rewrite(const std::vector<KRMonomial>& raw) {
  std::int64_t one = 0, eta = 0, eta2 = 0, mu = 0;
  for (const auto& m : raw) {
    if (m.eta_pow > 0 && m.mu_pow > 0) continue;
    if (m.eta_pow >= 3) continue;
    std::int64_t k = m.coeff;
    for (int i = 0; i + 1 < m.mu_pow; i += 2) k *= 4;
    bool odd_mu = m.mu_pow % 2;
    if (m.eta_pow == 1) eta += k;
    else if (m.eta_pow == 2) eta2 += k;
    else if (odd_mu) mu += k;
    else one += k;
  }
  KRCoeff out;
  out.one = one;
  out.eta = ((eta % 2) + 2) % 2;
  out.eta2 = ((eta2 % 2) + 2) % 2;
  out.mu = mu;
  return out;
}

KRCoeff random_kr(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-5, 5);
  return KRCoeff::scalar(d(rng)) + KRCoeff::basis(KRBasis::Eta, d(rng)) + KRCoeff::basis(KRBasis::Eta2, d(rng)) +
         KRCoeff::basis(KRBasis::Mu, d(rng));
}

const KRCoeff eta = KRCoeff::basis(KRBasis::Eta);
const KRCoeff mu = KRCoeff::basis(KRBasis::Mu);

}  // namespace

TEST_CASE("KR coefficient relations") {
  CHECK(kr_normalize({{1, 3, 0, 0}}).is_zero());
  CHECK(kr_normalize({{2, 1, 0, 0}}).is_zero());
  CHECK(kr_normalize({{1, 0, 2, 0}}) == KRCoeff::scalar(4));
  CHECK(kr_normalize({{1, 1, 1, 0}}).is_zero());
  CHECK(kr_normalize({{3, 0, 0, 5}}) == KRCoeff::scalar(3));

  // the same facts through the projection formula
  CHECK(eta * r_coeff(KCoeff::beta_power(1)) == r_coeff(c_coeff(eta) * KCoeff::beta_power(1)));
  CHECK(r_coeff(KCoeff::beta_power(1)) == eta * eta);
  CHECK(r_coeff(KCoeff::beta_power(2)) == mu);
  CHECK(mu * mu == r_coeff(c_coeff(mu) * KCoeff::beta_power(2)));

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> e(0, 4), k(-6, 6);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<KRMonomial> raw;
    for (int i = 0; i < 4; ++i) raw.push_back({k(rng), e(rng), e(rng), e(rng)});
    KRCoeff x = kr_normalize(raw);
    CHECK(x == rewrite(raw));
    std::vector<KRMonomial> again{{x.one, 0, 0, 0}, {x.eta, 1, 0, 0}, {x.eta2, 2, 0, 0}, {x.mu, 0, 1, 0}};
    CHECK(kr_normalize(again) == x);
  }
}

TEST_CASE("complexification and realification of a point") {
  CHECK(c_coeff(KRCoeff::scalar(1)) == KCoeff::one());
  CHECK(c_coeff(eta).is_zero());
  CHECK(c_coeff(mu) == KCoeff::beta_power(2, 2));
  CHECK(r_coeff(KCoeff::one()) == KRCoeff::scalar(2));
  CHECK(r_coeff(KCoeff::beta_power(1)) == KRCoeff::basis(KRBasis::Eta2));
  CHECK(r_coeff(KCoeff::beta_power(3)).is_zero());

  // eta detection
  KRCoeff rb = r_coeff(KCoeff::beta_power(1));
  CHECK_FALSE(rb.is_zero());
  CHECK((2 * rb).is_zero());

  // r is additive but not multiplicative
  KRCoeff r1 = r_coeff(KCoeff::one());
  CHECK(r1 * r1 == 2 * r1);
  CHECK_FALSE(r1 * r1 == r_coeff(KCoeff::one() * KCoeff::one()));

  for (int i = 0; i < 8; ++i) {
    KCoeff b = KCoeff::beta_power(i);
    CHECK(c_coeff(r_coeff(b)) == b + b.conj());
  }
  for (KRBasis x : kKRBasis)
    for (KRBasis y : kKRBasis) {
      KRCoeff a = KRCoeff::basis(x), b = KRCoeff::basis(y);
      CHECK(c_coeff(a * b) == c_coeff(a) * c_coeff(b));
    }
  for (KRBasis x : kKRBasis)
    for (int j = 0; j < 4; ++j) {
      KRCoeff a = KRCoeff::basis(x);
      KCoeff y = KCoeff::beta_power(j);
      CHECK(r_coeff(c_coeff(a) * y) == a * r_coeff(y));
    }

  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    KRCoeff a = random_kr(rng), b = random_kr(rng), c = random_kr(rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("degree bookkeeping") {
  CHECK(canon_degree(0) == 0);
  CHECK(canon_degree(1) == 1);
  CHECK(canon_degree(-7) == 1);
  CHECK(canon_degree(-8) == 0);
  CHECK(canon_degree(2) == -6);
  const int expect_free[] = {1, 0, 0, 0, 1, 0, 0, 0};
  const int expect_torsion[] = {0, 1, 1, 0, 0, 0, 0, 0};
  for (int q = 0; q < 8; ++q) {
    CHECK(kr_pt_pattern(-q).first == expect_free[q]);
    CHECK(kr_pt_pattern(-q).second == expect_torsion[q]);
  }
}

namespace {

struct Case {
  const char* group;
  InvolutionKind kind;
  std::int64_t bound;
};

const Case kCases[] = {
    {"SU2", InvolutionKind::Trivial, 5},  {"SU3", InvolutionKind::Trivial, 8},
    {"SU3", InvolutionKind::SigmaR, 8},   {"SU4", InvolutionKind::SigmaH, 6},
    {"Sp2", InvolutionKind::Trivial, 5},  {"U2", InvolutionKind::SigmaH, 2},
    {"SU2xSU2", InvolutionKind::Trivial, 4},
};

TypeContext context(const Case& c) {
  LieGroup g(GroupSpec::parse(c.group));
  return TypeContext(g, Involution::uniform(g.root_data(), c.kind));
}

std::vector<ScalarTerm> kr_basis(const TypeContext& ctx, std::int64_t bound) {
  std::vector<ScalarTerm> out;
  auto irreps = ctx.group().irreps_up_to(bound);
  for (int q = 0; q < 8; ++q) {
    auto piece = kr_g_pt_piece(ctx, irreps, -q);
    for (const auto& t : piece.free_basis) out.push_back(t);
    for (const auto& t : piece.torsion_basis) out.push_back(t);
  }
  return out;
}

std::vector<std::pair<int, Weight>> k_basis(const TypeContext& ctx, std::int64_t bound) {
  std::vector<std::pair<int, Weight>> out;
  for (const auto& w : ctx.group().irreps_up_to(bound))
    for (int j = 0; j < 4; ++j) out.emplace_back(j, w);
  return out;
}

}  // namespace

TEST_CASE("equivariant coefficients: homomorphism and projection formula") {
  for (const Case& cs : kCases) {
    TypeContext ctx = context(cs);
    INFO(cs.group, " ", to_string(cs.kind));
    auto krb = kr_basis(ctx, cs.bound);
    auto kb = k_basis(ctx, cs.bound);
    for (const auto& a : krb) {
      KRGScalar x = KRGScalar::term(a.kind, a.index, a.weight);
      CHECK(x.degrees() == std::vector<int>{a.degree()});
      CHECK(multiply(ctx, KRGScalar::unit(ctx), x) == x);
      for (const auto& b : krb) {
        KRGScalar y = KRGScalar::term(b.kind, b.index, b.weight);
        KRGScalar xy = multiply(ctx, x, y);
        CHECK(xy == multiply(ctx, y, x));
        CHECK(complexify(ctx, xy) == multiply(ctx, complexify(ctx, x), complexify(ctx, y)));
        for (int d : xy.degrees()) CHECK(d == canon_degree(a.degree() + b.degree()));
      }
      for (const auto& [j, w] : kb) {
        KGScalar y = KGScalar::term(j, w);
        CHECK(realify(ctx, multiply(ctx, complexify(ctx, x), y)) == multiply(ctx, x, realify(ctx, y)));
      }
    }
    for (const auto& [j, w] : kb) {
      KGScalar y = KGScalar::term(j, w);
      CHECK(complexify(ctx, realify(ctx, y)) == y + conjugate(ctx, y));
      CHECK(conjugate(ctx, conjugate(ctx, y)) == y);
    }
  }
}

TEST_CASE("equivariant coefficients: associativity on random triples") {
  std::mt19937_64 rng(17);
  for (const Case& cs : kCases) {
    TypeContext ctx = context(cs);
    auto krb = kr_basis(ctx, cs.bound);
    std::uniform_int_distribution<std::size_t> pick(0, krb.size() - 1);
    std::uniform_int_distribution<int> coeff(-3, 3);
    auto random_element = [&] {
      KRGScalar x;
      for (int i = 0; i < 3; ++i) x.add(krb[pick(rng)], coeff(rng));
      return x;
    };
    for (int t = 0; t < 30; ++t) {
      KRGScalar a = random_element(), b = random_element(), c = random_element();
      CHECK(multiply(ctx, multiply(ctx, a, b), c) == multiply(ctx, a, multiply(ctx, b, c)));
    }
  }
}

TEST_CASE("graded pieces") {
  LieGroup su2(GroupSpec::parse("SU2"));
  TypeContext ctx(su2, Involution::trivial(su2.root_data()));
  auto irreps = su2.irreps_up_to(4);  // V0..V3
  auto p4 = kr_g_pt_piece(ctx, irreps, -4);
  bool has_defining = false;
  for (const auto& t : p4.free_basis) has_defining |= t.kind == TermKind::H && t.index == 0 && t.weight == Weight{1};
  CHECK(has_defining);
  CHECK(p4.free_rank() == 4);
  CHECK(p4.torsion_rank() == 0);

  auto p0 = kr_g_pt_piece(ctx, irreps, 0);
  CHECK(p0.free_rank() == 4);
  for (const auto& t : p0.free_basis)
    CHECK(((t.kind == TermKind::R && t.index == 0) || (t.kind == TermKind::H && t.index == 4)));
  CHECK(kr_g_pt_piece(ctx, irreps, -3).free_rank() == 0);
  CHECK(kr_g_pt_piece(ctx, irreps, -1).torsion_rank() == 2);
  CHECK(kr_g_pt_piece(ctx, irreps, -5).torsion_rank() == 2);

  // V1 (x) V1 = V0 + V2 carries a real structure
  KRGScalar h = KRGScalar::term(TermKind::H, 0, {1});
  CHECK(multiply(ctx, h, h) == KRGScalar::term(TermKind::R, 0, {0}) + KRGScalar::term(TermKind::R, 0, {2}));

  // complex pairs only contribute free summands
  LieGroup su3(GroupSpec::parse("SU3"));
  TypeContext c3(su3, Involution::trivial(su3.root_data()));
  auto irr3 = su3.irreps_up_to(8);
  for (int q = 0; q < 8; ++q) {
    auto p = kr_g_pt_piece(c3, irr3, -q);
    for (const auto& [cls, n] : p.torsion) CHECK(cls.type != FieldType::Complex);
  }
  // 1, 8 real; {3, 3bar}, {6, 6bar} pairs
  CHECK(kr_g_pt_piece(c3, irr3, -2).free_rank() == 2);
  CHECK(kr_g_pt_piece(c3, irr3, 0).free_rank() == 4);
}
