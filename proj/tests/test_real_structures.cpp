#include <doctest.h>

#include <algorithm>

#include "krg/error.hpp"
#include "krg/matrix_oracle.hpp"
#include "krg/real_structures.hpp"

using namespace krg;

namespace {

Weight fundamental(const LieGroup& g, int k) { return g.root_data().fundamental_weights[k - 1]; }

Involution make(const LieGroup& g, InvolutionKind k) { return Involution::uniform(g.root_data(), k); }

}  // namespace

TEST_CASE("basic classifications") {
  LieGroup su2(GroupSpec::parse("SU2"));
  CHECK(classify_type(su2, make(su2, InvolutionKind::Trivial), {1}) == FieldType::Quaternionic);
  CHECK(classify_type(su2, make(su2, InvolutionKind::Trivial), {2}) == FieldType::Real);
  CHECK(classify(su2, make(su2, InvolutionKind::Trivial), {1}).provenance == Provenance::Rule);

  LieGroup su3(GroupSpec::parse("SU3"));
  auto c = classify(su3, make(su3, InvolutionKind::Trivial), {1, 0});
  CHECK(c.type == FieldType::Complex);
  CHECK(c.twisted == Weight{0, 1});
  CHECK(classify_type(su3, make(su3, InvolutionKind::Trivial), {1, 1}) == FieldType::Real);

  for (int n = 2; n <= 6; ++n) {
    LieGroup g(GroupSpec::parse("SU" + std::to_string(n)));
    auto inv = make(g, InvolutionKind::SigmaR);
    for (int k = 1; k < n; ++k) CHECK(classify_type(g, inv, fundamental(g, k)) == FieldType::Real);
  }
  for (int n : {2, 4, 6}) {
    LieGroup g(GroupSpec::parse("SU" + std::to_string(n)));
    auto inv = make(g, InvolutionKind::SigmaH);
    for (int k = 1; k < n; ++k)
      CHECK(classify_type(g, inv, fundamental(g, k)) == (k % 2 ? FieldType::Quaternionic : FieldType::Real));
  }
  LieGroup u4(GroupSpec::parse("U4"));
  auto inv = make(u4, InvolutionKind::SigmaH);
  for (int k = 1; k <= 4; ++k)
    CHECK(classify_type(u4, inv, fundamental(u4, k)) == (k % 2 ? FieldType::Quaternionic : FieldType::Real));
}

TEST_CASE("twisted dual is an involution preserving dimension") {
  for (const char* spec : {"SU3", "SU4", "U3", "Sp2", "Spin8", "E6", "SU3xSU2"}) {
    LieGroup g(GroupSpec::parse(spec));
    const RootData& rd = g.root_data();
    std::vector<InvolutionKind> kinds{InvolutionKind::Trivial, InvolutionKind::SigmaR};
    for (auto kind : kinds) {
      if (kind == InvolutionKind::Trivial && rd.spec.factors[0].family == Family::U) continue;
      auto inv = make(g, kind);
      bool cataloged = std::none_of(inv.kinds.begin(), inv.kinds.end(),
                                    [](InvolutionKind k) { return k == InvolutionKind::Uncataloged; });
      if (!cataloged) continue;
      CHECK_NOTHROW(validate_involution(rd, inv));
      for (const auto& w : g.irreps_up_to(30)) {
        Weight t = twisted_dual(rd, inv, w);
        CHECK(is_dominant(rd, t));
        CHECK(twisted_dual(rd, inv, t) == w);
        CHECK(g.dimension(t) == g.dimension(w));
        auto c = classify(g, inv, w);
        CHECK((c.type == FieldType::Complex) == (t != w));
      }
    }
  }
}

TEST_CASE("fundamental splits") {
  LieGroup su3(GroupSpec::parse("SU3"));
  auto a = split_fundamentals(su3, make(su3, InvolutionKind::SigmaR));
  CHECK(a.r() == 2);
  CHECK(a.s() == 0);
  CHECK(a.t() == 0);
  auto b = split_fundamentals(su3, make(su3, InvolutionKind::Trivial));
  CHECK(b.r() == 0);
  CHECK(b.s() == 0);
  REQUIRE(b.t() == 1);
  CHECK(b.complex[0].highest == Weight{0, 1});
  CHECK(b.complex[0].twisted == Weight{1, 0});

  LieGroup su4(GroupSpec::parse("SU4"));
  auto c = split_fundamentals(su4, make(su4, InvolutionKind::SigmaH));
  REQUIRE(c.r() == 1);
  REQUIRE(c.s() == 2);
  CHECK(c.t() == 0);
  CHECK(c.real_index == std::vector<int>{1});
  CHECK(c.quaternionic_index == std::vector<int>{0, 2});

  LieGroup su2(GroupSpec::parse("SU2"));
  auto d = split_fundamentals(su2, make(su2, InvolutionKind::Trivial));
  CHECK(d.s() == 1);
  CHECK(d.r() + d.t() == 0);

  LieGroup sp2(GroupSpec::parse("Sp2"));
  auto e = split_fundamentals(sp2, make(sp2, InvolutionKind::Trivial));
  CHECK(e.quaternionic_index == std::vector<int>{0});
  CHECK(e.real_index == std::vector<int>{1});

  LieGroup su2su2(GroupSpec::parse("SU2xSU2"));
  auto f = split_fundamentals(su2su2, make(su2su2, InvolutionKind::Trivial));
  CHECK(f.s() == 2);

  LieGroup u3(GroupSpec::parse("U3"));
  CHECK_THROWS_AS(split_fundamentals(u3, make(u3, InvolutionKind::Trivial)), UnsupportedGroup);
  auto g = split_fundamentals(u3, make(u3, InvolutionKind::SigmaR));
  CHECK(g.r() == 3);
}

TEST_CASE("uncataloged involutions and overrides") {
  LieGroup e8(GroupSpec::parse("E8"));
  auto inv = make(e8, InvolutionKind::SigmaR);
  CHECK(inv.kinds[0] == InvolutionKind::Uncataloged);
  CHECK(classify_type(e8, inv, e8.zero_weight()) == FieldType::Real);
  CHECK_THROWS_AS(classify(e8, inv, fundamental(e8, 1)), Unclassifiable);
  inv.overrides[fundamental(e8, 1)] = FieldType::Real;
  auto c = classify(e8, inv, fundamental(e8, 1));
  CHECK(c.provenance == Provenance::Override);
  inv.overrides[fundamental(e8, 2)] = FieldType::Complex;
  CHECK_THROWS_AS(classify(e8, inv, fundamental(e8, 2)), PreconditionError);

  LieGroup su3(GroupSpec::parse("SU3"));
  CHECK_THROWS_AS(validate_involution(su3.root_data(), make(su3, InvolutionKind::SigmaH)), PreconditionError);
  CHECK_THROWS_AS(validate_involution(e8.root_data(), make(e8, InvolutionKind::SigmaH)), PreconditionError);

  // override beats the rule
  LieGroup su2(GroupSpec::parse("SU2"));
  auto t = make(su2, InvolutionKind::Trivial);
  t.overrides[{1}] = FieldType::Real;
  CHECK(classify_type(su2, t, {1}) == FieldType::Real);
}

TEST_CASE("matrix oracle on the defining representation of SU2") {
  LieGroup su2(GroupSpec::parse("SU2"));
  const RootData& rd = su2.root_data();
  auto repr = realize(rd, {1});
  REQUIRE(repr);
  auto sr = matrix_oracle_type(*repr, *matrix_involution(rd, make(su2, InvolutionKind::SigmaR)));
  CHECK(sr.type == FieldType::Real);
  CHECK(sr.residual < 1e-9);
  auto tr = matrix_oracle_type(*repr, *matrix_involution(rd, make(su2, InvolutionKind::Trivial)));
  CHECK(tr.type == FieldType::Quaternionic);
  CHECK(tr.scalar < 0);

  // a non-self-conjugate representation has no intertwiner
  LieGroup su3(GroupSpec::parse("SU3"));
  auto r3 = realize(su3.root_data(), {1, 0});
  REQUIRE(r3);
  CHECK_THROWS_AS(matrix_oracle_type(*r3, *matrix_involution(su3.root_data(), make(su3, InvolutionKind::Trivial))),
                  OracleError);
}

TEST_CASE("realizations have the right dimension") {
  for (const char* spec : {"SU2", "SU3", "SU4", "SU5", "U3", "U4", "Sp1", "Sp2", "Sp3"}) {
    LieGroup g(GroupSpec::parse(spec));
    const RootData& rd = g.root_data();
    for (const auto& w : rd.fundamental_weights) {
      auto r = realize(rd, w);
      REQUIRE(r);
      CHECK(r->dim == g.dimension(w));
      CMatrix x = r->lie_algebra[0];
      CMatrix m = r->rep(unitary_exp(0.3 * x));
      CHECK((m * m.adjoint() - CMatrix::Identity(r->dim, r->dim)).norm() < 1e-10);
    }
  }
  LieGroup su3(GroupSpec::parse("SU3"));
  auto sym = realize(su3.root_data(), {3, 0});
  REQUIRE(sym);
  CHECK(sym->dim == 10);
}

TEST_CASE("oracle agrees with the catalog rules") {
  for (const char* spec : {"SU2", "SU3", "SU4", "SU5", "Sp1", "Sp2", "Sp3", "U2", "U4"}) {
    LieGroup g(GroupSpec::parse(spec));
    const RootData& rd = g.root_data();
    for (auto kind : {InvolutionKind::Trivial, InvolutionKind::SigmaR, InvolutionKind::SigmaH}) {
      auto inv = make(g, kind);
      try {
        validate_involution(rd, inv);
      } catch (const PreconditionError&) {
        continue;
      }
      auto mi = matrix_involution(rd, inv);
      if (!mi) continue;
      std::vector<Weight> weights = rd.fundamental_weights;
      if (rd.spec.factors[0].family != Family::U) {
        Weight two = rd.fundamental_weights[0];
        for (auto& x : two) x *= 2;
        weights.push_back(two);
      }
      for (const auto& w : weights) {
        if (twisted_dual(rd, inv, w) != w) continue;
        auto rule = catalog_type(rd, inv, w);
        REQUIRE(rule);
        auto repr = realize(rd, w);
        REQUIRE(repr);
        auto res = matrix_oracle_type(*repr, *mi, 11);
        INFO(spec, " ", to_string(kind), " ", weight_to_string(w));
        CHECK(res.type == *rule);
        CHECK(res.residual < 1e-9);
      }
    }
  }
}

namespace {

// Multiplicity of the trivial representation in Alt^2 V, from the character
// (chi^2 - psi^2 chi) / 2 peeled into irreducibles by highest weight.
std::int64_t invariants_in_alt2(const LieGroup& g, const Weight& w) {
  const RootData& rd = g.root_data();
  FormalCharacter chi = g.character(w), alt;
  for (const auto& [a, ma] : chi)
    for (const auto& [b, mb] : chi) {
      Weight s(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
      alt[s] += ma * mb;
    }
  for (const auto& [a, ma] : chi) {
    Weight s(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) s[i] = 2 * a[i];
    alt[s] -= ma;
  }
  for (auto& [k, m] : alt) {
    REQUIRE(m % 2 == 0);
    m /= 2;
  }
  while (true) {
    const Weight* top = nullptr;
    for (const auto& [k, m] : alt)
      if (m != 0 && (!top || pairing(k, rd.height) > pairing(*top, rd.height))) top = &k;
    if (!top || *top == g.zero_weight()) return top ? alt[*top] : 0;
    Weight hw = *top;
    std::int64_t m = alt[hw];
    REQUIRE(is_dominant(rd, hw));
    for (const auto& [k, mk] : g.character(hw)) alt[k] -= m * mk;
  }
}

}  // namespace

TEST_CASE("Frobenius-Schur rule agrees with invariants in the exterior square") {
  for (const char* spec : {"SU2", "SU4", "Sp2", "Sp3", "G2", "Spin7", "Spin9", "Spin10", "F4"}) {
    LieGroup g(GroupSpec::parse(spec));
    auto inv = make(g, InvolutionKind::Trivial);
    for (const auto& w : g.irreps_up_to(spec == std::string("F4") ? 30 : 60)) {
      if (g.dual(w) != w) continue;
      INFO(spec, " ", weight_to_string(w));
      auto expect = classify_type(g, inv, w) == FieldType::Quaternionic ? 1 : 0;
      CHECK(invariants_in_alt2(g, w) == expect);
    }
  }
}
