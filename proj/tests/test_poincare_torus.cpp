#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "krg/error.hpp"
#include "krg/poincare.hpp"
#include "krg/torus.hpp"

using namespace krg;

namespace {

KRPresentation make(const char* group, InvolutionKind kind) {
  LieGroup g(GroupSpec::parse(group));
  return KRPresentation(TypeContext(g, Involution::uniform(g.root_data(), kind)), 8);
}

PoincareRow at(const PoincareTable& t, int d) {
  for (const auto& r : t)
    if (r.degree == d) return r;
  return {};
}

using Poly = std::map<std::vector<std::int64_t>, std::int64_t>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      auto e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      out[e] += ca * cb;
    }
  std::erase_if(out, [](const auto& p) { return p.second == 0; });
  return out;
}

// d sigma_k / d e_j: sum over |J| = k with j in J of e^{J - j}.
Poly jacobian_entry(int n, int k, int j) {
  Poly out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (__builtin_popcount(mask) != k || !(mask >> j & 1)) continue;
    std::vector<std::int64_t> e(n);
    for (int i = 0; i < n; ++i) e[i] = (mask >> i & 1) && i != j;
    out[e] += 1;
  }
  return out;
}

// Jacobian determinant of the elementary symmetric polynomials, by permutation expansion.
Poly jacobian_det(int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Poly out;
  do {
    int inv = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) inv += perm[a] > perm[b];
    Poly term{{std::vector<std::int64_t>(n, 0), inv % 2 ? -1 : 1}};
    for (int k = 0; k < n; ++k) term = poly_mul(term, jacobian_entry(n, k + 1, perm[k]));
    for (const auto& [e, c] : term) out[e] += c;
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::erase_if(out, [](const auto& p) { return p.second == 0; });
  return out;
}

}  // namespace

TEST_CASE("graded ranks of the golden cases") {
  for (auto [group, kind] : {std::pair{"SU3", InvolutionKind::SigmaR}, std::pair{"SU2", InvolutionKind::Trivial},
                             std::pair{"SU4", InvolutionKind::SigmaH}, std::pair{"Sp2", InvolutionKind::Trivial}}) {
    INFO(group);
    auto p = make(group, kind);
    for (std::int64_t bound : {1, 5, 10, 30}) {
      CHECK(poincare_table(p, bound) == structure_table(p, bound));
      bool has_h = false;
      for (const auto& w : p.context().group().irreps_up_to(bound))
        has_h |= p.context().info(w).type == FieldType::Quaternionic;
      CHECK((poincare_table(p, bound, {.drop_mu_shifted_h = true}) == structure_table(p, bound)) == !has_h);
    }
  }
  // SU(2), irreps V0..V3: V0, V2 real, V1, V3 quaternionic; monomials 1 and delta_H
  auto su2 = make("SU2", InvolutionKind::Trivial);
  auto t = poincare_table(su2, 4);
  CHECK(at(t, 0) == PoincareRow{0, 4, 2});   // R(1,V0), R(1,V2), H(mu,V1), H(mu,V3); H(eta,V)*delta_H
  CHECK(at(t, -3) == PoincareRow{-3, 4, 0});  // delta_H times R(1), H(mu)
  CHECK(at(t, -1) == PoincareRow{-1, 0, 4});  // R(eta,V0), R(eta,V2), H(eta^2,V1)*delta_H, H(eta^2,V3)*delta_H
  CHECK(at(t, 1) == PoincareRow{1, 4, 0});    // delta_H times R(mu), H(1)
  auto ne = nonequivariant_table(su2);
  CHECK(at(ne, 0) == PoincareRow{0, 1, 0});
  CHECK(at(ne, -3) == PoincareRow{-3, 1, 0});
  CHECK(at(ne, -4) == PoincareRow{-4, 1, 1});
}

TEST_CASE("torus restrictions and the Weyl denominator") {
  // n = 2 by hand: d(e1 + e2) d(e1 e2) = (e1 - e2) e1 e2 delta1 delta2
  TorusElement two;
  two.add(0b11, {2, 1}, 1);
  two.add(0b11, {1, 2}, -1);
  CHECK(torus_top_form(2, InvolutionKind::SigmaR) == two);
  CHECK(torus_top_form(2, InvolutionKind::SigmaH) == two);
  CHECK(weyl_denominator_form(2) == two);

  for (int n = 1; n <= 4; ++n) {
    INFO(n);
    TorusElement oracle;
    for (const auto& [e, c] : jacobian_det(n)) {
      auto shifted = e;
      for (auto& x : shifted) ++x;
      oracle.add((Mask{1} << n) - 1, shifted, c);
    }
    TorusElement top = torus_top_form(n, InvolutionKind::SigmaR);
    CHECK(top == oracle);
    CHECK(top == weyl_denominator_form(n));
    CHECK(torus_top_form(n, InvolutionKind::SigmaR, true) == top);
    for (int k = 1; k <= n; ++k) {
      TorusElement x = torus_restriction_un(n, FieldType::Real, k, InvolutionKind::SigmaR);
      CHECK(torus_multiply(x, x).is_zero());
    }
  }
  CHECK_THROWS_AS(torus_restriction_un(4, FieldType::Real, 1, InvolutionKind::SigmaH), PreconditionError);
  CHECK_THROWS_AS(torus_restriction_un(3, FieldType::Real, 1, InvolutionKind::SigmaH), PreconditionError);
  CHECK_THROWS_AS(torus_restriction_un(2, FieldType::Real, 1, InvolutionKind::Trivial), UnsupportedGroup);
  CHECK_NOTHROW(torus_restriction_un(4, FieldType::Quaternionic, 3, InvolutionKind::SigmaH));
}
