#include "krg/poincare.hpp"

#include <sstream>

namespace krg {

namespace {

PoincareTable empty_table() {
  PoincareTable t;
  for (int d = 1; d >= -6; --d) t.push_back({d, 0, 0});
  return t;
}

PoincareRow& row(PoincareTable& t, int degree) { return t[1 - canon_degree(degree)]; }

}  // namespace

PoincareTable poincare_table(const KRPresentation& p, std::int64_t bound, PoincareOptions opt) {
  const TypeContext& ctx = p.context();
  auto irreps = ctx.group().irreps_up_to(bound);
  std::vector<KRGCoeffPiece> pieces;
  for (int q = 0; q < 8; ++q) pieces.push_back(kr_g_pt_piece(ctx, irreps, -q));
  if (opt.drop_mu_shifted_h)
    std::erase_if(pieces[0].free, [](const auto& e) { return e.first.type == FieldType::Quaternionic; });
  PoincareTable out = empty_table();
  for (Mask m = 0; m < (Mask{1} << p.slot_count()); ++m) {
    int dm = p.mask_degree(m);
    for (int q = 0; q < 8; ++q) {
      row(out, dm - q).free_rank += pieces[q].free_rank();
      row(out, dm - q).torsion += pieces[q].torsion_rank();
    }
  }
  if (p.omega_form()) return out;
  // r-classes: rho over irreps, i mod 4, canonical patterns, lambda factors off the support
  const int t = p.split().t();
  const int base = p.split().r() + p.split().s();
  int patterns = 1;
  for (int k = 0; k < t; ++k) patterns *= 3;
  for (int pat = 0; pat < patterns; ++pat) {
    RClassIndex idx{{}, 0, std::vector<std::uint8_t>(t, 0), std::vector<std::uint8_t>(t, 0)};
    for (int k = 0, q = pat; k < t; ++k, q /= 3) {
      if (q % 3 == 1) idx.eps[k] = 1;
      if (q % 3 == 2) idx.nu[k] = 1;
    }
    if (!idx.canonical()) continue;
    Mask blocked = idx.support() << base;
    for (Mask m = 0; m < (Mask{1} << p.slot_count()); ++m) {
      if (m & blocked) continue;
      for (int i = 0; i < 4; ++i) {
        idx.i = i;
        row(out, p.mask_degree(m) + idx.degree()).free_rank += static_cast<std::int64_t>(irreps.size());
      }
    }
  }
  return out;
}

PoincareTable nonequivariant_table(const KRPresentation& p) {
  PoincareTable out = empty_table();
  for (Mask m = 0; m < (Mask{1} << p.slot_count()); ++m) {
    int dm = p.mask_degree(m);
    for (int q = 0; q < 8; ++q) {
      auto [f, tor] = kr_pt_pattern(-q);
      row(out, dm - q).free_rank += f;
      row(out, dm - q).torsion += tor;
    }
  }
  return out;
}

PoincareTable structure_table(const KRPresentation& p, std::int64_t bound) {
  const TypeContext& ctx = p.context();
  std::int64_t real = 0, quat = 0, pairs = 0;
  for (const auto& w : ctx.group().irreps_up_to(bound)) {
    IrrepClass c = ctx.info(w);
    if (c.type == FieldType::Real) ++real;
    else if (c.type == FieldType::Quaternionic) ++quat;
    else if (ctx.representative(w) == w) ++pairs;
  }
  PoincareTable base = nonequivariant_table(p);
  PoincareTable out = empty_table();
  for (const auto& r : base) {
    row(out, r.degree).free_rank += real * r.free_rank;
    row(out, r.degree).torsion += real * r.torsion;
    row(out, r.degree - 4).free_rank += quat * r.free_rank;
    row(out, r.degree - 4).torsion += quat * r.torsion;
  }
  const int n = p.bz().generator_count();
  for (Mask m = 0; m < (Mask{1} << n); ++m)
    for (int j = 0; j < 4; ++j) row(out, BZPresentation::degree(m, j)).free_rank += pairs;
  return out;
}

std::string to_string(const PoincareTable& t) {
  std::ostringstream os;
  for (const auto& r : t) os << r.degree << ": " << r.free_rank << " free, " << r.torsion << " Z/2\n";
  return os.str();
}

}  // namespace krg
