#include "krg/verifier.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <exception>
#include <optional>
#include <random>

#include "krg/error.hpp"
#include "krg/matrix_oracle.hpp"
#include "krg/torus.hpp"

namespace krg {

namespace {

using Clock = std::chrono::steady_clock;

// Evaluates f(0..n-1) and returns the lowest failing index with its witness.
template <class F>
std::optional<std::pair<int, std::string>> first_failure(int n, bool parallel, F f) {
  std::vector<std::optional<std::string>> res(n);
  std::exception_ptr error;
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
      try {
        res[i] = f(i);
      } catch (...) {
#pragma omp critical
        if (!error) error = std::current_exception();
      }
    }
  } else {
    for (int i = 0; i < n; ++i) res[i] = f(i);
  }
  if (error) std::rethrow_exception(error);
  for (int i = 0; i < n; ++i)
    if (res[i]) return std::make_pair(i, *res[i]);
  return std::nullopt;
}

struct Timer {
  CheckResult& r;
  Clock::time_point start = Clock::now();
  ~Timer() { r.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count(); }
};

void fail(CheckResult& r, std::string witness) {
  if (r.status == CheckStatus::Fail) return;
  r.status = CheckStatus::Fail;
  r.witness = std::move(witness);
}

KRElement random_combination(const std::vector<KRElement>& basis, std::mt19937_64& rng) {
  KRElement x;
  if (basis.empty()) return x;
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<int> coeff(1, 3), count(1, 3), sign(0, 1);
  for (int n = count(rng); n > 0; --n) x += (sign(rng) ? -1 : 1) * coeff(rng) * basis[pick(rng)];
  return x;
}

BZElement random_bz(const BZPresentation& bz, const std::vector<Weight>& irreps, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, irreps.size() - 1);
  std::uniform_int_distribution<Mask> mask(0, (Mask{1} << bz.generator_count()) - 1);
  std::uniform_int_distribution<int> j(0, 3), c(-2, 2);
  BZElement out;
  for (int i = 0; i < 3; ++i) out.add(mask(rng), KGScalar::term(j(rng), irreps[pick(rng)], c(rng)));
  return out;
}

// Degrees 0 and -4 with two or more pairs: the degree table and the projection formula disagree.
bool known_square_conflict(const RClassIndex& idx) {
  int d = idx.degree();
  return (d == 0 || d == -4) && popcount(idx.support()) >= 2;
}

std::vector<RClassIndex> capped(std::vector<RClassIndex> v, std::size_t n) {
  if (v.size() > n) v.resize(n);
  return v;
}

}  // namespace

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

std::vector<KRElement> homogeneous_basis(const KRPresentation& p, int degree, std::int64_t bound) {
  const TypeContext& ctx = p.context();
  degree = canon_degree(degree);
  auto irreps = ctx.group().irreps_up_to(bound);
  std::vector<KRGCoeffPiece> pieces;
  for (int q = 0; q < 8; ++q) pieces.push_back(kr_g_pt_piece(ctx, irreps, -q));
  std::vector<KRElement> out;
  const Mask all = Mask{1} << p.slot_count();
  for (Mask m = 0; m < all; ++m)
    for (const auto& piece : pieces) {
      if (canon_degree(p.mask_degree(m) + piece.degree) != degree) continue;
      for (const auto* list : {&piece.free_basis, &piece.torsion_basis})
        for (const auto& t : *list) {
          KRElement e;
          e.add(m, KRGScalar::term(t.kind, t.index, t.weight));
          out.push_back(e);
        }
    }
  const int base = p.split().r() + p.split().s();
  for (const auto& idx : p.listed_rclasses()) {
    if (ctx.group().dimension(idx.rho) > bound) continue;
    for (Mask m = 0; m < all; ++m) {
      if (m & (idx.support() << base)) continue;
      if (canon_degree(p.mask_degree(m) + idx.degree()) != degree) continue;
      KRElement e;
      e.add(m, idx, 1);
      out.push_back(e);
    }
  }
  return out;
}

CheckResult verify_squares(const KRPresentation& p, const VerifyOptions& opt) {
  CheckResult r{"squares", CheckStatus::Pass, "", opt.seed, 0, {}};
  Timer timer{r};
  for (int k = 0; k < p.slot_count(); ++k) {
    KRElement g = p.gen(k);
    KRElement got = p.multiply(g, g);
    if (got != p.square(k)) fail(r, p.slot(k).name + "^2 = " + p.to_string(got) + ", table says " + p.to_string(p.square(k)));
  }
  int conflicts = 0;
  auto listed = capped(p.listed_rclasses(), 48);
  auto bad = first_failure(static_cast<int>(listed.size()), opt.parallel, [&](int i) -> std::optional<std::string> {
    const RClassIndex& idx = listed[i];
    KRElement x = p.rclass(idx);
    KRElement got = p.multiply(x, x);
    KRElement table = p.rclass_square(idx).value;
    if (got == table || known_square_conflict(idx)) return std::nullopt;
    return idx.to_string() + "^2 = " + p.to_string(got) + ", table says " + p.to_string(table);
  });
  if (bad) fail(r, bad->second);
  for (const auto& idx : listed)
    if (known_square_conflict(idx)) ++conflicts;
  if (conflicts)
    r.notes.push_back(std::to_string(conflicts) +
                      " r-classes in degree 0 mod 4 with two or more pairs: table value 0, projection formula nonzero");

  std::mt19937_64 rng(opt.seed);
  std::vector<KRElement> samples;
  for (int d : {1, -3}) {
    auto basis = homogeneous_basis(p, d, 6);
    for (int i = 0; i < opt.samples; ++i) samples.push_back(random_combination(basis, rng));
  }
  auto odd = first_failure(static_cast<int>(samples.size()), opt.parallel, [&](int i) -> std::optional<std::string> {
    KRElement sq = p.multiply(samples[i], samples[i]);
    if (sq.is_zero()) return std::nullopt;
    return "sample " + std::to_string(i) + ": (" + p.to_string(samples[i]) + ")^2 = " + p.to_string(sq);
  });
  if (odd) fail(r, odd->second);
  r.notes.push_back(std::to_string(samples.size()) + " random elements of degree 1 and -3 squared");
  return r;
}

CheckResult verify_leibniz(const KRPresentation& p, const VerifyOptions& opt) {
  CheckResult r{"leibniz", CheckStatus::Pass, "", opt.seed, 0, {}};
  Timer timer{r};
  const TypeContext& ctx = p.context();
  const BZPresentation& bz = p.bz();
  auto irreps = ctx.group().irreps_up_to(opt.bound);
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t a = 0; a < irreps.size(); ++a)
    for (std::size_t b = a; b < irreps.size(); ++b) pairs.emplace_back(a, b);

  auto k_side = first_failure(static_cast<int>(pairs.size()), opt.parallel, [&](int i) -> std::optional<std::string> {
    const Weight &x = irreps[pairs[i].first], &y = irreps[pairs[i].second];
    BZElement lhs;
    for (const auto& [u, m] : ctx.group().tensor_decompose(x, y)) lhs += m * bz.delta_lift(u);
    BZElement rhs = bz.multiply(bz.scalar(KGScalar::term(0, x)), bz.delta_lift(y)) +
                    bz.multiply(bz.scalar(KGScalar::term(0, y)), bz.delta_lift(x));
    if (lhs == rhs) return std::nullopt;
    return "delta_G(" + weight_to_string(x) + " * " + weight_to_string(y) + ")";
  });
  if (k_side) fail(r, k_side->second);

  if (p.omega_form()) {
    auto cls = [&](const Weight& w) {
      return KRGScalar::term(ctx.info(w).type == FieldType::Real ? TermKind::R : TermKind::H, 0, w);
    };
    auto kr_side = first_failure(static_cast<int>(pairs.size()), opt.parallel, [&](int i) -> std::optional<std::string> {
      KRGScalar x = cls(irreps[pairs[i].first]), y = cls(irreps[pairs[i].second]);
      KRElement lhs = p.delta_scalar(multiply(ctx, x, y));
      KRElement rhs = p.multiply(p.scalar(x), p.delta_scalar(y)) + p.multiply(p.delta_scalar(x), p.scalar(y));
      if (lhs == rhs) return std::nullopt;
      return "delta(" + x.to_string() + " * " + y.to_string() + "): " + p.to_string(lhs) + " vs " + p.to_string(rhs);
    });
    if (kr_side) fail(r, kr_side->second);
    for (const auto& u : irreps) {
      int beta = ctx.info(u).type == FieldType::Real ? 3 : 1;
      BZElement want = bz.multiply(bz.scalar(KGScalar::term(beta, ctx.group().zero_weight())), bz.delta_lift(u));
      if (p.complexify(p.delta_lift(u)) != want) fail(r, "c(delta(" + weight_to_string(u) + ")) is not beta^k delta_G");
    }
    r.notes.push_back("KR-side derivation checked on " + std::to_string(pairs.size()) + " pairs");
  }

  // delta(abar rho) + delta(twisted dual of rho) = delta of a constant map = 0
  int complex_checked = 0;
  for (const auto& u : irreps) {
    IrrepClass c = ctx.info(u);
    if (c.type != FieldType::Complex) continue;
    BZElement dt = bz.delta_lift(c.twisted);
    BZElement abar = bz.abar_sign() * dt;
    if (!(abar + dt).is_zero())
      fail(r, "delta(abar " + weight_to_string(u) + ") != -delta(" + weight_to_string(c.twisted) + ")");
    ++complex_checked;
  }
  r.notes.push_back(std::to_string(pairs.size()) + " irrep pairs up to dimension " + std::to_string(opt.bound) + ", " +
                    std::to_string(complex_checked) + " complex-type irreps");
  return r;
}

CheckResult verify_module_iso(const KRPresentation& p, std::int64_t bound, PoincareOptions fixture) {
  CheckResult r{"module_iso", CheckStatus::Pass, "", 0, 0, {}};
  Timer timer{r};
  if (!p.omega_form()) {
    r.status = CheckStatus::Skipped;
    r.witness = "t > 0: ranks come from the normal-form basis only, no independent side";
    return r;
  }
  PoincareTable lhs = poincare_table(p, bound, fixture), rhs = structure_table(p, bound);
  for (std::size_t i = 0; i < lhs.size(); ++i)
    if (!(lhs[i] == rhs[i])) {
      fail(r, "degree " + std::to_string(lhs[i].degree) + ": " + std::to_string(lhs[i].free_rank) + " free + " +
                  std::to_string(lhs[i].torsion) + " Z/2 vs " + std::to_string(rhs[i].free_rank) + " free + " +
                  std::to_string(rhs[i].torsion) + " Z/2");
      break;
    }
  r.notes.push_back("irreps up to dimension " + std::to_string(bound));
  return r;
}

CheckResult verify_cr(const KRPresentation& p, const VerifyOptions& opt) {
  CheckResult r{"cr", CheckStatus::Pass, "", opt.seed, 0, {}};
  Timer timer{r};
  const TypeContext& ctx = p.context();
  const BZPresentation& bz = p.bz();
  auto irreps = ctx.group().irreps_up_to(6);
  std::mt19937_64 rng(opt.seed);
  std::vector<BZElement> zs;
  std::vector<KRElement> scalars;
  auto scalar_basis = homogeneous_basis(p, 0, 6);
  auto more = homogeneous_basis(p, -4, 6);
  scalar_basis.insert(scalar_basis.end(), more.begin(), more.end());
  std::erase_if(scalar_basis, [](const KRElement& e) { return !e.rpart.empty() || e.omega.begin()->first != 0; });
  for (int i = 0; i < opt.samples; ++i) {
    zs.push_back(random_bz(bz, irreps, rng));
    scalars.push_back(random_combination(scalar_basis, rng));
  }
  auto bad = first_failure(opt.samples, opt.parallel, [&](int i) -> std::optional<std::string> {
    const BZElement& z = zs[i];
    KRElement rz = p.realify(z);
    if (p.complexify(rz) != z + bz.tau(z)) return "c(r(z)) != z + tau(z) for z = " + bz.to_string(z);
    if (p.realify(bz.multiply(p.complexify(scalars[i]), z)) != p.multiply(scalars[i], rz))
      return "projection formula fails for a = " + p.to_string(scalars[i]);
    for (int k = 0; k < p.slot_count(); ++k)
      if (p.realify(bz.multiply(p.complexify(p.gen(k)), z)) != p.multiply(p.gen(k), rz))
        return "projection formula fails for " + p.slot(k).name;
    return std::nullopt;
  });
  if (bad) fail(r, bad->second);

  const Weight zero = ctx.group().zero_weight();
  KRElement eta = p.scalar(KRGScalar::term(TermKind::R, static_cast<int>(KRBasis::Eta), zero));
  KRElement mu = p.scalar(KRGScalar::term(TermKind::R, static_cast<int>(KRBasis::Mu), zero));
  auto listed = capped(p.listed_rclasses(), 24);
  for (const auto& idx : listed) {
    KRElement x = p.rclass(idx);
    if (!p.multiply(x, eta).is_zero()) fail(r, idx.to_string() + " * eta != 0");
    RClassIndex up = idx;
    up.i = (idx.i + 2) % 4;
    if (p.multiply(x, mu) != 2 * p.rclass(up)) fail(r, idx.to_string() + " * mu != 2 r_{i+2}");
  }

  std::vector<KRElement> gens;
  for (int k = 0; k < p.slot_count(); ++k) gens.push_back(p.gen(k));
  for (const auto& idx : capped(listed, 12)) gens.push_back(p.rclass(idx));
  for (const auto& g : gens)
    for (const auto& h : gens)
      if (p.complexify(p.multiply(g, h)) != bz.multiply(p.complexify(g), p.complexify(h)))
        fail(r, "c not multiplicative on " + p.to_string(g) + " * " + p.to_string(h));

  for (int k = 0; k < p.slot_count(); ++k) {
    BZElement cg = p.complexify(p.gen(k));
    if (bz.multiply(cg, cg) != p.complexify(p.square(k))) fail(r, "c does not carry the relation for " + p.slot(k).name + "^2");
  }
  for (const auto& idx : listed) {
    if (known_square_conflict(idx)) continue;
    BZElement cx = p.complexify(p.rclass(idx));
    if (bz.multiply(cx, cx) != p.complexify(p.rclass_square(idx).value))
      fail(r, "c does not carry the relation for " + idx.to_string() + "^2");
  }
  r.notes.push_back(std::to_string(opt.samples) + " random K-side elements, " + std::to_string(listed.size()) +
                    " r-classes");
  return r;
}

CheckResult verify_weyl_denominator(int n, InvolutionKind kind, bool parallel) {
  CheckResult r{"weyl_denominator", CheckStatus::Pass, "", 0, 0, {}};
  Timer timer{r};
  if (n < 1 || n > 4) {
    r.status = CheckStatus::Skipped;
    r.witness = "only U(n) with n <= 4";
    return r;
  }
  std::vector<TorusElement> images;
  for (int k = 1; k <= n; ++k) {
    FieldType f = kind == InvolutionKind::SigmaH && k % 2 ? FieldType::Quaternionic : FieldType::Real;
    images.push_back(torus_restriction_un(n, f, k, kind));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      TorusElement ab = torus_multiply(images[a], images[b]);
      TorusElement ba = torus_multiply(images[b], images[a]);
      for (auto& [key, c] : ba.terms) c = -c;
      if (ab != ba) fail(r, "images of generators " + std::to_string(a + 1) + ", " + std::to_string(b + 1) + " do not anticommute");
    }
  TorusElement top = torus_top_form(n, kind, parallel);
  TorusElement want = weyl_denominator_form(n);
  if (top.is_zero()) fail(r, "top form vanishes");
  else if (top != want) fail(r, "top form " + to_string(top) + " != " + to_string(want));
  r.notes.push_back("U(" + std::to_string(n) + ") " + to_string(kind));
  return r;
}

CheckResult verify_types(const TypeContext& ctx, std::int64_t bound, std::uint64_t seed) {
  CheckResult r{"types", CheckStatus::Pass, "", seed, 0, {}};
  Timer timer{r};
  const RootData& rd = ctx.root_data();
  auto mi = matrix_involution(rd, ctx.involution());
  int compared = 0;
  for (const auto& w : ctx.group().irreps_up_to(bound)) {
    IrrepClass c = ctx.info(w);
    if (c.type == FieldType::Complex || c.provenance != Provenance::Rule) continue;
    bool all_trivial = std::all_of(ctx.involution().kinds.begin(), ctx.involution().kinds.end(),
                                   [](InvolutionKind k) { return k == InvolutionKind::Trivial; });
    if (all_trivial && fs_rule_type(rd, w) != c.type) fail(r, "Frobenius-Schur parity disagrees at " + weight_to_string(w));
    if (!mi) continue;
    auto real = realize(rd, w);
    if (!real) continue;
    OracleResult o = matrix_oracle_type(*real, *mi, seed);
    ++compared;
    if (o.type != c.type)
      fail(r, weight_to_string(w) + ": rule says " + to_string(c.type) + ", oracle says " + to_string(o.type));
  }
  if (compared == 0 && r.status == CheckStatus::Pass) {
    r.status = CheckStatus::Skipped;
    r.witness = "no matrix realization in range";
  }
  r.notes.push_back(std::to_string(compared) + " irreps compared with the matrix oracle");
  return r;
}

Suite parse_suite(const std::string& s) {
  if (s == "none") return Suite::None;
  if (s == "fast") return Suite::Fast;
  if (s == "all") return Suite::All;
  if (s == "weyl") return Suite::Weyl;
  throw PreconditionError("unknown suite '" + s + "' (none, fast, all, weyl)");
}

std::vector<CheckResult> run_suite(const KRPresentation& p, Suite suite, const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  const RootData& rd = p.context().root_data();
  bool single_u = rd.spec.factors.size() == 1 && rd.spec.factors[0].family == Family::U;
  auto weyl = [&] {
    if (!single_u) {
      CheckResult r{"weyl_denominator", CheckStatus::Skipped, "group is not a single U(n)", 0, 0, {}};
      return r;
    }
    return verify_weyl_denominator(rd.spec.factors[0].n, p.context().involution().kinds[0], opt.parallel);
  };
  if (suite == Suite::None) return out;
  if (suite == Suite::Weyl) {
    out.push_back(weyl());
    return out;
  }
  out.push_back(verify_squares(p, opt));
  out.push_back(verify_leibniz(p, opt));
  out.push_back(verify_cr(p, opt));
  out.push_back(verify_module_iso(p, opt.module_bound, opt.module_fixture));
  if (single_u) out.push_back(weyl());
  if (suite == Suite::All) out.push_back(verify_types(p.context(), opt.bound, opt.seed));
  return out;
}

nlohmann::json to_json(const CheckResult& r, bool timings) {
  nlohmann::json j;
  j["name"] = r.name;
  j["status"] = to_string(r.status);
  j["witness"] = r.witness;
  j["seed"] = std::to_string(r.seed);
  j["notes"] = r.notes;
  if (timings) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

}  // namespace krg
