// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "krg/coefficients.hpp"
#include "krg/matrix_oracle.hpp"
#include "krg/serialize.hpp"

using namespace krg;

namespace {

using Clock = std::chrono::steady_clock;

struct Case {
  const char* group;
  InvolutionKind kind;
};

const Case kGolden[] = {{"SU3", InvolutionKind::SigmaR},
                        {"SU2", InvolutionKind::Trivial},
                        {"SU4", InvolutionKind::SigmaH},
                        {"Sp2", InvolutionKind::Trivial}};

TypeContext context(const char* group, InvolutionKind kind) {
  LieGroup g(GroupSpec::parse(group));
  return TypeContext(g, Involution::uniform(g.root_data(), kind));
}

KRPresentation make(const Case& c, std::int64_t truncation = 50) {
  return KRPresentation(context(c.group, c.kind), truncation);
}

std::string label(const Case& c) { return std::string(c.group) + " " + to_string(c.kind); }

double ms_since(Clock::time_point t) { return std::chrono::duration<double, std::milli>(Clock::now() - t).count(); }

// A criterion body returns an empty string on success, otherwise the first problem found.
// `detail` collects a short summary for the report line.
using Body = std::function<std::string(std::string& detail)>;

int failures = 0;

void run(int number, const char* title, const Body& body) {
  std::string detail, problem;
  auto start = Clock::now();
  try {
    problem = body(detail);
  } catch (const std::exception& e) {
    problem = std::string("exception: ") + e.what();
  }
  double ms = ms_since(start);
  bool ok = problem.empty();
  failures += !ok;
  std::printf("criterion %2d %s  %s (%.0f ms)%s%s\n", number, ok ? "PASS" : "FAIL", title, ms,
              detail.empty() ? "" : ": ", detail.c_str());
  if (!ok) std::printf("             %s\n", problem.c_str());
  std::fflush(stdout);
}

std::string omega_form(std::string& detail) {
  for (const auto& c : kGolden) {
    auto start = Clock::now();
    KRPresentation p = make(c);
    const auto& split = p.split();
    if (!p.omega_form()) return label(c) + " is not flagged omega-form";
    int fundamentals = static_cast<int>(p.context().root_data().fundamental_weights.size());
    if (p.slot_count() != fundamentals) return label(c) + ": generator count differs from the rank";
    for (int k = 0; k < p.slot_count(); ++k) {
      const Generator& g = p.slot(k);
      int want = g.payload.type == FieldType::Real ? 1 : g.payload.type == FieldType::Quaternionic ? -3 : 99;
      if (g.degree != want) return label(c) + ": " + g.name + " has degree " + std::to_string(g.degree);
      if (!p.square(k).is_zero()) return label(c) + ": " + g.name + " does not square to zero";
    }
    double ms = ms_since(start);
    if (ms > 5000) return label(c) + " took " + std::to_string(ms) + " ms";
    detail += (detail.empty() ? "" : ", ") + label(c) + " r=" + std::to_string(split.r()) +
              " s=" + std::to_string(split.s());
  }
  return "";
}

std::string typing(std::string& detail) {
  int checked = 0;
  for (int n = 2; n <= 5; ++n) {
    std::string group = "SU" + std::to_string(n);
    TypeContext ctx = context(group.c_str(), InvolutionKind::SigmaR);
    const auto& fw = ctx.root_data().fundamental_weights;
    for (std::size_t k = 0; k < fw.size(); ++k, ++checked)
      if (ctx.info(fw[k]).type != FieldType::Real) return group + " sigmaR: exterior power " + std::to_string(k + 1) + " is not real";
  }
  for (int m = 1; m <= 2; ++m) {
    std::string group = "SU" + std::to_string(2 * m);
    TypeContext ctx = context(group.c_str(), InvolutionKind::SigmaH);
    const auto& fw = ctx.root_data().fundamental_weights;
    for (std::size_t k = 0; k < fw.size(); ++k, ++checked) {
      FieldType want = (k + 1) % 2 ? FieldType::Quaternionic : FieldType::Real;
      if (ctx.info(fw[k]).type != want) return group + " sigmaH: exterior power " + std::to_string(k + 1) + " has the wrong type";
    }
  }
  detail = std::to_string(checked) + " exterior powers";
  return "";
}

std::string fs_vs_oracle(std::string& detail) {
  int compared = 0;
  double worst = 0;
  for (std::string group : {"SU2", "SU3", "SU4", "SU5", "Sp1", "Sp2", "Sp3"}) {
    LieGroup g(GroupSpec::parse(group));
    const RootData& rd = g.root_data();
    Involution inv = Involution::trivial(rd);
    auto mi = matrix_involution(rd, inv);
    if (!mi) return group + ": no matrix involution";
    for (const auto& w : rd.fundamental_weights) {
      if (dual_highest_weight(rd, w) != w) continue;
      auto real = realize(rd, w);
      if (!real) return group + " " + weight_to_string(w) + ": no matrix realization";
      OracleResult o = matrix_oracle_type(*real, *mi, 7);
      ++compared;
      worst = std::max(worst, o.residual);
      if (o.residual >= 1e-9) return group + " " + weight_to_string(w) + ": residual " + std::to_string(o.residual);
      if (o.type != fs_rule_type(rd, w))
        return group + " " + weight_to_string(w) + ": rule says " + to_string(fs_rule_type(rd, w)) + ", oracle says " +
               to_string(o.type);
    }
  }
  std::ostringstream os;
  os << compared << " self-dual fundamentals, worst residual " << worst;
  detail = os.str();
  return "";
}

std::string bz_ranks(std::string& detail) {
  BZPresentation su3(context("SU3", InvolutionKind::Trivial));
  if (su3.exterior_ranks() != std::vector<std::int64_t>{1, 2, 1}) return "SU3 exterior ranks are not (1,2,1)";
  BZPresentation su2(context("SU2", InvolutionKind::Trivial));
  if (su2.augmented_rank() != 2) return "K(SU2) has rank " + std::to_string(su2.augmented_rank());
  detail = "SU3 ranks (1,2,1), K(SU2) rank 2";
  return "";
}

std::string leibniz(std::string& detail) {
  VerifyOptions opt;
  opt.bound = 15;
  for (const auto& c : kGolden) {
    CheckResult r = verify_leibniz(make(c, 15), opt);
    if (r.status != CheckStatus::Pass) return label(c) + ": " + r.witness;
  }
  // delta(V (x) V) = 2 V delta(V) = delta(V2) on SU(2), both sides of the realification
  KRPresentation su2 = make({"SU2", InvolutionKind::Trivial}, 15);
  const BZPresentation& bz = su2.bz();
  BZElement k_side = bz.multiply(bz.scalar(KGScalar::term(0, {1}, 2)), bz.generator(0));
  if (bz.delta_lift(Weight{2}) != k_side) return "SU2: delta(V2) != 2 V delta(V) on the K side";
  KRElement kr_side = 2 * su2.multiply(su2.scalar(su2.evaluate({1})), su2.gen(0));
  if (su2.delta_lift(Weight{2}) != kr_side) return "SU2: delta(V2) != 2 V delta(V) on the KR side";
  // delta(abar gamma) = -delta(twisted dual of gamma) on every complex pair
  int pairs = 0;
  for (const char* group : {"SU3", "SU4", "SU5", "SU3xSU3"}) {
    KRPresentation p(context(group, InvolutionKind::Trivial), 15);
    if (CheckResult r = verify_leibniz(p, opt); r.status != CheckStatus::Pass) return std::string(group) + ": " + r.witness;
    for (const auto& g : p.split().complex_index) {
      if (p.bz().abar_generator(g) != -1 * p.bz().generator(p.bz().partner(g)))
        return std::string(group) + ": delta(abar gamma) rule fails";
      ++pairs;
    }
  }
  detail = "bound 15, delta(V2) = 2V delta(V) on SU2, " + std::to_string(pairs) + " complex pairs";
  return "";
}

std::string relation_table(std::string& detail) {
  KRPresentation p(context("SU3", InvolutionKind::Trivial), 50);
  const Weight zero = p.context().group().zero_weight();
  for (int k = 0; k < p.slot_count(); ++k)
    if (p.slot(k).kind == GenKind::Lambda && !p.multiply(p.gen(k), p.gen(k)).is_zero()) return "lambda^2 != 0";
  auto listed = p.listed_rclasses();
  if (listed.size() < 20) return "fewer than 20 listed r-classes";
  KRElement eta = p.scalar(KRGScalar::term(TermKind::R, static_cast<int>(KRBasis::Eta), zero));
  KRElement mu = p.scalar(KRGScalar::term(TermKind::R, static_cast<int>(KRBasis::Mu), zero));
  int zero_case = 0, eta2_case = 0;
  for (std::size_t n = 0; n < 20; ++n) {
    const RClassIndex& idx = listed[n];
    KRElement r = p.rclass(idx);
    if (!p.multiply(r, eta).is_zero()) return idx.to_string() + " * eta != 0";
    RClassIndex shifted = idx;
    shifted.i = (idx.i + 2) % 4;
    if (p.multiply(r, mu) != 2 * p.rclass(shifted)) return idx.to_string() + " * mu != 2 r_{i+2}";
    RSquare sq = p.rclass_square(idx);
    int d = idx.degree();
    RSquare::Case want = (d == -1 || d == -5) ? RSquare::Case::Eta2
                         : (d == -2 || d == -6) ? RSquare::Case::Mu
                                                : RSquare::Case::Zero;
    if (sq.which != want) return idx.to_string() + ": square case does not follow the degree";
    if (p.multiply(r, r) != sq.value) return idx.to_string() + ": tabulated square differs from the product";
    zero_case += sq.which == RSquare::Case::Zero;
    eta2_case += sq.which == RSquare::Case::Eta2;
  }
  // the mu case needs two complex pairs
  KRPresentation q(context("SU3xSU3", InvolutionKind::Trivial), 3);
  RClassIndex idx{q.context().group().zero_weight(), 0, {1, 1}, {0, 0}};
  RSquare sq = q.rclass_square(idx);
  if (sq.which != RSquare::Case::Mu) return "SU3xSU3 " + idx.to_string() + " is not in the mu case";
  if (q.multiply(q.rclass(idx), q.rclass(idx)) != sq.value) return "SU3xSU3: mu-case square differs from the product";
  detail = std::to_string(zero_case) + " zero, " + std::to_string(eta2_case) + " eta^2 cases on SU3; SU3xSU3 " +
           idx.to_string() + " mu case, sign " + std::to_string(sq.sign) + " from " +
           std::to_string(sq.transpositions) + " transposition(s)";
  return "";
}

std::string module_iso(std::string& detail) {
  auto start = Clock::now();
  for (const auto& c : kGolden) {
    CheckResult r = verify_module_iso(make(c, 30), 30);
    if (r.status != CheckStatus::Pass) return label(c) + ": " + r.witness;
  }
  double ms = ms_since(start);
  if (ms > 30000) return "took " + std::to_string(ms) + " ms";
  detail = "D = 30, 4 golden cases";
  return "";
}

std::string odd_squares(std::string& detail) {
  VerifyOptions opt;
  opt.samples = 100;
  for (const auto& c : kGolden) {
    CheckResult r = verify_squares(make(c, 15), opt);
    if (r.status != CheckStatus::Pass) return label(c) + ": " + r.witness;
  }
  detail = "100 + 100 samples per golden case, seed " + std::to_string(opt.seed);
  return "";
}

std::string coefficients(std::string& detail) {
  for (int i = 0; i < 8; ++i) {
    KCoeff b = KCoeff::beta_power(i % 4);
    if (c_coeff(r_coeff(b)) != b + b.conj()) return "c(r(beta^" + std::to_string(i) + ")) != 1 + conj";
  }
  // projection formula on the full basis of both rings
  for (KRBasis x : kKRBasis)
    for (int i = 0; i < 4; ++i) {
      KRCoeff a = KRCoeff::basis(x);
      KCoeff y = KCoeff::beta_power(i);
      if (r_coeff(c_coeff(a) * y) != a * r_coeff(y)) return "projection formula fails on the coefficient basis";
    }
  KRCoeff eta = KRCoeff::basis(KRBasis::Eta), mu = KRCoeff::basis(KRBasis::Mu);
  if (!(eta * eta * eta).is_zero()) return "eta^3 != 0";
  if (!(2 * eta).is_zero()) return "2 eta != 0";
  if (!(eta * mu).is_zero()) return "eta mu != 0";
  if (mu * mu != KRCoeff::scalar(4)) return "mu^2 != 4";
  if (eta * eta != r_coeff(KCoeff::beta_power(1)) || (eta * eta).is_zero()) return "eta^2 != r(beta)";
  for (const auto& c : kGolden) {
    CheckResult r = verify_cr(make(c, 15));
    if (r.status != CheckStatus::Pass) return label(c) + ": " + r.witness;
  }
  detail = "point identities plus c/r on the golden presentations";
  return "";
}

std::string weyl(std::string& detail) {
  for (int n : {2, 3}) {
    auto start = Clock::now();
    CheckResult r = verify_weyl_denominator(n, InvolutionKind::SigmaR);
    if (r.status != CheckStatus::Pass) return "U" + std::to_string(n) + ": " + r.witness;
    if (ms_since(start) > 5000) return "U" + std::to_string(n) + " too slow";
  }
  detail = "U2, U3: top form = Vandermonde * e1..en * delta1..deltan, nonzero";
  return "";
}

std::string job_output(const Case& c, bool parallel) {
  KRPresentation p = make(c);
  VerifyOptions opt;
  opt.parallel = parallel;
  return presentation_json(p).dump(2) + report_json(c.group, to_string(c.kind), run_suite(p, Suite::Fast, opt), opt.seed).dump(2);
}

std::string determinism(std::string& detail) {
  for (const auto& c : kGolden) {
    std::string first = job_output(c, true);
    if (job_output(c, true) != first) return label(c) + ": two runs differ";
    if (job_output(c, false) != first) return label(c) + ": serial and parallel runs differ";
  }
  detail = "presentation and fast report, repeated and serial vs parallel";
  return "";
}

}  // namespace

int main() {
  run(1, "omega-form golden corpus", omega_form);
  run(2, "primitive generator typing", typing);
  run(3, "Frobenius-Schur rule vs matrix oracle", fs_vs_oracle);
  run(4, "K-side exterior ranks", bz_ranks);
  run(5, "derivation laws", leibniz);
  run(6, "relation table", relation_table);
  run(7, "module isomorphism ranks", module_iso);
  run(8, "odd elements square to zero", odd_squares);
  run(9, "coefficient identities", coefficients);
  run(10, "Weyl denominator", weyl);
  run(11, "determinism", determinism);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures ? 1 : 0;
}
