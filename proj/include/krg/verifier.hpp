#pragma once

// Executable checks over a presentation. Every randomized check draws its
// samples serially from a seeded generator, then evaluates them either
// serially or with OpenMP; both paths report the same witness.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "krg/poincare.hpp"
#include "krg/presentation.hpp"

namespace krg {

enum class CheckStatus { Pass, Fail, Skipped };

const char* to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string witness;  // first failing instance, or the reason for a skip
  std::uint64_t seed = 0;
  double elapsed_ms = 0;
  std::vector<std::string> notes;

  bool ok() const { return status != CheckStatus::Fail; }
};

struct VerifyOptions {
  std::uint64_t seed = 7;
  std::int64_t bound = 15;       // irreps used by the Leibniz check
  std::int64_t module_bound = 30;
  int samples = 100;
  bool parallel = true;
  PoincareOptions module_fixture;  // negative control for verify_module_iso
};

/// All elements of one pure degree built from small irreps and listed r-classes.
std::vector<KRElement> homogeneous_basis(const KRPresentation& p, int degree, std::int64_t bound);

CheckResult verify_squares(const KRPresentation& p, const VerifyOptions& opt = {});
CheckResult verify_leibniz(const KRPresentation& p, const VerifyOptions& opt = {});
CheckResult verify_module_iso(const KRPresentation& p, std::int64_t bound, PoincareOptions fixture = {});
CheckResult verify_cr(const KRPresentation& p, const VerifyOptions& opt = {});
/// n <= 4; kind is sigmaR or sigmaH.
CheckResult verify_weyl_denominator(int n, InvolutionKind kind, bool parallel = true);
/// Catalog and Frobenius-Schur rules against the matrix oracle, where a realization exists.
CheckResult verify_types(const TypeContext& ctx, std::int64_t bound, std::uint64_t seed = 7);

enum class Suite { None, Fast, All, Weyl };
Suite parse_suite(const std::string& s);

std::vector<CheckResult> run_suite(const KRPresentation& p, Suite suite, const VerifyOptions& opt = {});

nlohmann::json to_json(const CheckResult& r, bool timings = false);

}  // namespace krg
