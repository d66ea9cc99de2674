// Command-line front end: build a presentation, print it, or run check suites.
//
// Exit codes: 0 ok, 2 bad spec, 3 unclassifiable representation,
// 4 internal invariant violation, 5 a selected check failed.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "krg/error.hpp"
#include "krg/serialize.hpp"

namespace {

using namespace krg;

struct JobSpec {
  std::string group;
  std::string involution;  // empty: sigmaR on U(n) factors, trivial elsewhere
  std::string override_file;
  std::string format = "json";
  std::string suite = "fast";
  std::string fixture;  // negative controls: none, square, abar, drop-mu
  std::int64_t truncate = 50;
  std::uint64_t seed = 7;
  std::string out;
  bool timings = false;
};

InvolutionKind parse_kind(const std::string& s) {
  if (s == "trivial") return InvolutionKind::Trivial;
  if (s == "sigmaR") return InvolutionKind::SigmaR;
  if (s == "sigmaH") return InvolutionKind::SigmaH;
  throw PreconditionError("unknown involution '" + s + "' (expected trivial, sigmaR or sigmaH)");
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw PreconditionError(path + ": " + e.what());
  }
}

Involution build_involution(const JobSpec& spec, const RootData& rd) {
  std::vector<InvolutionKind> kinds;
  std::string table = spec.override_file;
  if (spec.involution.empty()) {
    for (const auto& f : rd.spec.factors)
      kinds.push_back(f.family == Family::U ? InvolutionKind::SigmaR : InvolutionKind::Trivial);
  } else if (std::filesystem::is_regular_file(spec.involution)) {
    // a bare override table: every factor is user defined
    kinds.assign(rd.factor_count(), InvolutionKind::Uncataloged);
    table = spec.involution;
  } else {
    std::stringstream ss(spec.involution);
    for (std::string item; std::getline(ss, item, ',');) kinds.push_back(parse_kind(item));
    if (kinds.size() == 1 && rd.factor_count() > 1) kinds.assign(rd.factor_count(), kinds[0]);
  }
  Involution inv = Involution::per_factor(rd, kinds);
  validate_involution(rd, inv);
  if (!table.empty()) load_overrides(read_json(table), rd, inv);
  return inv;
}

KRPresentation build(const JobSpec& spec) {
  LieGroup g(GroupSpec::parse(spec.group));
  Involution inv = build_involution(spec, g.root_data());
  if (spec.truncate < 1) throw PreconditionError("--truncate must be positive");
  KRPresentation p(TypeContext(g, inv), spec.truncate, spec.fixture == "abar" ? +1 : -1);
  if (spec.fixture == "square") {
    int lambda = -1;
    for (int k = 0; k < p.slot_count(); ++k)
      if (p.slot(k).kind == GenKind::Lambda) lambda = k;
    if (p.slot_count() == 0) throw PreconditionError("fixture 'square' needs an exterior generator");
    p.set_square(0, lambda >= 0 ? p.gen(lambda) : p.unit());
  }
  return p;
}

void emit(const JobSpec& spec, const std::string& text) {
  if (spec.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(spec.out, std::ios::binary);
  if (!f) throw PreconditionError("cannot write " + spec.out);
  f << text;
}

int run_compute(const JobSpec& spec) {
  KRPresentation p = build(spec);
  emit(spec, spec.format == "json" ? presentation_json(p).dump(2) + "\n" : presentation_text(p));
  return 0;
}

int run_verify(const JobSpec& spec) {
  KRPresentation p = build(spec);
  VerifyOptions opt;
  opt.seed = spec.seed;
  opt.module_bound = spec.truncate;
  opt.module_fixture.drop_mu_shifted_h = spec.fixture == "drop-mu";
  auto results = run_suite(p, parse_suite(spec.suite), opt);
  std::string group = p.context().root_data().spec.to_string();
  if (spec.format == "json")
    emit(spec, report_json(group, p.context().involution().name, results, spec.seed, spec.timings).dump(2) + "\n");
  else
    emit(spec, report_text(results, spec.timings));
  for (const auto& r : results)
    if (!r.ok()) return 5;
  return 0;
}

void add_common(CLI::App* cmd, JobSpec& spec) {
  cmd->add_option("--group", spec.group, "group, e.g. SU3, Sp2, SU2xSU2, U3")->required();
  cmd->add_option("--involution", spec.involution,
                  "trivial, sigmaR or sigmaH (comma list per factor), or an override table");
  cmd->add_option("--override", spec.override_file, "JSON table of representation types")->check(CLI::ExistingFile);
  cmd->add_option("--format", spec.format)->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--truncate", spec.truncate, "irrep dimension bound D")->capture_default_str();
  cmd->add_option("--seed", spec.seed)->capture_default_str();
  cmd->add_option("--out", spec.out, "write to FILE instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Real equivariant K-theory presentations of compact Lie groups"};
  app.require_subcommand(1);
  JobSpec spec;
  auto* compute = app.add_subcommand("compute", "print the presentation");
  auto* verify = app.add_subcommand("verify", "run a check suite and print the report");
  add_common(compute, spec);
  add_common(verify, spec);
  verify->add_option("--suite", spec.suite)->check(CLI::IsMember({"none", "fast", "all", "weyl"}));
  verify->add_flag("--timings", spec.timings, "include elapsed times (output is then not reproducible)");
  verify->add_option("--fixture", spec.fixture, "negative control")
      ->check(CLI::IsMember({"square", "abar", "drop-mu"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    return compute->parsed() ? run_compute(spec) : run_verify(spec);
  } catch (const Unclassifiable& e) {
    std::cerr << "error: " << e.what() << " (--override FILE)\n";
    return 3;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedGroup& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
