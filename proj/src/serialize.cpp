#include "krg/serialize.hpp"

#include <sstream>

#include "krg/error.hpp"
#include "krg/poincare.hpp"

namespace krg {

namespace {

using ojson = nlohmann::ordered_json;

std::string dec(std::int64_t v) { return std::to_string(v); }

ojson weight_json(const Weight& w) {
  ojson out = ojson::array();
  for (auto c : w) out.push_back(dec(c));
  return out;
}

std::string bit_text(const std::vector<std::uint8_t>& bits) {
  std::string s;
  for (auto b : bits) s += b ? '1' : '0';
  return s;
}

ojson payload_json(const Generator& g) {
  ojson out;
  out["weight"] = weight_json(g.payload.highest);
  out["twisted"] = weight_json(g.payload.twisted);
  out["type"] = to_string(g.payload.type);
  if (g.rclass) {
    out["beta"] = dec(g.rclass->i);
    out["eps"] = bit_text(g.rclass->eps);
    out["nu"] = bit_text(g.rclass->nu);
  }
  return out;
}

}  // namespace

std::string text_label(const KRPresentation& p, const Generator& g) {
  if (g.kind == GenKind::RClass) {
    const RClassIndex& r = *g.rclass;
    return "r[" + weight_to_string(r.rho) + ";" + std::to_string(r.i) + ";" + bit_text(r.eps) + ";" +
           bit_text(r.nu) + "]";
  }
  int index = 1;
  for (int k = 0; k < g.slot; ++k) index += p.slot(k).kind == g.kind;
  switch (g.kind) {
    case GenKind::DeltaR: return "δ_R[φ" + std::to_string(index) + "]";
    case GenKind::DeltaH: return "δ_H[θ" + std::to_string(index) + "]";
    default: return "λ[" + std::to_string(index) + "]";
  }
}

ojson presentation_json(const KRPresentation& p) {
  const TypeContext& ctx = p.context();
  ojson out;
  out["group"] = ctx.group().root_data().spec.to_string();
  out["involution"] = ctx.involution().name;
  out["truncation"] = dec(p.truncation());
  out["generators"] = ojson::array();
  for (const auto& g : p.generators())
    out["generators"].push_back({{"name", g.name},
                                 {"kind", to_string(g.kind)},
                                 {"degree", dec(g.degree)},
                                 {"payload", payload_json(g)}});
  out["relations"] = ojson::array();
  for (const auto& r : p.relations())
    out["relations"].push_back({{"lhs", r.lhs}, {"rhs", p.to_string(r.rhs)}, {"provenance", r.provenance}});
  out["poincare"] = ojson::array();
  for (const auto& row : poincare_table(p, p.truncation()))
    out["poincare"].push_back(
        {{"degree", dec(row.degree)}, {"free_rank", dec(row.free_rank)}, {"torsion", dec(row.torsion)}});
  out["omega_form"] = p.omega_form();
  return out;
}

std::string presentation_text(const KRPresentation& p) {
  const TypeContext& ctx = p.context();
  std::ostringstream os;
  os << "group " << ctx.group().root_data().spec.to_string() << "\n";
  os << "involution " << ctx.involution().name << "\n";
  os << "omega_form " << (p.omega_form() ? "true" : "false") << "\n";
  os << "truncation " << p.truncation() << "\n";
  os << "generators\n";
  for (const auto& g : p.generators())
    os << "  " << text_label(p, g) << "  deg " << g.degree << "  " << weight_to_string(g.payload.highest) << " "
       << to_string(g.payload.type) << "\n";
  os << "relations\n";
  for (const auto& r : p.relations())
    os << "  " << r.lhs << " = " << p.to_string(r.rhs) << "  [" << r.provenance << "]\n";
  os << "poincare\n" << to_string(poincare_table(p, p.truncation()));
  return os.str();
}

ojson report_json(const std::string& group, const std::string& involution, const std::vector<CheckResult>& results,
                  std::uint64_t seed, bool timings) {
  ojson out;
  out["group"] = group;
  out["involution"] = involution;
  out["seed"] = std::to_string(seed);
  bool ok = true;
  out["checks"] = ojson::array();
  for (const auto& r : results) {
    ok &= r.ok();
    out["checks"].push_back(ojson::parse(to_json(r, timings).dump()));
  }
  out["passed"] = ok;
  return out;
}

std::string report_text(const std::vector<CheckResult>& results, bool timings) {
  std::ostringstream os;
  for (const auto& r : results) {
    os << to_string(r.status) << "  " << r.name;
    if (timings) os << "  " << r.elapsed_ms << " ms";
    os << "\n";
    if (!r.witness.empty()) os << "    witness: " << r.witness << "\n";
    for (const auto& n : r.notes) os << "    note: " << n << "\n";
  }
  return os.str();
}

void load_overrides(const nlohmann::json& doc, const RootData& rd, Involution& inv) {
  if (!doc.is_object() || !doc.contains("types") || !doc["types"].is_array())
    throw PreconditionError("override file needs a \"types\" array");
  for (const auto& entry : doc["types"]) {
    if (!entry.contains("weight") || !entry.contains("type"))
      throw PreconditionError("override entry needs \"weight\" and \"type\"");
    Weight w;
    for (const auto& c : entry["weight"]) w.push_back(c.is_string() ? std::stoll(c.get<std::string>()) : c.get<std::int64_t>());
    if (static_cast<int>(w.size()) != rd.rank)
      throw PreconditionError("override weight " + weight_to_string(w) + " has the wrong length");
    inv.overrides[w] = parse_field_type(entry["type"].get<std::string>());
  }
}

}  // namespace krg
