#pragma once

// JSON and text renderings of presentations and verification reports.
// Integers are written as decimal strings; key order is fixed, so equal
// inputs give byte-identical documents.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "krg/verifier.hpp"

namespace krg {

/// Label used by the text format: dR[phi1], dH[theta1], lambda[1], or the r-class name.
std::string text_label(const KRPresentation& p, const Generator& g);

/// The Poincare table is taken at the presentation's truncation.
nlohmann::ordered_json presentation_json(const KRPresentation& p);
std::string presentation_text(const KRPresentation& p);

nlohmann::ordered_json report_json(const std::string& group, const std::string& involution,
                                   const std::vector<CheckResult>& results, std::uint64_t seed,
                                   bool timings = false);
std::string report_text(const std::vector<CheckResult>& results, bool timings = false);

/// Reads {"types": [{"weight": [..], "type": "R"|"C"|"H"}]} into inv.overrides.
void load_overrides(const nlohmann::json& doc, const RootData& rd, Involution& inv);

}  // namespace krg
