#pragma once

// Serialization: the contest-spec JSON schema, equilibrium JSON round-trip,
// CSV tables, and report encoding for the CLI.

#include <json.hpp>
#include <string>

#include "contest/analytics.hpp"
#include "contest/certificate.hpp"
#include "contest/domain.hpp"
#include "contest/verification.hpp"

namespace contest {

// Spec schema:
// {"battles":[{"cost_a":1.0,"cost_b":1.0,"power":1.0},...],
//  "budget_a":1.0,"budget_b":1.0}
// Battle order in the array is battle-index order.
ContestSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const ContestSpec& spec);
ContestSpec load_spec(const std::string& path);

nlohmann::json equilibrium_to_json(const Equilibrium& eq);
Equilibrium equilibrium_from_json(const nlohmann::json& j);

// Per-battle equilibrium table with columns t, c_t, p_star_a, pivotality,
// responsiveness, salience, v_star_a, v_star_b, effort_a, effort_b.
std::string equilibrium_csv(const Equilibrium& eq);

std::string sweep_csv(const SweepTable& table);

nlohmann::json verify_report_to_json(const VerifyReport& report);
nlohmann::json certify_report_to_json(const CertifyReport& report);

// Cluster syntax: clusters separated by ';', 1-based battle indices within a
// cluster separated by ','. Example: "1;2,3".
TemporalStructure parse_clusters(const std::string& text, int battle_count);

}  // namespace contest
