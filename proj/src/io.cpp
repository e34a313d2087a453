#include "contest/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace contest {

namespace {

// 17 significant digits round-trip any finite double exactly.
std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::vector<double> doubles_from(const nlohmann::json& j, const char* field) {
  if (!j.contains(field)) throw SpecError(std::string("missing field '") + field + "'");
  return j.at(field).get<std::vector<double>>();
}

}  // namespace

ContestSpec spec_from_json(const nlohmann::json& j) {
  ContestSpec spec;
  if (!j.contains("battles") || !j.at("battles").is_array())
    throw SpecError("spec must contain a 'battles' array");
  for (const auto& jb : j.at("battles")) {
    Battle b;
    b.cost_a = jb.at("cost_a").get<double>();
    b.cost_b = jb.at("cost_b").get<double>();
    b.power = jb.at("power").get<double>();
    spec.battles.push_back(b);
  }
  spec.budget_a = j.at("budget_a").get<double>();
  spec.budget_b = j.at("budget_b").get<double>();
  return spec;
}

nlohmann::json spec_to_json(const ContestSpec& spec) {
  nlohmann::json battles = nlohmann::json::array();
  for (const Battle& b : spec.battles)
    battles.push_back({{"cost_a", b.cost_a}, {"cost_b", b.cost_b}, {"power", b.power}});
  return {{"battles", battles}, {"budget_a", spec.budget_a}, {"budget_b", spec.budget_b}};
}

ContestSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open spec file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& err) {
    throw SpecError("malformed JSON in '" + path + "': " + err.what());
  }
  try {
    return spec_from_json(j);
  } catch (const nlohmann::json::exception& err) {
    throw SpecError("invalid spec in '" + path + "': " + err.what());
  }
}

nlohmann::json equilibrium_to_json(const Equilibrium& eq) {
  return {{"k", eq.k},
          {"cost_index", eq.cost_index},
          {"prob_a", eq.prob_a},
          {"pivotality", eq.pivotality},
          {"responsiveness", eq.responsiveness},
          {"salience", eq.salience},
          {"alloc_a", eq.alloc_a.shares},
          {"alloc_b", eq.alloc_b.shares},
          {"team_prob_a", eq.team_prob_a},
          {"efforts_a", eq.efforts_a},
          {"efforts_b", eq.efforts_b},
          {"total_effort_cost", eq.total_effort_cost},
          {"hhi", eq.hhi}};
}

Equilibrium equilibrium_from_json(const nlohmann::json& j) {
  Equilibrium eq;
  eq.k = j.at("k").get<double>();
  eq.cost_index = doubles_from(j, "cost_index");
  eq.prob_a = doubles_from(j, "prob_a");
  eq.pivotality = doubles_from(j, "pivotality");
  eq.responsiveness = doubles_from(j, "responsiveness");
  eq.salience = doubles_from(j, "salience");
  eq.alloc_a = Allocation{doubles_from(j, "alloc_a"), Team::A};
  eq.alloc_b = Allocation{doubles_from(j, "alloc_b"), Team::B};
  eq.team_prob_a = j.at("team_prob_a").get<double>();
  eq.efforts_a = doubles_from(j, "efforts_a");
  eq.efforts_b = doubles_from(j, "efforts_b");
  eq.total_effort_cost = j.at("total_effort_cost").get<double>();
  eq.hhi = j.at("hhi").get<double>();
  return eq;
}

std::string equilibrium_csv(const Equilibrium& eq) {
  std::ostringstream out;
  out << "t,c_t,p_star_a,pivotality,responsiveness,salience,v_star_a,v_star_b,effort_a,effort_b\n";
  for (size_t t = 0; t < eq.prob_a.size(); ++t) {
    out << t + 1 << ',' << format_double(eq.cost_index[t]) << ',' << format_double(eq.prob_a[t])
        << ',' << format_double(eq.pivotality[t]) << ',' << format_double(eq.responsiveness[t])
        << ',' << format_double(eq.salience[t]) << ',' << format_double(eq.alloc_a.shares[t])
        << ',' << format_double(eq.alloc_b.shares[t]) << ',' << format_double(eq.efforts_a[t])
        << ',' << format_double(eq.efforts_b[t]) << '\n';
  }
  return out.str();
}

std::string sweep_csv(const SweepTable& table) {
  std::ostringstream out;
  for (size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
  return out.str();
}

nlohmann::json verify_report_to_json(const VerifyReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const Check& c : report.checks)
    checks.push_back({{"name", c.name},
                      {"residual", c.residual},
                      {"threshold", c.threshold},
                      {"pass", c.pass}});
  return {{"checks", checks}, {"pass", report.pass()}};
}

nlohmann::json certify_report_to_json(const CertifyReport& report) {
  nlohmann::json classes = nlohmann::json::array();
  for (const BlockClassReport& cls : report.classes)
    classes.push_back({{"alpha", cls.alpha},
                       {"b", cls.b},
                       {"a", cls.a},
                       {"multiplicity", cls.multiplicity},
                       {"d1", cls.d1},
                       {"d2", cls.d2},
                       {"c11", cls.c11},
                       {"c12", cls.c12},
                       {"c22", cls.c22},
                       {"matches_closed_form", cls.matches_closed_form},
                       {"psd", cls.psd}});
  nlohmann::json out = {{"n_level", report.n_level},
                        {"class_count", report.classes.size()},
                        {"alpha_count", report.alpha_count},
                        {"classes", classes},
                        {"pass", report.pass}};
  if (!report.failure.empty()) out["failure"] = report.failure;
  return out;
}

TemporalStructure parse_clusters(const std::string& text, int battle_count) {
  TemporalStructure structure;
  std::stringstream clusters(text);
  std::string cluster;
  while (std::getline(clusters, cluster, ';')) {
    std::vector<int> indices;
    std::stringstream items(cluster);
    std::string item;
    while (std::getline(items, item, ',')) {
      int value = 0;
      const char* first = item.data();
      const char* last = item.data() + item.size();
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc{} || ptr != last)
        throw SpecError("invalid battle index '" + item + "' in cluster list");
      indices.push_back(value - 1);  // 1-based on the wire
    }
    structure.clusters.push_back(std::move(indices));
  }
  validate_structure(structure, battle_count);
  return structure;
}

}  // namespace contest
