#include "mns/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "mns/field_ops.hpp"
#include "mns/io.hpp"

namespace mns {

json to_json(const Constants& c) {
  return json{{"h0", c.h0}, {"h1", c.h1}, {"c1", c.c1}, {"source", c.source}};
}

json to_json(const NormTriple& t) {
  return json{{"sup_weighted", t.sup_weighted},
              {"localized", t.localized},
              {"l3_weighted", t.l3_weighted},
              {"rho", t.rho},
              {"t", t.t},
              {"value", t.value()}};
}

namespace {
json time_entry(const TimeOfRho& tr) {
  switch (tr.kind) {
    case TimeOfRho::Kind::none:
      return nullptr;
    case TimeOfRho::Kind::infinite:
      return "inf";
    default:
      return tr.t;
  }
}
}  // namespace

json to_json(const Certificate& cert) {
  json table = json::array();
  for (std::size_t i = 0; i < cert.datum_norms.rho.size(); ++i)
    table.push_back(json{{"rho", cert.datum_norms.rho[i]},
                         {"localized_l3", cert.datum_norms.localized[i]},
                         {"t_of_rho", time_entry(cert.t_table[i])}});
  json a_table = json::array();
  for (auto [t, a] : cert.a_table)
    a_table.push_back(json{{"t", t}, {"A", a}});
  return json{{"constants", to_json(cert.constants)},
              {"datum_l3", cert.datum_norms.l3},
              {"ladder", table},
              {"rho_star", cert.rho_star},
              {"T", std::isinf(cert.T) ? json("inf") : json(cert.T)},
              {"A_table", a_table},
              {"global", cert.global},
              {"rho_cap", cert.rho_cap},
              {"status", cert.status}};
}

json to_json(const IterationTrace& trace, bool include_timing) {
  json records = json::array();
  for (const IterationRecord& r : trace.records) {
    json row{{"m", r.m},
             {"iterate", to_json(r.iterate)},
             {"increment", to_json(r.increment)},
             {"theoretical_bound", r.theoretical_bound}};
    if (include_timing) row["wall_seconds"] = r.wall_seconds;
    records.push_back(std::move(row));
  }
  return json{{"rho", trace.rho},
              {"t_final", trace.t_final},
              {"majorant", trace.majorant_value},
              {"criterion_holds", trace.criterion_holds},
              {"mesh_nodes", trace.mesh_nodes},
              {"mesh_gamma", trace.mesh_gamma},
              {"records", records}};
}

json to_json(const DecayScan& scan) {
  return json{{"quantity", scan.quantity}, {"q", scan.q},
              {"mu", scan.mu},             {"times", scan.times},
              {"values", scan.values},     {"slope", scan.slope},
              {"verdict", scan.verdict},
              {"fitted_constant", scan.fitted_constant}};
}

namespace {
json audit_row(const AuditRow& r) {
  return json{{"lemma", r.lemma}, {"datum_id", r.datum_id},
              {"rho", r.rho},     {"t", r.t},
              {"lhs", r.lhs},     {"rhs", r.rhs},
              {"margin", r.margin}, {"pass", r.pass}};
}
}  // namespace

json to_json(const AuditReport& report) {
  json rows = json::array();
  for (const AuditRow& r : report.rows) rows.push_back(audit_row(r));
  json consts = json::object();
  for (const auto& [name, c] : report.constants) consts[name] = c;
  return json{{"constants", consts},
              {"fit_margin", report.fit_margin},
              {"rows", rows},
              {"all_pass", report.all_pass}};
}

json to_json(const BoundReport& report) {
  json checks = json::array();
  for (const BoundCheck& c : report.checks)
    checks.push_back(json{{"m", c.m},
                          {"iterate_value", c.iterate_value},
                          {"iterate_bound", c.iterate_bound},
                          {"increment_value", c.increment_value},
                          {"increment_bound", c.increment_bound},
                          {"slack", c.slack},
                          {"pass", c.iterate_ok && c.increment_ok}});
  return json{{"status", report.status},
              {"all_pass", report.all_pass},
              {"max_slack", report.max_slack},
              {"checks", checks}};
}

json to_json(const UniquenessReport& report) {
  return json{{"both_converged", report.both_converged},
              {"both_in_uniqueness_class", report.both_in_uniqueness_class},
              {"sup_l3_gap", report.sup_l3_gap},
              {"budget", report.budget},
              {"pass", report.pass}};
}

std::string config_hash(const json& config) {
  const std::string dump = config.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

RunConfig RunConfig::from_json(const json& j) {
  static const std::vector<std::string> known = {
      "grid", "mesh", "constants", "datum", "rho_ladder",
      "tolerances", "output", "seed"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      throw std::invalid_argument("config: unknown key '" + it.key() + "'");

  RunConfig cfg;
  cfg.raw = j;
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    cfg.grid = GridSpec::make(g.value("n", 32),
                              g.value("extent", 2.0 * 3.141592653589793));
  }
  if (j.contains("mesh")) {
    const auto& m = j.at("mesh");
    cfg.t_final = m.value("t_final", cfg.t_final);
    cfg.mesh_nodes = m.value("nodes", cfg.mesh_nodes);
    cfg.mesh_gamma = m.value("gamma", cfg.mesh_gamma);
  }
  if (j.contains("constants")) {
    const auto& c = j.at("constants");
    cfg.constants.c1 = c.value("c1", 1.0);
    if (c.contains("h0") != c.contains("h1"))
      throw std::invalid_argument("config: h0 and h1 must be set together");
    if (c.contains("h0")) {
      cfg.constants.h0 = c.at("h0").get<double>();
      cfg.constants.h1 = c.at("h1").get<double>();
      cfg.constants.source = "configured";
      cfg.constants_configured = true;
    }
  }
  if (j.contains("datum")) {
    const auto& d = j.at("datum");
    if (d.contains("snapshot")) {
      cfg.snapshot = d.at("snapshot").get<std::string>();
    } else {
      cfg.datum_kind = d.value("kind", cfg.datum_kind);
      cfg.datum_amplitude = d.value("amplitude", cfg.datum_amplitude);
      cfg.datum_scale = d.value("scale", cfg.datum_scale);
    }
  }
  if (j.contains("rho_ladder"))
    cfg.rho_count = j.at("rho_ladder").value("count", cfg.rho_count);
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    cfg.picard_tol = t.value("picard_tol", cfg.picard_tol);
    cfg.max_m = t.value("max_m", cfg.max_m);
  }
  if (j.contains("output")) cfg.output_dir = j.at("output").get<std::string>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("config: cannot open " + path);
  json j = json::parse(is);
  return from_json(j);
}

VelocityField RunConfig::build_datum() const {
  if (!snapshot.empty()) return load_field(snapshot);
  return make_datum(datum_kind, datum_amplitude, datum_scale, grid);
}

Constants RunConfig::build_constants() const {
  if (constants_configured) return constants;
  return derive_constants(constants.c1);
}

}  // namespace mns
