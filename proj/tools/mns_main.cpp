// Command-line front end: certify, solve, audit, scan, unique, gen.
// Exit codes: 0 pass, 2 config error, 3 nonconvergence/violation.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "mns/io.hpp"
#include "mns/report.hpp"

namespace fs = std::filesystem;
using mns::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitViolation = 3;

void write_report(const fs::path& dir, const std::string& name,
                  const json& body) {
  fs::create_directories(dir);
  std::ofstream os(dir / name);
  os << body.dump(2) << "\n";
}

json report_header(const mns::RunConfig& cfg, const mns::Constants& c) {
  return json{{"config_hash", mns::config_hash(cfg.raw)},
              {"constants", mns::to_json(c)}};
}

int cmd_gen(const mns::RunConfig& cfg, const std::string& out_path) {
  mns::VelocityField datum = cfg.build_datum();
  mns::save_field(out_path, datum);
  std::cout << "wrote " << out_path
            << "  l3=" << mns::lq_norm(datum, 3.0) << "\n";
  return kExitOk;
}

int cmd_certify(const mns::RunConfig& cfg) {
  mns::VelocityField datum = cfg.build_datum();
  mns::Constants c = cfg.build_constants();
  auto ladder = mns::default_rho_ladder(cfg.grid, cfg.rho_count);
  mns::Certificate cert = mns::existence_time(datum, c, ladder);
  json body = report_header(cfg, c);
  body["certificate"] = mns::to_json(cert);
  write_report(cfg.output_dir, "certificate.json", body);
  std::cout << "T = "
            << (std::isinf(cert.T) ? std::string("inf")
                                   : std::to_string(cert.T))
            << "  rho* = " << cert.rho_star << "  global = " << cert.global
            << "  status = " << cert.status << "\n";
  return kExitOk;
}

int cmd_solve(const mns::RunConfig& cfg) {
  mns::VelocityField datum = cfg.build_datum();
  mns::Constants c = cfg.build_constants();
  mns::Certificate cert = mns::existence_time(
      datum, c, mns::default_rho_ladder(cfg.grid, cfg.rho_count));
  mns::TimeMesh mesh =
      mns::TimeMesh::graded(cfg.t_final, cfg.mesh_nodes, cfg.mesh_gamma);
  if (!(mesh.t_final <= cert.T))
    std::cerr << "warning: horizon " << mesh.t_final
              << " exceeds certificate T; out-of-certificate run\n";
  auto [result, trace] =
      mns::picard_solve(datum, cert, mesh, cfg.picard_tol, cfg.max_m);

  const fs::path dir = cfg.output_dir;
  fs::create_directories(dir / "snapshots");
  for (std::size_t j = 0; j < result.trajectory.size(); ++j) {
    char name[64];
    std::snprintf(name, sizeof(name), "u_%04zu.mnsf", j);
    mns::save_field(dir / "snapshots" / name, result.trajectory.at(j));
  }
  json body = report_header(cfg, c);
  body["certificate"] = mns::to_json(cert);
  body["trace"] = mns::to_json(trace);
  body["converged"] = result.converged;
  body["iterations"] = result.iterations;
  body["final_increment"] = result.final_increment;
  body["out_of_certificate"] = result.out_of_certificate;
  write_report(dir, "solve.json", body);
  std::cout << (result.converged ? "converged" : "NOT converged") << " in "
            << result.iterations
            << " iterations, final increment = " << result.final_increment
            << "\n";
  return result.converged ? kExitOk : kExitViolation;
}

int cmd_audit(const mns::RunConfig& cfg, int train, int test) {
  if (train < 1 || test < 1) {
    std::cerr << "audit: empty datum family\n";
    return kExitConfig;
  }
  mns::AuditConfig acfg;
  acfg.grid = cfg.grid;
  acfg.train_count = train;
  acfg.test_count = test;
  acfg.seed = cfg.seed;
  mns::AuditReport report = mns::estimate_audit(acfg);
  json body = report_header(cfg, cfg.build_constants());
  body["audit"] = mns::to_json(report);
  write_report(cfg.output_dir, "audit.json", body);
  // CSV table of the test rows.
  {
    fs::create_directories(cfg.output_dir);
    std::ofstream csv(fs::path(cfg.output_dir) / "audit.csv");
    csv << "lemma,datum_id,rho,t,lhs,rhs,margin,pass\n";
    for (const mns::AuditRow& r : report.rows)
      csv << r.lemma << ',' << r.datum_id << ',' << r.rho << ',' << r.t << ','
          << r.lhs << ',' << r.rhs << ',' << r.margin << ',' << r.pass << "\n";
  }
  std::cout << (report.all_pass ? "audit PASS" : "audit FAIL") << " ("
            << report.rows.size() << " rows)\n";
  return report.all_pass ? kExitOk : kExitViolation;
}

int cmd_scan(const mns::RunConfig& cfg, const std::vector<double>& q_list) {
  mns::VelocityField datum = cfg.build_datum();
  mns::Constants c = cfg.build_constants();
  mns::Certificate cert = mns::existence_time(
      datum, c, mns::default_rho_ladder(cfg.grid, cfg.rho_count));
  mns::TimeMesh mesh =
      mns::TimeMesh::graded(cfg.t_final, cfg.mesh_nodes, cfg.mesh_gamma);
  auto [result, trace] =
      mns::picard_solve(datum, cert, mesh, cfg.picard_tol, cfg.max_m);
  if (!result.converged) {
    std::cerr << "scan: solver did not converge\n";
    return kExitViolation;
  }
  json scans = json::array();
  bool ok = true;
  for (const mns::DecayScan& s : mns::limit_scan(result)) {
    ok = ok && s.verdict == "vanishing";
    scans.push_back(mns::to_json(s));
  }
  if (!q_list.empty())
    for (const mns::DecayScan& s : mns::lq_decay_scan(result, q_list)) {
      ok = ok && s.verdict == "vanishing";
      scans.push_back(mns::to_json(s));
    }
  json body = report_header(cfg, c);
  body["scans"] = scans;
  write_report(cfg.output_dir, "scan.json", body);
  std::cout << (ok ? "scan PASS" : "scan FAIL") << "\n";
  return ok ? kExitOk : kExitViolation;
}

int cmd_unique(const mns::RunConfig& cfg) {
  mns::VelocityField datum = cfg.build_datum();
  mns::Constants c = cfg.build_constants();
  mns::Certificate cert = mns::existence_time(
      datum, c, mns::default_rho_ladder(cfg.grid, cfg.rho_count));
  mns::TimeMesh coarse =
      mns::TimeMesh::graded(cfg.t_final, cfg.mesh_nodes, cfg.mesh_gamma);
  mns::TimeMesh fine =
      mns::TimeMesh::graded(cfg.t_final, 2 * cfg.mesh_nodes, cfg.mesh_gamma);
  mns::UniquenessReport report = mns::uniqueness_check(
      datum, cert, coarse, fine, cfg.picard_tol, cfg.max_m);
  json body = report_header(cfg, c);
  body["uniqueness"] = mns::to_json(report);
  write_report(cfg.output_dir, "unique.json", body);
  std::cout << (report.pass ? "unique PASS" : "unique FAIL")
            << "  gap=" << report.sup_l3_gap << " budget=" << report.budget
            << "\n";
  return report.pass ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Localized-norm existence certificates and Picard solves for "
               "the 3D Navier-Stokes Cauchy problem on a periodic cube"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("-c,--config", config_path, "JSON run configuration");

  std::string gen_out = "datum.mnsf";
  int train = 20, test = 20;
  std::vector<double> q_list;

  CLI::App* gen = app.add_subcommand("gen", "generate a datum snapshot");
  gen->add_option("-o,--output", gen_out, "snapshot path");
  CLI::App* certify =
      app.add_subcommand("certify", "compute the existence certificate");
  CLI::App* solve = app.add_subcommand("solve", "run the Picard iteration");
  CLI::App* audit = app.add_subcommand("audit", "run the estimate audit");
  audit->add_option("--train", train, "training family size");
  audit->add_option("--test", test, "test family size");
  CLI::App* scan = app.add_subcommand("scan", "run the decay scans");
  scan->add_option("-q", q_list, "Lebesgue exponents for the L^q scans");
  CLI::App* unique =
      app.add_subcommand("unique", "discretization-independence check");

  CLI11_PARSE(app, argc, argv);

  try {
    mns::RunConfig cfg;
    if (!config_path.empty()) cfg = mns::RunConfig::from_file(config_path);

    if (gen->parsed()) return cmd_gen(cfg, gen_out);
    if (certify->parsed()) return cmd_certify(cfg);
    if (solve->parsed()) return cmd_solve(cfg);
    if (audit->parsed()) return cmd_audit(cfg, train, test);
    if (scan->parsed()) return cmd_scan(cfg, q_list);
    if (unique->parsed()) return cmd_unique(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
