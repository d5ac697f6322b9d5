// JSON serialization of certificates, traces, scans, and audit reports, plus
// the run configuration shared by the CLI commands.
#pragma once

#include <nlohmann/json.hpp>

#include "mns/certificate.hpp"
#include "mns/diagnostics.hpp"
#include "mns/picard.hpp"

namespace mns {

using json = nlohmann::json;

json to_json(const Constants& c);
json to_json(const NormTriple& t);
json to_json(const Certificate& cert);
json to_json(const IterationTrace& trace, bool include_timing = true);
json to_json(const DecayScan& scan);
json to_json(const AuditReport& report);
json to_json(const BoundReport& report);
json to_json(const UniquenessReport& report);

/// FNV-1a over the canonical dump; embedded in every report for
/// reproducibility checks.
std::string config_hash(const json& config);

struct RunConfig {
  GridSpec grid{32, 2.0 * 3.14159265358979323846};
  double t_final = 0.1;
  int mesh_nodes = 64;
  double mesh_gamma = 2.0;
  Constants constants;          // derived unless overridden
  bool constants_configured = false;
  std::string datum_kind = "curl_gaussian";
  double datum_amplitude = 1.0;
  double datum_scale = 0.6;
  std::string snapshot;         // datum from file when nonempty
  int rho_count = 16;
  double picard_tol = 1e-8;
  int max_m = 20;
  std::string output_dir = "out";
  std::uint64_t seed = 1;
  json raw;  // canonical parsed config, for hashing

  static RunConfig from_json(const json& j);
  static RunConfig from_file(const std::string& path);
  VelocityField build_datum() const;
  Constants build_constants() const;
};

}  // namespace mns
