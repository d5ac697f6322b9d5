// Successive approximations on the Oseen integral equation,
//   U^m(t) = H*U0(t) - grad E * (U^{m-1} tensor U^{m-1})(t),
// with contraction tracking against the certificate majorant.
#pragma once

#include <string>
#include <vector>

#include "mns/certificate.hpp"
#include "mns/kernels.hpp"
#include "mns/norms.hpp"

namespace mns {

struct IterationRecord {
  int m = 0;
  NormTriple iterate;    // triple norm of U^m at (rho*, t_final)
  NormTriple increment;  // triple norm of w^m = U^m - U^{m-1}
  double theoretical_bound = 0.0;  // 2^{m-1} c1^m A^{m+1}(rho*, t_final)
  double wall_seconds = 0.0;
};

struct IterationTrace {
  double rho = 0.0;
  double t_final = 0.0;
  double majorant_value = 0.0;  // A(rho*, t_final), 0 if criterion violated
  bool criterion_holds = false;
  int mesh_nodes = 0;
  double mesh_gamma = 0.0;
  std::vector<IterationRecord> records;
};

struct SolveResult {
  Trajectory trajectory;                 // converged velocity iterate
  std::vector<ScalarField> pressures;    // pressure at each node
  int iterations = 0;
  bool converged = false;
  bool out_of_certificate = false;  // mesh horizon exceeded certificate T
  double final_increment = 0.0;     // triple norm of the last w^m
  double tolerance = 0.0;
  int projector_warnings = 0;
  Certificate certificate;
};

/// Runs the iteration until the increment triple norm drops below `tol`
/// (absolute) or `max_m` is reached. Growth of the increment over three
/// consecutive iterations aborts with converged = false and a full trace.
std::pair<SolveResult, IterationTrace> picard_solve(
    const VelocityField& datum, const Certificate& certificate,
    const TimeMesh& mesh, double tol, int max_m);

struct BoundCheck {
  int m = 0;
  double iterate_value = 0.0;
  double iterate_bound = 0.0;  // A(rho*, t)
  double increment_value = 0.0;
  double increment_bound = 0.0;  // 2^{m-1} c1^m A^{m+1}
  bool iterate_ok = false;
  bool increment_ok = false;
  double slack = 0.0;  // max of value/bound ratios
};

struct BoundReport {
  bool criterion_in_range = false;
  bool all_pass = false;
  double max_slack = 0.0;
  std::vector<BoundCheck> checks;
  std::string status;  // "ok" | "criterion-out-of-range"
};

/// Checks every recorded iterate against the majorant and every increment
/// against the geometric contraction bound, with the reported slack factor.
BoundReport verify_iteration_bound(const IterationTrace& trace,
                                   const Certificate& certificate,
                                   double slack_allowance = 1.0);

}  // namespace mns
