// Numerical audits: short-time limit scans, compensated L^q decay scans,
// the lemma-inequality audit with train/test constant fitting, and the
// discretization-independence uniqueness proxy.
#pragma once

#include <string>
#include <vector>

#include "mns/picard.hpp"

namespace mns {

struct DecayScan {
  std::string quantity;              // e.g. "t^(1/2)*Linf(U)"
  double q = 0.0;                    // Lebesgue exponent, 0 for sup-norm scans
  double mu = 0.0;                   // compensation exponent (q-3)/(2q)
  std::vector<double> times;         // decreasing dyadic ladder
  std::vector<double> values;        // compensated values at `times`
  double slope = 0.0;                // fitted log-log slope (in t)
  std::string verdict;               // "vanishing" | "bounded" | "violated"
  double fitted_constant = 0.0;      // domination constant where applicable
};

/// Scans t^(1/2)||U||_inf, t||grad U||_inf, t^(3/2)||grad grad U||_inf on a
/// dyadic ladder toward t = 0. Requires nodes spanning >= 3 dyadic decades.
std::vector<DecayScan> limit_scan(const SolveResult& solve);

/// Compensated L^q scans t^mu ||U||_q, t^(1/2+mu) ||grad U||_q,
/// t^(1+mu) ||grad grad U||_q for q in q_list (each q > 3), with the
/// majorant-powered domination bound evaluated from the solve's certificate.
std::vector<DecayScan> lq_decay_scan(const SolveResult& solve,
                                     const std::vector<double>& q_list);

struct AuditRow {
  std::string lemma;
  std::uint64_t datum_id = 0;
  double rho = 0.0;
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;  // structural right-hand side times the fitted constant
  double margin = 0.0;  // rhs - lhs
  bool pass = false;
};

struct AuditReport {
  std::vector<AuditRow> training;  // rows used for the constant fit
  std::vector<AuditRow> rows;      // disjoint test rows
  std::vector<std::pair<std::string, double>> constants;  // fitted per lemma
  double fit_margin = 0.0;  // multiplicative envelope applied to the fit
  bool all_pass = false;
};

struct AuditConfig {
  GridSpec grid;
  int train_count = 20;
  int test_count = 20;
  std::uint64_t seed = 2024;
  std::vector<double> rho_ladder;  // defaults from grid when empty
  std::vector<double> t_ladder;    // defaults when empty
  double fit_margin = 1.2;         // envelope on the fitted constants
  int mesh_nodes = 24;             // Duhamel quadrature for kernel audits
};

/// Fits one constant per lemma on the training family and evaluates the
/// inequalities on the disjoint test family. KR-I is asserted with constant
/// exactly 1 and LI-I with the derived (h0, h1); neither is fitted.
AuditReport estimate_audit(const AuditConfig& cfg);

struct UniquenessReport {
  bool both_converged = false;
  bool both_in_uniqueness_class = false;  // limit-scan precondition
  double sup_l3_gap = 0.0;    // sup over common nodes of ||U_a - U_b||_3
  double budget = 0.0;        // 10x the finer run's final increment
  bool pass = false;
};

/// Runs the same datum under two solver configurations and measures the
/// L^3 gap on common time nodes.
UniquenessReport uniqueness_check(const VelocityField& datum,
                                  const Certificate& certificate,
                                  const TimeMesh& mesh_a,
                                  const TimeMesh& mesh_b, double tol,
                                  int max_m);

/// Least-squares slope of log(values) against log(times).
double fitted_log_slope(const std::vector<double>& times,
                        const std::vector<double>& values);

}  // namespace mns
