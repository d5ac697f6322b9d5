#include "mns/picard.hpp"

#include <chrono>
#include <cmath>

namespace mns {

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

}  // namespace

std::pair<SolveResult, IterationTrace> picard_solve(
    const VelocityField& datum, const Certificate& certificate,
    const TimeMesh& mesh, double tol, int max_m) {
  if (max_m < 1) throw std::invalid_argument("picard_solve: max_m < 1");
  const Constants& c = certificate.constants;
  // Without a certified rho* (criterion violated everywhere) fall back to the
  // ladder rung closest to a quarter of the box, so the criterion evaluation
  // below still refers to a tabulated localized norm.
  double rho = datum.grid.extent / 4.0;
  if (certificate.rho_star > 0.0) {
    rho = certificate.rho_star;
  } else if (!certificate.datum_norms.rho.empty()) {
    const double target = rho;
    for (double r : certificate.datum_norms.rho)
      if (std::abs(r - target) < std::abs(rho - target) || rho == target)
        rho = r;
  }

  SolveResult result;
  result.certificate = certificate;
  result.tolerance = tol;
  result.out_of_certificate = !(mesh.t_final <= certificate.T);

  IterationTrace trace;
  trace.rho = rho;
  trace.t_final = mesh.t_final;
  trace.mesh_nodes = static_cast<int>(mesh.nodes.size());
  trace.mesh_gamma = mesh.gamma;
  {
    const double B = certificate.datum_norms.rho.empty()
                         ? 1.0
                         : criterion_value(certificate.datum_norms, c, rho,
                                           mesh.t_final);
    trace.criterion_holds = 4.0 * c.c1 * B < 1.0;
    if (trace.criterion_holds) trace.majorant_value = majorant(B, c.c1);
  }

  Trajectory heat = heat_flow(datum, mesh);
  Trajectory prev;  // U^{m-1}
  Trajectory current = heat;  // U^0

  int grow_streak = 0;
  double prev_increment = 0.0;
  for (int m = 0; m <= max_m; ++m) {
    const double tic = now_seconds();
    if (m > 0) {
      auto sources =
          nonlinear_sources(prev, prev, &result.projector_warnings);
      for (std::size_t j = 0; j < mesh.nodes.size(); ++j) {
        VelocityField nl = nonlinear_term_at(sources, mesh, j);
        current.fields[j] = axpy(-1.0, nl, heat.fields[j]);
        current.fields[j].time_label = mesh.nodes[j];
      }
    }

    IterationRecord rec;
    rec.m = m;
    rec.iterate = triple_norm(current, rho, mesh.t_final);
    Trajectory incr;
    incr.mesh = mesh;
    incr.fields.reserve(mesh.nodes.size());
    for (std::size_t j = 0; j < mesh.nodes.size(); ++j)
      incr.fields.push_back(
          m == 0 ? current.fields[j]
                 : axpy(-1.0, prev.fields[j], current.fields[j]));
    rec.increment = triple_norm(incr, rho, mesh.t_final);
    if (trace.criterion_holds)
      rec.theoretical_bound =
          m == 0 ? trace.majorant_value
                 : std::pow(2.0, m - 1) * std::pow(c.c1, m) *
                       std::pow(trace.majorant_value, m + 1);
    rec.wall_seconds = now_seconds() - tic;
    trace.records.push_back(rec);

    result.iterations = m;
    result.final_increment = rec.increment.value();
    if (m >= 1 && rec.increment.value() <= tol) {
      result.converged = true;
      break;
    }
    if (m >= 1) {
      grow_streak = rec.increment.value() > prev_increment * (1.0 + 1e-12)
                        ? grow_streak + 1
                        : 0;
      if (grow_streak >= 3) break;  // diverging; report with trace
    }
    prev_increment = rec.increment.value();
    prev = current;
  }

  result.trajectory = current;
  result.pressures.reserve(mesh.nodes.size());
  for (const VelocityField& u : result.trajectory.fields)
    result.pressures.push_back(pressure_solve(u));
  return {result, trace};
}

BoundReport verify_iteration_bound(const IterationTrace& trace,
                                   const Certificate& certificate,
                                   double slack_allowance) {
  if (trace.records.empty())
    throw std::invalid_argument("verify_iteration_bound: empty trace");
  BoundReport report;
  report.criterion_in_range = trace.criterion_holds;
  if (!trace.criterion_holds) {
    report.status = "criterion-out-of-range";
    report.all_pass = false;
    return report;
  }
  report.status = "ok";
  report.all_pass = true;
  const double A = trace.majorant_value;
  const double c1 = certificate.constants.c1;
  for (const IterationRecord& rec : trace.records) {
    BoundCheck chk;
    chk.m = rec.m;
    chk.iterate_value = rec.iterate.value();
    chk.iterate_bound = A;
    chk.increment_value = rec.increment.value();
    chk.increment_bound = rec.m == 0
                              ? A
                              : std::pow(2.0, rec.m - 1) * std::pow(c1, rec.m) *
                                    std::pow(A, rec.m + 1);
    auto ratio = [](double v, double b) { return b > 0.0 ? v / b : 0.0; };
    chk.slack = std::max(ratio(chk.iterate_value, chk.iterate_bound),
                         ratio(chk.increment_value, chk.increment_bound));
    chk.iterate_ok = chk.iterate_value <= chk.iterate_bound * slack_allowance;
    chk.increment_ok =
        chk.increment_value <= chk.increment_bound * slack_allowance;
    report.all_pass = report.all_pass && chk.iterate_ok && chk.increment_ok;
    report.max_slack = std::max(report.max_slack, chk.slack);
    report.checks.push_back(chk);
  }
  return report;
}

}  // namespace mns
