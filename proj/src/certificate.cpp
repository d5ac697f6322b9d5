#include "mns/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "mns/norms.hpp"

namespace mns {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Composite Simpson; the integrands are smooth Gaussians, so a fixed fine
// rule beats adaptive refinement fighting roundoff near the tail.
template <typename F>
double integrate(F&& f, double a, double b) {
  constexpr int n = 1 << 16;
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += (i & 1 ? 4.0 : 2.0) * f(a + i * h);
  return acc * h / 3.0;
}

}  // namespace

Constants derive_constants(double c1) {
  if (!(c1 > 0.0)) throw std::invalid_argument("derive_constants: c1 <= 0");
  const double pi = std::numbers::pi;
  // h0: Hoelder bound of the near-field term at t = 1,
  //   h0 = [ integral H(1,z)^(3/2) dz ]^(2/3).
  auto near = [pi](double r) {
    const double H = std::pow(4.0 * pi, -1.5) * std::exp(-r * r / 4.0);
    return 4.0 * pi * r * r * std::pow(H, 1.5);
  };
  const double h0 = std::pow(integrate(near, 0.0, 40.0), 2.0 / 3.0);
  // h1: far-field term after splitting exp(-|z|^2/4) <=
  // exp(-rho^2/8) exp(-|z|^2/8),
  //   h1 = [ integral ((4 pi)^(-3/2) exp(-|z|^2/8))^(3/2) dz ]^(2/3).
  auto far = [pi](double r) {
    const double G = std::pow(4.0 * pi, -1.5) * std::exp(-r * r / 8.0);
    return 4.0 * pi * r * r * std::pow(G, 1.5);
  };
  const double h1 = std::pow(integrate(far, 0.0, 60.0), 2.0 / 3.0);
  return Constants{h0, h1, c1, "derived"};
}

std::optional<double> recursion_fixed_point(double xi0, double c) {
  if (xi0 < 0.0 || !(c > 0.0))
    throw std::invalid_argument("recursion_fixed_point: bad signs");
  const double disc = 1.0 - 4.0 * c * xi0;
  if (!(disc > 0.0)) return std::nullopt;
  // Stable form of (1 - sqrt(disc)) / (2c).
  return 2.0 * xi0 / (1.0 + std::sqrt(disc));
}

double DatumNorms::localized_at(double r) const {
  for (std::size_t i = 0; i < rho.size(); ++i)
    if (std::abs(rho[i] - r) <= 1e-12 * std::max(1.0, r)) return localized[i];
  throw std::invalid_argument("DatumNorms: rho not in ladder");
}

double criterion_value_raw(double l3_rho, double l3, const Constants& c,
                           double rho, double t) {
  if (!(rho > 0.0) || !(t > 0.0))
    throw std::invalid_argument("criterion_value: rho, t must be positive");
  return (c.h0 + 1.0) * l3_rho +
         (c.h1 * std::exp(-rho * rho / (8.0 * t)) + std::sqrt(t) / rho) * l3;
}

double criterion_value(const DatumNorms& norms, const Constants& c, double rho,
                       double t) {
  return criterion_value_raw(norms.localized_at(rho), norms.l3, c, rho, t);
}

double majorant(double B, double c1) {
  const double disc = 1.0 - 4.0 * c1 * B;
  if (!(disc > 0.0))
    throw std::invalid_argument("majorant: criterion violated (4 c1 B >= 1)");
  return 2.0 * B / (1.0 + std::sqrt(disc));
}

TimeOfRho t_of_rho(const DatumNorms& norms, const Constants& c, double rho) {
  const double l3_rho = norms.localized_at(rho);
  const double thr = 1.0 / (4.0 * c.c1);
  if ((c.h0 + 1.0) * l3_rho >= thr) return {TimeOfRho::Kind::none, 0.0};
  if (norms.l3 == 0.0) return {TimeOfRho::Kind::infinite, kInf};

  auto B = [&](double t) {
    return criterion_value_raw(l3_rho, norms.l3, c, rho, t);
  };
  const double t_hi = 1e12 * std::max(rho * rho, 1.0);
  if (B(t_hi) < thr) return {TimeOfRho::Kind::infinite, kInf};
  double lo = 1e-18 * rho * rho;
  while (B(lo) >= thr) lo *= 1e-3;  // exp term can still matter at tiny rho
  double hi = t_hi;
  // Bisection in log t; B is strictly increasing in t.
  while (hi - lo > 1e-10 * lo) {
    const double mid = std::sqrt(lo * hi);
    (B(mid) < thr ? lo : hi) = mid;
  }
  return {TimeOfRho::Kind::finite, 0.5 * (lo + hi)};
}

std::vector<double> default_rho_ladder(const GridSpec& g, int count) {
  if (count < 2) throw std::invalid_argument("rho ladder: need >= 2 radii");
  const double lo = 2.0 * g.spacing();
  const double hi = g.extent / 2.0;
  std::vector<double> ladder(count);
  for (int i = 0; i < count; ++i)
    ladder[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
  return ladder;
}

Certificate existence_time(const VelocityField& datum, const Constants& c,
                           const std::vector<double>& rho_ladder) {
  if (rho_ladder.empty())
    throw std::invalid_argument("existence_time: empty rho ladder");
  Certificate cert;
  cert.constants = c;
  cert.rho_cap = datum.grid.extent / 2.0;

  cert.datum_norms.l3 = lq_norm(datum, 3.0);
  cert.datum_norms.rho = rho_ladder;
  cert.datum_norms.localized.reserve(rho_ladder.size());
  for (double r : rho_ladder)
    cert.datum_norms.localized.push_back(localized_l3(datum, r));

  cert.T = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < rho_ladder.size(); ++i) {
    TimeOfRho tr = t_of_rho(cert.datum_norms, c, rho_ladder[i]);
    cert.t_table.push_back(tr);
    if (tr.kind == TimeOfRho::Kind::none) continue;
    any = true;
    if (tr.t > cert.T || !(cert.T > 0.0)) {
      cert.T = tr.t;
      cert.rho_star = rho_ladder[i];
    }
  }
  if (!any) {
    cert.status = "criterion-everywhere-violated";
    cert.T = 0.0;
    cert.global = false;
    return cert;
  }
  cert.status = std::isinf(cert.T) ? "unbounded" : "ok";

  // A(rho*, t) samples on a log ladder below min(T, cap-scale horizon).
  const double t_top = std::isinf(cert.T)
                           ? cert.rho_cap * cert.rho_cap
                           : cert.T * (1.0 - 1e-8);
  for (int p = 30; p >= 0; --p) {
    const double t = t_top * std::pow(2.0, -0.5 * p);
    const double B = criterion_value(cert.datum_norms, c, cert.rho_star, t);
    if (4.0 * c.c1 * B < 1.0) cert.a_table.emplace_back(t, majorant(B, c.c1));
  }

  // Small-data globality: with rho = kappa sqrt(t) and rho beyond the cap the
  // localized norm saturates at ||U0||_3, so the criterion extrapolates to
  //   ((h0+1) + h1 exp(-kappa^2/8) + 1/kappa) ||U0||_3 < 1/(4 c1).
  double best = kInf;
  for (int i = 0; i <= 400; ++i) {
    const double kappa = std::pow(10.0, -2.0 + i * 0.02);  // 1e-2 .. 1e6
    best = std::min(best, (c.h0 + 1.0) * cert.datum_norms.l3 +
                              (c.h1 * std::exp(-kappa * kappa / 8.0) +
                               1.0 / kappa) *
                                  cert.datum_norms.l3);
  }
  cert.global = best < 1.0 / (4.0 * c.c1);
  return cert;
}

}  // namespace mns
