// Scalar mathematics of the existence certificate: the heat-decomposition
// constants, the quadratic recursion bound, the smallness criterion
//   B(rho,t) = (h0+1) ||U0||_{3,rho} + (h1 exp(-rho^2/8t) + sqrt(t)/rho) ||U0||_3,
// its largest admissible time t(rho), the existence time T(U0) =
// sup_rho t(rho), and the closed-form majorant A(rho,t).
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mns/grid.hpp"

namespace mns {

struct Constants {
  double h0 = 0.0;
  double h1 = 0.0;
  double c1 = 1.0;
  std::string source = "derived";
};

/// h0 and h1 from the Gaussian integrals of the heat-decomposition bound
/// (radial adaptive quadrature; both are time- and rho-independent).
Constants derive_constants(double c1 = 1.0);

/// Minimum root (1 - sqrt(1-4c*xi0)) / (2c) of c x^2 - x + xi0 = 0 when
/// 1 - 4c*xi0 > 0; every iterate of x_m = xi0 + c x_{m-1}^2 started at xi0
/// stays below it. Empty result encodes criterion failure.
std::optional<double> recursion_fixed_point(double xi0, double c);

/// Datum norm summary: full L^3 norm plus the localized norm over a ladder
/// of radii.
struct DatumNorms {
  double l3 = 0.0;
  std::vector<double> rho;        // increasing ladder
  std::vector<double> localized;  // ||U0||_{3,rho[i]}
  double localized_at(double r) const;
};

double criterion_value(const DatumNorms& norms, const Constants& c, double rho,
                       double t);
double criterion_value_raw(double l3_rho, double l3, const Constants& c,
                           double rho, double t);

/// A(rho,t) = 2B / (1 + sqrt(1 - 4 c1 B)); requires 4 c1 B < 1.
double majorant(double B, double c1);

struct TimeOfRho {
  enum class Kind { none, finite, infinite };
  Kind kind = Kind::none;
  double t = 0.0;  // +inf for Kind::infinite
};

/// Largest t with B(rho,t) < 1/(4 c1), by bisection in log t to 1e-10
/// relative; `none` when even the t->0 limit violates the criterion,
/// `infinite` when it holds for all representable t.
TimeOfRho t_of_rho(const DatumNorms& norms, const Constants& c, double rho);

struct Certificate {
  Constants constants;
  DatumNorms datum_norms;
  std::vector<TimeOfRho> t_table;  // aligned with datum_norms.rho
  double rho_star = 0.0;
  double T = 0.0;  // +inf sentinel possible
  std::vector<std::pair<double, double>> a_table;  // (t, A(rho_star, t))
  bool global = false;
  double rho_cap = 0.0;  // sup over rho is taken over a ladder capped here
  std::string status;    // "ok" | "criterion-everywhere-violated" | "unbounded"
};

/// Log-spaced ladder in [2*spacing, extent/2].
std::vector<double> default_rho_ladder(const GridSpec& g, int count = 16);

Certificate existence_time(const VelocityField& datum, const Constants& c,
                           const std::vector<double>& rho_ladder);

}  // namespace mns
