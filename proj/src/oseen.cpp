#include "mns/oseen.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mns {

namespace {

double adaptive_simpson(double (*f)(double, double), double s, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm, s), frm = f(rm, s);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, s, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, s, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double gauss_integrand(double a, double s) { return std::exp(-a * a / (4.0 * s)); }

}  // namespace

double oseen_phi_radial(double s, double r) {
  if (!(s > 0.0)) throw std::invalid_argument("oseen_phi_radial: s <= 0");
  if (r == 0.0) return 0.0;
  const double fa = gauss_integrand(0.0, s);
  const double fm = gauss_integrand(0.5 * r, s);
  const double fb = gauss_integrand(r, s);
  const double whole = r / 6.0 * (fa + 4.0 * fm + fb);
  const double tol = 1e-10 * std::max(whole, r * 1e-30);
  const double integral =
      adaptive_simpson(gauss_integrand, s, 0.0, r, fa, fm, fb, whole, tol, 40);
  return integral / std::sqrt(std::numbers::pi * s);
}

double heat_kernel(double t, const std::array<double, 3>& z) {
  const double r2 = z[0] * z[0] + z[1] * z[1] + z[2] * z[2];
  return std::pow(4.0 * std::numbers::pi * t, -1.5) * std::exp(-r2 / (4.0 * t));
}

OseenEval oseen_point_eval(double s, const std::array<double, 3>& z, int h,
                           int deriv) {
  if (!(s > 0.0)) throw std::invalid_argument("oseen_point_eval: s <= 0");
  if (h < 0 || h > 1)
    throw std::invalid_argument("oseen_point_eval: derivative order > 1");
  OseenEval out;
  out.s = s;
  out.z = z;
  out.h = h;
  out.deriv = deriv;

  const double C = 1.0 / (4.0 * std::numbers::pi);
  const double r2 = z[0] * z[0] + z[1] * z[1] + z[2] * z[2];
  const double r = std::sqrt(r2);
  const double H = heat_kernel(s, z);

  if (r < 1e-7 * std::sqrt(s)) {
    // Taylor branch at the origin: phi(r) ~ C (g'(0) + g'''(0) r^2 / 6).
    if (h == 0) {
      const double gppp0 = -0.5 / s / std::sqrt(std::numbers::pi * s);
      const double diag = -H + C * gppp0 / 3.0;
      for (int i = 0; i < 3; ++i) out.value[i][i] = diag;
    }
    return out;  // first derivatives vanish at z = 0 by symmetry
  }

  const double g = oseen_phi_radial(s, r);
  const double gp = std::exp(-r2 / (4.0 * s)) / std::sqrt(std::numbers::pi * s);
  const double gpp = -(r / (2.0 * s)) * gp;
  const double gppp = gp * (r2 / (4.0 * s * s) - 0.5 / s);

  const double Fp = C * (gp / r - g / r2);
  const double Fpp = C * (gpp / r - 2.0 * gp / r2 + 2.0 * g / (r2 * r));
  const double Fppp = C * (gppp / r - 3.0 * gpp / r2 + 6.0 * gp / (r2 * r) -
                           6.0 * g / (r2 * r2));
  const std::array<double, 3> zh{z[0] / r, z[1] / r, z[2] / r};

  if (h == 0) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double dij = i == j ? 1.0 : 0.0;
        const double hess =
            dij * Fp / r + zh[i] * zh[j] * (Fpp - Fp / r);
        out.value[i][j] = -H * dij + hess;
      }
    return out;
  }

  // h == 1: d/dz_k of E_ij.
  const int k = deriv;
  const double dH = -(z[k] / (2.0 * s)) * H;
  const double t1 = Fppp - 3.0 * Fpp / r + 3.0 * Fp / r2;
  const double t2 = Fpp / r - Fp / r2;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double dij = i == j ? 1.0 : 0.0;
      const double dik = i == k ? 1.0 : 0.0;
      const double djk = j == k ? 1.0 : 0.0;
      const double third = t1 * zh[i] * zh[j] * zh[k] +
                           t2 * (dij * zh[k] + dik * zh[j] + djk * zh[i]);
      out.value[i][j] = -dH * dij + third;
    }
  return out;
}

}  // namespace mns
