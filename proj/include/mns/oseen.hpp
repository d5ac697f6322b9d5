// Physical-space Oseen tensor evaluation, used only by the kernel-bound
// audits. Components: E_ij(s,z) = -H(s,z) delta_ij + D_i D_j phi(s,z), with
// phi built from the Gaussian error integral of the heat kernel; the 1-D
// integral is evaluated by adaptive quadrature to 1e-10 relative.
#pragma once

#include <array>

#include "mns/grid.hpp"

namespace mns {

using Mat3 = std::array<std::array<double, 3>, 3>;

struct OseenEval {
  double s = 0.0;
  std::array<double, 3> z{};
  int h = 0;       // spatial derivative order (0 or 1)
  int deriv = 0;   // derivative direction when h == 1
  Mat3 value{};
};

/// Heat kernel H(t,z) = (4 pi t)^(-3/2) exp(-|z|^2 / 4t).
double heat_kernel(double t, const std::array<double, 3>& z);

/// E(s,z) for h = 0; d/dz_deriv E(s,z) for h = 1. Rejects s <= 0 and h > 1.
OseenEval oseen_point_eval(double s, const std::array<double, 3>& z, int h,
                           int deriv = 0);

/// Adaptive Simpson quadrature of the radial integral defining phi,
/// exposed for the audits: (1/sqrt(pi*s)) * integral_0^r exp(-a^2/4s) da.
double oseen_phi_radial(double s, double r);

}  // namespace mns
