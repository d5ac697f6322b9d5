// The functionals of the contraction argument: L^q norms, the localized L^3
// norm over balls of radius rho, the triple norm over a trajectory, and a
// sampled Hoelder quotient.
#pragma once

#include <limits>

#include "mns/grid.hpp"
#include "mns/kernels.hpp"

namespace mns {

/// (h^3 sum |f|^q)^(1/q) over pointwise Euclidean magnitudes; q = inf gives
/// max |f|. Rejects q < 1.
double lq_norm(const VelocityField& f, double q);
double lq_norm(const ScalarField& f, double q);

constexpr double q_inf = std::numeric_limits<double>::infinity();

/// sup over grid centers x of the L^3 norm of f restricted to the periodic
/// ball B(x, rho); computed as a circular convolution of |f|^3 with the
/// sharp ball indicator. Requires 0 < rho <= extent/2.
double localized_l3(const VelocityField& f, double rho);

struct NormTriple {
  double sup_weighted = 0.0;  // sup_tau tau^(1/2) ||u(tau)||_inf
  double localized = 0.0;     // sup_tau ||u(tau)||_{3,rho}
  double l3_weighted = 0.0;   // (t^(1/2)/rho) sup_tau ||u(tau)||_3
  double rho = 0.0;
  double t = 0.0;
  double value() const { return sup_weighted + localized + l3_weighted; }
};

/// Suprema taken over trajectory nodes with tau <= t (lower bounds of the
/// continuum suprema).
NormTriple triple_norm(const Trajectory& history, double rho, double t);

struct HolderSample {
  double theta = 0.0;
  double quotient = 0.0;
  int pair_count = 0;
};

/// Maximum of |f(x)-f(xbar)| / |x-xbar|^theta over randomly sampled node
/// pairs at separation >= one spacing. An estimate, not a certified
/// seminorm. Requires theta in [0,1) and n_pairs >= 100.
HolderSample holder_quotient(const VelocityField& f, double theta, int n_pairs,
                             std::uint64_t seed = 12345);

}  // namespace mns
