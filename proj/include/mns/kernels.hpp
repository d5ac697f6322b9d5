// Heat semigroup, the Duhamel form of the Oseen nonlinear term, and pressure
// recovery. The Oseen convolution is realized in Fourier space as
// heat semigroup o Leray projector o divergence, which coincides with the
// physical-space Oseen-kernel convolution for solenoidal fields.
#pragma once

#include <vector>

#include "mns/field_ops.hpp"
#include "mns/grid.hpp"

namespace mns {

/// Strictly increasing time nodes 0 < tau_1 < ... < tau_M = t_final, graded
/// toward both endpoints.
struct TimeMesh {
  double t_final = 0.0;
  double gamma = 2.0;
  std::vector<double> nodes;

  /// tau_j = t_final * s^gamma / (s^gamma + (1-s)^gamma), s = j/M.
  static TimeMesh graded(double t_final, int m, double gamma = 2.0);
};

/// Velocity history sampled at the nodes of a TimeMesh.
struct Trajectory {
  TimeMesh mesh;
  std::vector<VelocityField> fields;  // fields[j] at mesh.nodes[j]

  const VelocityField& at(std::size_t j) const { return fields.at(j); }
  std::size_t size() const { return fields.size(); }
};

/// exp(t Laplacian) applied spectrally; t >= 0 required. Mean mode invariant,
/// exact semigroup property, commutes with leray_project.
VelocityField heat_propagate(const VelocityField& f, double t);

/// Heat flow of a datum sampled on every mesh node.
Trajectory heat_flow(const VelocityField& datum, const TimeMesh& mesh);

/// Spectral right-hand sides P ik.(a tensor b)(tau_j) for all nodes;
/// the reusable part of the Duhamel integral.
std::vector<SpectralField> nonlinear_sources(const Trajectory& a,
                                             const Trajectory& b,
                                             int* projector_warnings = nullptr);

/// integral_0^t exp((t-tau) Laplacian) P div(a tensor b)(tau) dtau at one
/// node time t = mesh.nodes[target]. Trapezoidal in tau over the graded
/// nodes; the [0, tau_1] sliver uses the tau_1 integrand.
VelocityField nonlinear_term_at(const std::vector<SpectralField>& sources,
                                const TimeMesh& mesh, std::size_t target);

/// Convenience wrapper: histories on `mesh`, evaluation at time t which must
/// coincide with a mesh node.
VelocityField nonlinear_term(const Trajectory& a, const Trajectory& b,
                             const TimeMesh& mesh, double t);

/// Zero-mean solution of Laplacian pi = -div div (u tensor u).
ScalarField pressure_solve(const VelocityField& u);

}  // namespace mns
