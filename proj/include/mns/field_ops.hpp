// Differential operators in Fourier space, the Leray projector, and the
// test-datum generators.
#pragma once

#include <array>
#include <cstdint>

#include "mns/fft.hpp"
#include "mns/grid.hpp"

namespace mns {

/// Wavevector component (2*pi/L)*m for coefficient index j, with the Nyquist
/// slot treated as frequency -n/2.
double wavenumber(const GridSpec& g, int j);
/// Same, but zero on the Nyquist slot; the derivative stencil.
double deriv_wavenumber(const GridSpec& g, int j);

/// Zero every coefficient with a Nyquist index in any direction. Keeps the
/// derivative stencil and the projector consistent on what remains.
void zero_nyquist(SpectralField& F);

/// I - k k^T / |k|^2 applied mode-wise; the zero mode passes through.
SpectralField leray_project(const SpectralField& F);
VelocityField leray_project(const VelocityField& f);

/// Spectral divergence, Nyquist modes dropped from the derivative stencil.
ScalarField divergence(const VelocityField& f);

/// max |div f| over nodes; the discrete solenoidality residual.
double divergence_max(const VelocityField& f);

/// d f_c / d x_axis for every component; result[c][axis].
std::array<std::array<ScalarField, 3>, 3> gradient(const VelocityField& f);

/// Pointwise Frobenius magnitude of the velocity gradient tensor.
ScalarField gradient_magnitude(const VelocityField& f);
/// Pointwise magnitude of all second derivatives of all components.
ScalarField second_gradient_magnitude(const VelocityField& f);

/// Pointwise Euclidean magnitude |f(x)|.
ScalarField magnitude(const VelocityField& f);

enum class DatumKind { Zero, CurlGaussian, DipolePair };

DatumKind datum_kind_from_string(const std::string& s);

/// Divergence-free, rapidly decaying datum centered in the cube.
///   zero          -> identically zero
///   curl_gaussian -> curl of a Gaussian vector bump of width `scale`;
///                    the family scale -> scale/lambda realizes the
///                    rescaling U_lambda(x) = lambda * U(lambda x)
///   dipole_pair   -> two opposite curl bumps offset along x
/// Rejects scale > extent/8 (periodic-image contamination).
VelocityField make_datum(DatumKind kind, double amplitude, double scale,
                         const GridSpec& grid);
VelocityField make_datum(const std::string& kind, double amplitude,
                         double scale, const GridSpec& grid);

/// Smooth random field: white noise shaped by exp(-(|k| l)^2), optionally
/// Leray-projected. Deterministic in (grid, seed).
VelocityField random_field(const GridSpec& grid, std::uint64_t seed,
                           double correlation_length, bool solenoidal);

// Linear-algebra helpers on fields.
VelocityField axpy(double alpha, const VelocityField& x,
                   const VelocityField& y);  // alpha*x + y
VelocityField scale_field(double alpha, const VelocityField& x);

}  // namespace mns
