// FFT contract between physical and spectral representations.
//
// to_spectral returns coefficients normalized so that
//   f(x) = sum_k fhat(k) exp(i k . x),   k = (2*pi/L) * m,  m integer.
// Plans are cached per grid size behind an internal mutex; execution on
// distinct arrays is reentrant.
#pragma once

#include "mns/grid.hpp"

namespace mns {

SpectralField to_spectral(const VelocityField& f);
VelocityField from_spectral(const SpectralField& F);

// Scalar transforms share the same plan cache.
std::vector<std::complex<double>> scalar_to_spectral(const ScalarField& f);
ScalarField scalar_from_spectral(const GridSpec& g,
                                 const std::vector<std::complex<double>>& F);

// In-place helpers on raw n^3 complex cubes.
void fft_forward(const GridSpec& g, std::complex<double>* data);
void fft_backward(const GridSpec& g, std::complex<double>* data);

}  // namespace mns
