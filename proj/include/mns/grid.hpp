// Periodic-cube grid and field containers used throughout the toolkit.
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mns {

/// Uniform periodic grid: n points per axis on a cube of side `extent`.
struct GridSpec {
  int n = 0;          // points per axis, power of two, >= 8
  double extent = 0;  // side length L of the periodic cube

  static GridSpec make(int n, double extent);

  double spacing() const { return extent / n; }
  std::size_t nodes() const {
    return static_cast<std::size_t>(n) * n * n;
  }
  std::size_t index(int ix, int iy, int iz) const {
    return static_cast<std::size_t>(ix) +
           static_cast<std::size_t>(n) *
               (static_cast<std::size_t>(iy) +
                static_cast<std::size_t>(n) * static_cast<std::size_t>(iz));
  }
  /// Node coordinate along one axis, in [0, extent).
  double coord(int i) const { return spacing() * i; }

  bool operator==(const GridSpec& o) const {
    return n == o.n && extent == o.extent;
  }
};

/// Scalar samples on a grid, x-fastest ordering.
struct ScalarField {
  GridSpec grid;
  std::vector<double> samples;

  static ScalarField zero(const GridSpec& g) {
    return ScalarField{g, std::vector<double>(g.nodes(), 0.0)};
  }
};

/// Three-component velocity samples, component-major, x-fastest within a
/// component: samples[c * n^3 + index(ix,iy,iz)].
struct VelocityField {
  GridSpec grid;
  std::vector<double> samples;
  double time_label = 0.0;  // metadata only

  static VelocityField zero(const GridSpec& g) {
    return VelocityField{g, std::vector<double>(3 * g.nodes(), 0.0), 0.0};
  }

  double& at(int c, std::size_t idx) { return samples[c * grid.nodes() + idx]; }
  double at(int c, std::size_t idx) const {
    return samples[c * grid.nodes() + idx];
  }
};

/// Fourier coefficients of a VelocityField, full complex cube per component,
/// same layout as the physical samples.
struct SpectralField {
  GridSpec grid;
  std::vector<std::complex<double>> coefficients;  // 3 * n^3

  static SpectralField zero(const GridSpec& g) {
    return SpectralField{
        g, std::vector<std::complex<double>>(3 * g.nodes(), {0.0, 0.0})};
  }
};

/// Integer frequency along one axis for coefficient index j: values in
/// [-n/2, n/2), with the Nyquist slot mapped to -n/2.
inline int freq_of_index(int j, int n) { return j <= n / 2 - 1 ? j : j - n; }

void require_finite(const std::vector<double>& v, const std::string& what);

}  // namespace mns
