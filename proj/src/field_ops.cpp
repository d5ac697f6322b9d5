#include "mns/field_ops.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace mns {

GridSpec GridSpec::make(int n, double extent) {
  if (n < 8) throw std::invalid_argument("GridSpec: n must be >= 8");
  if ((n & (n - 1)) != 0)
    throw std::invalid_argument("GridSpec: n must be a power of two");
  if (!(extent > 0.0))
    throw std::invalid_argument("GridSpec: extent must be positive");
  return GridSpec{n, extent};
}

void require_finite(const std::vector<double>& v, const std::string& what) {
  for (double x : v)
    if (!std::isfinite(x))
      throw std::invalid_argument(what + ": non-finite entry");
}

double wavenumber(const GridSpec& g, int j) {
  return 2.0 * std::numbers::pi / g.extent * freq_of_index(j, g.n);
}

// Derivative wavenumber: the Nyquist slot is zeroed so that ik-multiplication
// keeps real fields real and odd symmetry intact.
double deriv_wavenumber(const GridSpec& g, int j) {
  if (j == g.n / 2) return 0.0;
  return wavenumber(g, j);
}

void zero_nyquist(SpectralField& F) {
  const GridSpec& g = F.grid;
  const std::size_t n3 = g.nodes();
  const int ny = g.n / 2;
  std::size_t idx = 0;
  for (int jz = 0; jz < g.n; ++jz)
    for (int jy = 0; jy < g.n; ++jy)
      for (int jx = 0; jx < g.n; ++jx, ++idx)
        if (jx == ny || jy == ny || jz == ny)
          for (int c = 0; c < 3; ++c) F.coefficients[c * n3 + idx] = 0.0;
}

namespace {

template <typename F>
void for_each_mode(const GridSpec& g, F&& fn) {
  const int n = g.n;
  std::size_t idx = 0;
  for (int jz = 0; jz < n; ++jz)
    for (int jy = 0; jy < n; ++jy)
      for (int jx = 0; jx < n; ++jx, ++idx) fn(idx, jx, jy, jz);
}

}  // namespace

SpectralField leray_project(const SpectralField& F) {
  SpectralField out = F;
  const GridSpec& g = F.grid;
  const std::size_t n3 = g.nodes();
  for_each_mode(g, [&](std::size_t idx, int jx, int jy, int jz) {
    const double kx = wavenumber(g, jx);
    const double ky = wavenumber(g, jy);
    const double kz = wavenumber(g, jz);
    const double k2 = kx * kx + ky * ky + kz * kz;
    if (k2 == 0.0) return;  // mean mode preserved
    const std::complex<double> u = F.coefficients[idx];
    const std::complex<double> v = F.coefficients[n3 + idx];
    const std::complex<double> w = F.coefficients[2 * n3 + idx];
    const std::complex<double> kdotu = (kx * u + ky * v + kz * w) / k2;
    out.coefficients[idx] = u - kx * kdotu;
    out.coefficients[n3 + idx] = v - ky * kdotu;
    out.coefficients[2 * n3 + idx] = w - kz * kdotu;
  });
  return out;
}

VelocityField leray_project(const VelocityField& f) {
  VelocityField out = from_spectral(leray_project(to_spectral(f)));
  out.time_label = f.time_label;
  return out;
}

ScalarField divergence(const VelocityField& f) {
  const GridSpec& g = f.grid;
  const std::size_t n3 = g.nodes();
  SpectralField F = to_spectral(f);
  std::vector<std::complex<double>> div(n3, {0.0, 0.0});
  const std::complex<double> I(0.0, 1.0);
  for_each_mode(g, [&](std::size_t idx, int jx, int jy, int jz) {
    div[idx] = I * (deriv_wavenumber(g, jx) * F.coefficients[idx] +
                    deriv_wavenumber(g, jy) * F.coefficients[n3 + idx] +
                    deriv_wavenumber(g, jz) * F.coefficients[2 * n3 + idx]);
  });
  return scalar_from_spectral(g, div);
}

double divergence_max(const VelocityField& f) {
  ScalarField d = divergence(f);
  double m = 0.0;
  for (double x : d.samples) m = std::max(m, std::abs(x));
  return m;
}

std::array<std::array<ScalarField, 3>, 3> gradient(const VelocityField& f) {
  const GridSpec& g = f.grid;
  const std::size_t n3 = g.nodes();
  SpectralField F = to_spectral(f);
  std::array<std::array<ScalarField, 3>, 3> out;
  const std::complex<double> I(0.0, 1.0);
  for (int c = 0; c < 3; ++c) {
    for (int axis = 0; axis < 3; ++axis) {
      std::vector<std::complex<double>> d(n3);
      for_each_mode(g, [&](std::size_t idx, int jx, int jy, int jz) {
        const int jj = axis == 0 ? jx : axis == 1 ? jy : jz;
        d[idx] = I * deriv_wavenumber(g, jj) * F.coefficients[c * n3 + idx];
      });
      out[c][axis] = scalar_from_spectral(g, d);
    }
  }
  return out;
}

ScalarField gradient_magnitude(const VelocityField& f) {
  auto grad = gradient(f);
  ScalarField out = ScalarField::zero(f.grid);
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    double s = 0.0;
    for (int c = 0; c < 3; ++c)
      for (int a = 0; a < 3; ++a) s += grad[c][a].samples[i] * grad[c][a].samples[i];
    out.samples[i] = std::sqrt(s);
  }
  return out;
}

ScalarField second_gradient_magnitude(const VelocityField& f) {
  const GridSpec& g = f.grid;
  const std::size_t n3 = g.nodes();
  SpectralField F = to_spectral(f);
  ScalarField out = ScalarField::zero(g);
  std::vector<std::complex<double>> d(n3);
  std::vector<double> acc(n3, 0.0);
  for (int c = 0; c < 3; ++c) {
    for (int a = 0; a < 3; ++a) {
      for (int b = a; b < 3; ++b) {
        for_each_mode(g, [&](std::size_t idx, int jx, int jy, int jz) {
          const int ja = a == 0 ? jx : a == 1 ? jy : jz;
          const int jb = b == 0 ? jx : b == 1 ? jy : jz;
          d[idx] = -deriv_wavenumber(g, ja) * deriv_wavenumber(g, jb) *
                   F.coefficients[c * n3 + idx];
        });
        ScalarField dd = scalar_from_spectral(g, d);
        const double mult = (a == b) ? 1.0 : 2.0;  // off-diagonal pairs
        for (std::size_t i = 0; i < n3; ++i)
          acc[i] += mult * dd.samples[i] * dd.samples[i];
      }
    }
  }
  for (std::size_t i = 0; i < n3; ++i) out.samples[i] = std::sqrt(acc[i]);
  return out;
}

ScalarField magnitude(const VelocityField& f) {
  const std::size_t n3 = f.grid.nodes();
  ScalarField out = ScalarField::zero(f.grid);
  for (std::size_t i = 0; i < n3; ++i) {
    const double u = f.samples[i];
    const double v = f.samples[n3 + i];
    const double w = f.samples[2 * n3 + i];
    out.samples[i] = std::sqrt(u * u + v * v + w * w);
  }
  return out;
}

DatumKind datum_kind_from_string(const std::string& s) {
  if (s == "zero") return DatumKind::Zero;
  if (s == "curl_gaussian") return DatumKind::CurlGaussian;
  if (s == "dipole_pair") return DatumKind::DipolePair;
  throw std::invalid_argument("unknown datum kind: " + s);
}

namespace {

// Displacement from the cube center, wrapped to the nearest periodic image.
std::array<double, 3> centered(const GridSpec& g, int ix, int iy, int iz) {
  const double L = g.extent;
  auto wrap = [L](double d) {
    if (d > L / 2) d -= L;
    if (d < -L / 2) d += L;
    return d;
  };
  const double c = L / 2;
  return {wrap(g.coord(ix) - c), wrap(g.coord(iy) - c), wrap(g.coord(iz) - c)};
}

// curl of A * exp(-|x - x0|^2 / (2 sigma^2)) * d  evaluated analytically:
// grad(g) x d.
void add_curl_bump(VelocityField& f, double amplitude, double sigma,
                   const std::array<double, 3>& offset,
                   const std::array<double, 3>& dir) {
  const GridSpec& g = f.grid;
  const std::size_t n3 = g.nodes();
  std::size_t idx = 0;
  for (int iz = 0; iz < g.n; ++iz)
    for (int iy = 0; iy < g.n; ++iy)
      for (int ix = 0; ix < g.n; ++ix, ++idx) {
        auto x = centered(g, ix, iy, iz);
        for (int a = 0; a < 3; ++a) x[a] -= offset[a];
        const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        const double gb = amplitude * std::exp(-r2 / (2.0 * sigma * sigma));
        const double gx = -x[0] / (sigma * sigma) * gb;
        const double gy = -x[1] / (sigma * sigma) * gb;
        const double gz = -x[2] / (sigma * sigma) * gb;
        f.samples[idx] += gy * dir[2] - gz * dir[1];
        f.samples[n3 + idx] += gz * dir[0] - gx * dir[2];
        f.samples[2 * n3 + idx] += gx * dir[1] - gy * dir[0];
      }
}

}  // namespace

VelocityField make_datum(DatumKind kind, double amplitude, double scale,
                         const GridSpec& grid) {
  VelocityField f = VelocityField::zero(grid);
  if (kind == DatumKind::Zero || amplitude == 0.0) return f;
  if (!(scale > 0.0)) throw std::invalid_argument("make_datum: scale <= 0");
  if (scale > grid.extent / 8.0)
    throw std::invalid_argument(
        "make_datum: scale too large for the periodic cube (must be <= "
        "extent/8)");
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  const std::array<double, 3> dir{inv_sqrt3, inv_sqrt3, inv_sqrt3};
  switch (kind) {
    case DatumKind::CurlGaussian:
      add_curl_bump(f, amplitude, scale, {0, 0, 0}, dir);
      break;
    case DatumKind::DipolePair:
      add_curl_bump(f, amplitude, scale, {1.5 * scale, 0, 0}, dir);
      add_curl_bump(f, -amplitude, scale, {-1.5 * scale, 0, 0}, dir);
      break;
    default:
      break;
  }
  // The analytic curl is solenoidal in the continuum but picks up a spectral
  // truncation residue on the grid. Drop the sign-ambiguous Nyquist planes and
  // project, so the discrete divergence vanishes exactly.
  SpectralField F = to_spectral(f);
  zero_nyquist(F);
  return from_spectral(leray_project(F));
}

VelocityField make_datum(const std::string& kind, double amplitude,
                         double scale, const GridSpec& grid) {
  return make_datum(datum_kind_from_string(kind), amplitude, scale, grid);
}

VelocityField random_field(const GridSpec& grid, std::uint64_t seed,
                           double correlation_length, bool solenoidal) {
  VelocityField f = VelocityField::zero(grid);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (double& x : f.samples) x = gauss(rng);
  SpectralField F = to_spectral(f);
  const std::size_t n3 = grid.nodes();
  for_each_mode(grid, [&](std::size_t idx, int jx, int jy, int jz) {
    const double kx = wavenumber(grid, jx);
    const double ky = wavenumber(grid, jy);
    const double kz = wavenumber(grid, jz);
    const double k2 = kx * kx + ky * ky + kz * kz;
    const double shape = std::exp(-k2 * correlation_length * correlation_length);
    for (int c = 0; c < 3; ++c) F.coefficients[c * n3 + idx] *= shape;
  });
  if (solenoidal) F = leray_project(F);
  return from_spectral(F);
}

VelocityField axpy(double alpha, const VelocityField& x,
                   const VelocityField& y) {
  if (!(x.grid == y.grid)) throw std::invalid_argument("axpy: grid mismatch");
  VelocityField out = y;
  for (std::size_t i = 0; i < out.samples.size(); ++i)
    out.samples[i] += alpha * x.samples[i];
  return out;
}

VelocityField scale_field(double alpha, const VelocityField& x) {
  VelocityField out = x;
  for (double& v : out.samples) v *= alpha;
  return out;
}

}  // namespace mns
