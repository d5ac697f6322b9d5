#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "mns/fft.hpp"
#include "mns/field_ops.hpp"
#include "mns/io.hpp"
#include "mns/norms.hpp"

using namespace mns;
namespace fs = std::filesystem;

namespace {
const double kPi = std::numbers::pi;

GridSpec small_grid() { return GridSpec::make(16, 2.0 * kPi); }

double max_abs(const VelocityField& f) {
  double m = 0.0;
  for (double v : f.samples) m = std::max(m, std::abs(v));
  return m;
}
}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS(GridSpec::make(4, 1.0));
  CHECK_THROWS(GridSpec::make(24, 1.0));  // not a power of two
  CHECK_THROWS(GridSpec::make(16, 0.0));
  CHECK_THROWS(GridSpec::make(16, -2.0));
  GridSpec g = GridSpec::make(16, 3.0);
  CHECK(g.spacing() * g.n == doctest::Approx(g.extent).epsilon(1e-15));
}

TEST_CASE("zero field transforms to zero coefficients") {
  GridSpec g = small_grid();
  SpectralField F = to_spectral(VelocityField::zero(g));
  for (const auto& c : F.coefficients) CHECK(std::abs(c) == 0.0);
}

TEST_CASE("single mode sin(2 pi x/L) e2 has two conjugate coefficients") {
  GridSpec g = small_grid();
  VelocityField f = VelocityField::zero(g);
  const double k = 2.0 * kPi / g.extent;
  std::size_t idx = 0;
  for (int iz = 0; iz < g.n; ++iz)
    for (int iy = 0; iy < g.n; ++iy)
      for (int ix = 0; ix < g.n; ++ix, ++idx)
        f.at(1, idx) = std::sin(k * g.coord(ix));
  SpectralField F = to_spectral(f);
  const std::size_t n3 = g.nodes();
  int nonzero = 0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < n3; ++i)
      if (std::abs(F.coefficients[c * n3 + i]) > 1e-12) ++nonzero;
  CHECK(nonzero == 2);
  // sin(kx) = (e^{ikx} - e^{-ikx}) / 2i: coefficient -i/2 at m = +1.
  const std::size_t plus = g.index(1, 0, 0);
  const std::size_t minus = g.index(g.n - 1, 0, 0);
  CHECK(F.coefficients[n3 + plus].imag() == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(F.coefficients[n3 + minus].imag() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("round trip and Parseval over 100 random fields") {
  GridSpec g = small_grid();
  const double h3 = std::pow(g.spacing(), 3);
  const double L3 = std::pow(g.extent, 3);
  for (int trial = 0; trial < 100; ++trial) {
    VelocityField f = random_field(g, 1000 + trial, 0.8, false);
    SpectralField F = to_spectral(f);
    VelocityField back = from_spectral(F);
    double err = 0.0;
    for (std::size_t i = 0; i < f.samples.size(); ++i)
      err = std::max(err, std::abs(f.samples[i] - back.samples[i]));
    CHECK(err <= 1e-12 * std::max(1.0, max_abs(f)));

    double phys = 0.0;
    for (double v : f.samples) phys += v * v;
    phys *= h3;
    double spec = 0.0;
    for (const auto& c : F.coefficients) spec += std::norm(c);
    spec *= L3;
    CHECK(phys == doctest::Approx(spec).epsilon(1e-10));
  }
}

TEST_CASE("transform rejects non-finite entries") {
  GridSpec g = small_grid();
  VelocityField f = VelocityField::zero(g);
  f.samples[5] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS(to_spectral(f));
}

TEST_CASE("projector annihilates gradient fields") {
  GridSpec g = small_grid();
  // f = grad(phi) for a smooth periodic phi, built spectrally.
  VelocityField noise = random_field(g, 77, 1.0, false);
  SpectralField N = to_spectral(noise);
  SpectralField G = SpectralField::zero(g);
  const std::size_t n3 = g.nodes();
  std::size_t idx = 0;
  const std::complex<double> I(0.0, 1.0);
  for (int iz = 0; iz < g.n; ++iz)
    for (int iy = 0; iy < g.n; ++iy)
      for (int ix = 0; ix < g.n; ++ix, ++idx) {
        const std::complex<double> phi = N.coefficients[idx];
        G.coefficients[idx] = I * wavenumber(g, ix) * phi;
        G.coefficients[n3 + idx] = I * wavenumber(g, iy) * phi;
        G.coefficients[2 * n3 + idx] = I * wavenumber(g, iz) * phi;
      }
  VelocityField grad_phi = from_spectral(leray_project(G));
  CHECK(max_abs(grad_phi) <= 1e-10 * std::max(1.0, max_abs(noise)));
}

TEST_CASE("projector idempotence and divergence, 100 random fields") {
  GridSpec g = small_grid();
  for (int trial = 0; trial < 100; ++trial) {
    VelocityField f = random_field(g, 2000 + trial, 0.7, false);
    VelocityField p = leray_project(f);
    VelocityField pp = leray_project(p);
    double idem = 0.0;
    for (std::size_t i = 0; i < p.samples.size(); ++i)
      idem = std::max(idem, std::abs(p.samples[i] - pp.samples[i]));
    CHECK(idem <= 1e-12 * std::max(1.0, max_abs(p)));
    CHECK(divergence_max(p) <= 1e-10 * max_abs(p) / g.spacing());
  }
}

TEST_CASE("projector fixes divergence-free fields") {
  GridSpec g = small_grid();
  VelocityField f = random_field(g, 31, 0.9, true);
  VelocityField p = leray_project(f);
  double diff = 0.0;
  for (std::size_t i = 0; i < f.samples.size(); ++i)
    diff = std::max(diff, std::abs(f.samples[i] - p.samples[i]));
  CHECK(diff <= 1e-12 * std::max(1.0, max_abs(f)));
}

TEST_CASE("datum generators") {
  GridSpec g = small_grid();
  SUBCASE("zero amplitude gives the zero field") {
    VelocityField f = make_datum("curl_gaussian", 0.0, 0.5, g);
    CHECK(max_abs(f) == 0.0);
    CHECK(lq_norm(f, 3.0) == 0.0);
  }
  SUBCASE("oversized scale is rejected") {
    CHECK_THROWS(make_datum("curl_gaussian", 1.0, g.extent / 4.0, g));
  }
  SUBCASE("unknown kind is rejected") {
    CHECK_THROWS(make_datum("vortex_ring", 1.0, 0.5, g));
  }
  SUBCASE("generated fields are solenoidal") {
    for (const char* kind : {"curl_gaussian", "dipole_pair"}) {
      VelocityField f = make_datum(kind, 1.0, 0.5, g);
      CHECK(divergence_max(f) <= 1e-10 * max_abs(f) / g.spacing());
    }
  }
}

TEST_CASE("scaling family: L3 norm independent of lambda under refinement") {
  // U_lambda(x) = lambda U(lambda x) is realized by scale -> scale/lambda
  // (the bump gradient supplies the lambda factor); |U_lambda|_3 = |U_1|_3
  // exactly in the continuum, so the discrete gap must shrink with the grid.
  const double L = 2.0 * kPi;
  const double scale = 0.7;
  double prev_gap = 0.0;
  int step = 0;
  for (int n : {16, 32, 64}) {
    GridSpec g = GridSpec::make(n, L);
    VelocityField u1 = make_datum("curl_gaussian", 1.0, scale, g);
    VelocityField u2 = make_datum("curl_gaussian", 1.0, scale / 2.0, g);
    const double n1 = lq_norm(u1, 3.0);
    const double n2 = lq_norm(u2, 3.0);
    const double gap = std::abs(n1 - n2) / n1;
    if (step > 0) CHECK(gap < prev_gap);
    if (n == 64) CHECK(gap <= 1e-4);
    prev_gap = gap;
    ++step;
  }
}

TEST_CASE("snapshot persistence") {
  GridSpec g = small_grid();
  VelocityField f = random_field(g, 5, 0.6, true);
  f.time_label = 0.25;
  const fs::path dir = fs::temp_directory_path() / "mns_io_test";
  fs::create_directories(dir);
  const fs::path path = dir / "field.mnsf";

  SUBCASE("round trip is bit exact") {
    save_field(path, f);
    VelocityField back = load_field(path);
    CHECK(back.grid.n == g.n);
    CHECK(back.grid.extent == g.extent);
    CHECK(back.time_label == f.time_label);
    REQUIRE(back.samples.size() == f.samples.size());
    bool exact = true;
    for (std::size_t i = 0; i < f.samples.size(); ++i)
      if (back.samples[i] != f.samples[i]) exact = false;
    CHECK(exact);
  }
  SUBCASE("corrupted magic is rejected") {
    save_field(path, f);
    std::fstream s(path, std::ios::in | std::ios::out | std::ios::binary);
    s.seekp(0);
    s.write("XXXX", 4);
    s.close();
    CHECK_THROWS(load_field(path));
  }
  SUBCASE("future version is rejected") {
    save_field(path, f);
    std::fstream s(path, std::ios::in | std::ios::out | std::ios::binary);
    s.seekp(4);
    const std::uint32_t v = 99;
    s.write(reinterpret_cast<const char*>(&v), sizeof v);
    s.close();
    CHECK_THROWS(load_field(path));
  }
  SUBCASE("truncated payload is rejected") {
    save_field(path, f);
    fs::resize_file(path, fs::file_size(path) / 2);
    CHECK_THROWS(load_field(path));
  }
  fs::remove_all(dir);
}

TEST_CASE("random_field is deterministic in (grid, seed)") {
  GridSpec g = small_grid();
  VelocityField a = random_field(g, 42, 0.5, true);
  VelocityField b = random_field(g, 42, 0.5, true);
  bool same = true;
  for (std::size_t i = 0; i < a.samples.size(); ++i)
    if (a.samples[i] != b.samples[i]) same = false;
  CHECK(same);
  VelocityField c = random_field(g, 43, 0.5, true);
  bool differ = false;
  for (std::size_t i = 0; i < a.samples.size(); ++i)
    if (a.samples[i] != c.samples[i]) differ = true;
  CHECK(differ);
}
