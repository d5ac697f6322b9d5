#include "mns/norms.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mns/field_ops.hpp"

namespace mns {

namespace {

double lq_of_magnitude(const GridSpec& g, const std::vector<double>& mag,
                       double q) {
  if (q < 1.0) throw std::invalid_argument("lq_norm: q < 1");
  if (std::isinf(q)) return *std::max_element(mag.begin(), mag.end());
  const double h3 = g.spacing() * g.spacing() * g.spacing();
  double acc = 0.0;
  for (double m : mag) acc += std::pow(m, q);
  return std::pow(h3 * acc, 1.0 / q);
}

}  // namespace

double lq_norm(const VelocityField& f, double q) {
  ScalarField mag = magnitude(f);
  return lq_of_magnitude(f.grid, mag.samples, q);
}

double lq_norm(const ScalarField& f, double q) {
  std::vector<double> mag(f.samples.size());
  for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(f.samples[i]);
  return lq_of_magnitude(f.grid, mag, q);
}

double localized_l3(const VelocityField& f, double rho) {
  const GridSpec& g = f.grid;
  if (!(rho > 0.0) || rho > g.extent / 2.0)
    throw std::invalid_argument("localized_l3: rho out of (0, extent/2]");
  const std::size_t n3 = g.nodes();
  const double h3 = g.spacing() * g.spacing() * g.spacing();

  ScalarField cube = ScalarField::zero(g);
  {
    ScalarField mag = magnitude(f);
    for (std::size_t i = 0; i < n3; ++i) {
      const double m = mag.samples[i];
      cube.samples[i] = m * m * m;
    }
  }
  // Sharp ball indicator centered at the origin node, periodic wrap.
  ScalarField ball = ScalarField::zero(g);
  const double L = g.extent;
  std::size_t idx = 0;
  for (int iz = 0; iz < g.n; ++iz)
    for (int iy = 0; iy < g.n; ++iy)
      for (int ix = 0; ix < g.n; ++ix, ++idx) {
        auto wrap = [L](double d) { return d > L / 2 ? d - L : d; };
        const double dx = wrap(g.coord(ix));
        const double dy = wrap(g.coord(iy));
        const double dz = wrap(g.coord(iz));
        if (dx * dx + dy * dy + dz * dz < rho * rho) ball.samples[idx] = 1.0;
      }

  auto chat = scalar_to_spectral(cube);
  auto bhat = scalar_to_spectral(ball);
  // Circular correlation: windowed sums h^3 sum_{|y-x|<rho} |f(y)|^3.
  for (std::size_t i = 0; i < n3; ++i)
    chat[i] *= std::conj(bhat[i]) * static_cast<double>(n3);
  ScalarField window = scalar_from_spectral(g, chat);
  double best = 0.0;
  for (double v : window.samples) best = std::max(best, v);
  return std::cbrt(std::max(best, 0.0) * h3);
}

NormTriple triple_norm(const Trajectory& history, double rho, double t) {
  if (history.fields.empty())
    throw std::invalid_argument("triple_norm: empty history");
  if (!(rho > 0.0)) throw std::invalid_argument("triple_norm: rho <= 0");
  NormTriple out;
  out.rho = rho;
  out.t = t;
  double sup_l3 = 0.0;
  for (std::size_t j = 0; j < history.size(); ++j) {
    const double tau = history.mesh.nodes[j];
    if (tau > t * (1.0 + 1e-12)) break;
    const VelocityField& u = history.at(j);
    out.sup_weighted =
        std::max(out.sup_weighted, std::sqrt(tau) * lq_norm(u, q_inf));
    out.localized = std::max(out.localized, localized_l3(u, rho));
    sup_l3 = std::max(sup_l3, lq_norm(u, 3.0));
  }
  out.l3_weighted = std::sqrt(t) / rho * sup_l3;
  return out;
}

HolderSample holder_quotient(const VelocityField& f, double theta, int n_pairs,
                             std::uint64_t seed) {
  if (theta < 0.0 || theta >= 1.0)
    throw std::invalid_argument("holder_quotient: theta outside [0,1)");
  if (n_pairs < 100)
    throw std::invalid_argument("holder_quotient: need at least 100 pairs");
  const GridSpec& g = f.grid;
  const std::size_t n3 = g.nodes();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, g.n - 1);
  HolderSample out;
  out.theta = theta;
  const double L = g.extent;
  auto wrap = [L](double d) {
    if (d > L / 2) d -= L;
    if (d < -L / 2) d += L;
    return d;
  };
  while (out.pair_count < n_pairs) {
    const int ax = pick(rng), ay = pick(rng), az = pick(rng);
    const int bx = pick(rng), by = pick(rng), bz = pick(rng);
    if (ax == bx && ay == by && az == bz) continue;
    const std::size_t ia = g.index(ax, ay, az);
    const std::size_t ib = g.index(bx, by, bz);
    double diff2 = 0.0;
    for (int c = 0; c < 3; ++c) {
      const double d = f.samples[c * n3 + ia] - f.samples[c * n3 + ib];
      diff2 += d * d;
    }
    const double dx = wrap(g.coord(ax) - g.coord(bx));
    const double dy = wrap(g.coord(ay) - g.coord(by));
    const double dz = wrap(g.coord(az) - g.coord(bz));
    const double sep = std::sqrt(dx * dx + dy * dy + dz * dz);
    out.quotient =
        std::max(out.quotient, std::sqrt(diff2) / std::pow(sep, theta));
    ++out.pair_count;
  }
  return out;
}

}  // namespace mns
