#include "mns/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace mns {

TimeMesh TimeMesh::graded(double t_final, int m, double gamma) {
  if (!(t_final > 0.0)) throw std::invalid_argument("TimeMesh: t_final <= 0");
  if (m < 8) throw std::invalid_argument("TimeMesh: need at least 8 nodes");
  if (gamma < 1.0) throw std::invalid_argument("TimeMesh: gamma < 1");
  TimeMesh mesh;
  mesh.t_final = t_final;
  mesh.gamma = gamma;
  mesh.nodes.resize(m);
  for (int j = 1; j <= m; ++j) {
    const double s = static_cast<double>(j) / m;
    const double a = std::pow(s, gamma);
    const double b = std::pow(1.0 - s, gamma);
    mesh.nodes[j - 1] = t_final * a / (a + b);
  }
  mesh.nodes.back() = t_final;
  return mesh;
}

namespace {

double mode_k2(const GridSpec& g, int jx, int jy, int jz) {
  const double kx = wavenumber(g, jx);
  const double ky = wavenumber(g, jy);
  const double kz = wavenumber(g, jz);
  return kx * kx + ky * ky + kz * kz;
}

template <typename F>
void for_each_mode(const GridSpec& g, F&& fn) {
  const int n = g.n;
  std::size_t idx = 0;
  for (int jz = 0; jz < n; ++jz)
    for (int jy = 0; jy < n; ++jy)
      for (int jx = 0; jx < n; ++jx, ++idx) fn(idx, jx, jy, jz);
}

void apply_heat_symbol(SpectralField& F, double t) {
  const GridSpec& g = F.grid;
  const std::size_t n3 = g.nodes();
  for_each_mode(g, [&](std::size_t idx, int jx, int jy, int jz) {
    const double damp = std::exp(-t * mode_k2(g, jx, jy, jz));
    for (int c = 0; c < 3; ++c) F.coefficients[c * n3 + idx] *= damp;
  });
}

}  // namespace

VelocityField heat_propagate(const VelocityField& f, double t) {
  if (t < 0.0) throw std::invalid_argument("heat_propagate: negative time");
  SpectralField F = to_spectral(f);
  apply_heat_symbol(F, t);
  VelocityField out = from_spectral(F);
  out.time_label = f.time_label + t;
  return out;
}

Trajectory heat_flow(const VelocityField& datum, const TimeMesh& mesh) {
  SpectralField F0 = to_spectral(datum);
  Trajectory traj;
  traj.mesh = mesh;
  traj.fields.reserve(mesh.nodes.size());
  for (double t : mesh.nodes) {
    SpectralField F = F0;
    apply_heat_symbol(F, t);
    VelocityField u = from_spectral(F);
    u.time_label = t;
    traj.fields.push_back(std::move(u));
  }
  return traj;
}

std::vector<SpectralField> nonlinear_sources(const Trajectory& a,
                                             const Trajectory& b,
                                             int* projector_warnings) {
  if (a.size() != b.size() || a.size() != a.mesh.nodes.size())
    throw std::invalid_argument("nonlinear_sources: history/mesh mismatch");
  const GridSpec& g = a.fields.front().grid;
  const std::size_t n3 = g.nodes();
  const std::complex<double> I(0.0, 1.0);

  std::vector<SpectralField> sources;
  sources.reserve(a.size());
  std::vector<std::complex<double>> phat(n3);
  for (std::size_t j = 0; j < a.size(); ++j) {
    const VelocityField& fa = a.at(j);
    const VelocityField& fb = b.at(j);
    // Non-solenoidal inputs are tolerated: the Leray projection below is part
    // of the operator, but count noticeably divergent histories.
    if (projector_warnings) {
      double scale = 0.0;
      for (double x : fa.samples) scale = std::max(scale, std::abs(x));
      if (scale > 0.0 && divergence_max(fa) > 1e-6 * scale / g.spacing())
        ++*projector_warnings;
    }
    SpectralField S = SpectralField::zero(g);
    for (int ci = 0; ci < 3; ++ci) {
      for (int cj = 0; cj < 3; ++cj) {
        for (std::size_t i = 0; i < n3; ++i)
          phat[i] = fa.samples[ci * n3 + i] * fb.samples[cj * n3 + i];
        fft_forward(g, phat.data());
        for_each_mode(g, [&](std::size_t idx, int jx, int jy, int jz) {
          const int jj = cj == 0 ? jx : cj == 1 ? jy : jz;
          S.coefficients[ci * n3 + idx] +=
              I * deriv_wavenumber(g, jj) * phat[idx];
        });
      }
    }
    // The pointwise product aliases energy into the Nyquist planes, where the
    // derivative stencil and the projector disagree; truncate before
    // projecting so the source stays exactly solenoidal.
    zero_nyquist(S);
    sources.push_back(leray_project(S));
  }
  return sources;
}

VelocityField nonlinear_term_at(const std::vector<SpectralField>& sources,
                                const TimeMesh& mesh, std::size_t target) {
  if (sources.size() != mesh.nodes.size())
    throw std::invalid_argument("nonlinear_term_at: source/mesh mismatch");
  if (target >= sources.size())
    throw std::invalid_argument("nonlinear_term_at: target out of range");
  const GridSpec& g = sources.front().grid;
  const std::size_t n3 = g.nodes();
  const double t = mesh.nodes[target];

  // Trapezoid over {0, tau_1, ..., tau_target}; the integrand at tau = 0 is
  // frozen at its tau_1 value (histories start at the first node).
  SpectralField acc = SpectralField::zero(g);
  std::vector<double> w(target + 1, 0.0);
  double prev = 0.0;
  for (std::size_t j = 0; j <= target; ++j) {
    const double tau = mesh.nodes[j];
    const double dt = tau - prev;
    if (j == 0) {
      w[0] += dt;  // rectangle on [0, tau_1] with the tau_1 value
    } else {
      w[j - 1] += 0.5 * dt;
      w[j] += 0.5 * dt;
    }
    prev = tau;
  }
  for (std::size_t j = 0; j <= target; ++j) {
    const double dtau = t - mesh.nodes[j];
    const SpectralField& S = sources[j];
    for_each_mode(g, [&](std::size_t idx, int jx, int jy, int jz) {
      const double damp = w[j] * std::exp(-dtau * mode_k2(g, jx, jy, jz));
      for (int c = 0; c < 3; ++c)
        acc.coefficients[c * n3 + idx] += damp * S.coefficients[c * n3 + idx];
    });
  }
  VelocityField out = from_spectral(acc);
  out.time_label = t;
  return out;
}

VelocityField nonlinear_term(const Trajectory& a, const Trajectory& b,
                             const TimeMesh& mesh, double t) {
  std::size_t target = mesh.nodes.size();
  for (std::size_t j = 0; j < mesh.nodes.size(); ++j)
    if (std::abs(mesh.nodes[j] - t) <= 1e-12 * mesh.t_final) target = j;
  if (target == mesh.nodes.size())
    throw std::invalid_argument("nonlinear_term: t is not a mesh node");
  auto sources = nonlinear_sources(a, b);
  return nonlinear_term_at(sources, mesh, target);
}

ScalarField pressure_solve(const VelocityField& u) {
  const GridSpec& g = u.grid;
  const std::size_t n3 = g.nodes();
  std::vector<std::complex<double>> pihat(n3, {0.0, 0.0});
  std::vector<std::complex<double>> phat(n3);
  for (int ci = 0; ci < 3; ++ci) {
    for (int cj = 0; cj < 3; ++cj) {
      for (std::size_t i = 0; i < n3; ++i)
        phat[i] = u.samples[ci * n3 + i] * u.samples[cj * n3 + i];
      fft_forward(g, phat.data());
      for_each_mode(g, [&](std::size_t idx, int jx, int jy, int jz) {
        const double k2 = mode_k2(g, jx, jy, jz);
        if (k2 == 0.0) return;
        const double ki = deriv_wavenumber(g, ci == 0 ? jx : ci == 1 ? jy : jz);
        const double kj = deriv_wavenumber(g, cj == 0 ? jx : cj == 1 ? jy : jz);
        pihat[idx] -= ki * kj / k2 * phat[idx];
      });
    }
  }
  pihat[0] = 0.0;  // zero-mean gauge
  return scalar_from_spectral(g, pihat);
}

}  // namespace mns
