#include "mns/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace mns {
namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

// FFTW planning is not thread safe; executing a cached plan on caller-owned
// arrays is.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache c;
    return c;
  }

  PlanPair get(int n) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    std::vector<fftw_complex> buf(static_cast<std::size_t>(n) * n * n);
    PlanPair p;
    p.fwd = fftw_plan_dft_3d(n, n, n, buf.data(), buf.data(), FFTW_FORWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_3d(n, n, n, buf.data(), buf.data(), FFTW_BACKWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_[n] = p;
    return p;
  }

 private:
  std::mutex mu_;
  std::map<int, PlanPair> plans_;
};

}  // namespace

void fft_forward(const GridSpec& g, std::complex<double>* data) {
  PlanPair p = PlanCache::instance().get(g.n);
  fftw_execute_dft(p.fwd, reinterpret_cast<fftw_complex*>(data),
                   reinterpret_cast<fftw_complex*>(data));
  const double scale = 1.0 / static_cast<double>(g.nodes());
  const std::size_t n3 = g.nodes();
  for (std::size_t i = 0; i < n3; ++i) data[i] *= scale;
}

void fft_backward(const GridSpec& g, std::complex<double>* data) {
  PlanPair p = PlanCache::instance().get(g.n);
  fftw_execute_dft(p.bwd, reinterpret_cast<fftw_complex*>(data),
                   reinterpret_cast<fftw_complex*>(data));
}

SpectralField to_spectral(const VelocityField& f) {
  require_finite(f.samples, "to_spectral input");
  SpectralField F = SpectralField::zero(f.grid);
  const std::size_t n3 = f.grid.nodes();
  for (int c = 0; c < 3; ++c) {
    std::complex<double>* dst = F.coefficients.data() + c * n3;
    const double* src = f.samples.data() + c * n3;
    for (std::size_t i = 0; i < n3; ++i) dst[i] = src[i];
    fft_forward(f.grid, dst);
  }
  return F;
}

VelocityField from_spectral(const SpectralField& F) {
  VelocityField f = VelocityField::zero(F.grid);
  const std::size_t n3 = F.grid.nodes();
  std::vector<std::complex<double>> buf(n3);
  for (int c = 0; c < 3; ++c) {
    const std::complex<double>* src = F.coefficients.data() + c * n3;
    for (std::size_t i = 0; i < n3; ++i) buf[i] = src[i];
    fft_backward(F.grid, buf.data());
    double* dst = f.samples.data() + c * n3;
    for (std::size_t i = 0; i < n3; ++i) dst[i] = buf[i].real();
  }
  return f;
}

std::vector<std::complex<double>> scalar_to_spectral(const ScalarField& f) {
  require_finite(f.samples, "scalar_to_spectral input");
  std::vector<std::complex<double>> F(f.grid.nodes());
  for (std::size_t i = 0; i < F.size(); ++i) F[i] = f.samples[i];
  fft_forward(f.grid, F.data());
  return F;
}

ScalarField scalar_from_spectral(const GridSpec& g,
                                 const std::vector<std::complex<double>>& F) {
  std::vector<std::complex<double>> buf = F;
  fft_backward(g, buf.data());
  ScalarField f = ScalarField::zero(g);
  for (std::size_t i = 0; i < buf.size(); ++i) f.samples[i] = buf[i].real();
  return f;
}

}  // namespace mns
