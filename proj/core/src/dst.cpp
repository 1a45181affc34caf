#include "fracpow/dst.hpp"

#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "fracpow/errors.hpp"

namespace fracpow {

namespace {
// The FFTW planner mutates global state; serialize plan create/destroy.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct SineTransform2D::Impl {
  fftw_plan plan = nullptr;
  double* in = nullptr;
  double* out = nullptr;
  std::size_t n = 0;

  ~Impl() {
    if (plan) {
      std::lock_guard<std::mutex> lock(planner_mutex());
      fftw_destroy_plan(plan);
    }
    if (in) fftw_free(in);
    if (out) fftw_free(out);
  }
};

SineTransform2D::SineTransform2D(int N1, int N2)
    : N1_(N1), N2_(N2), impl_(std::make_unique<Impl>()) {
  if (N1 < 2 || N2 < 2) {
    throw ConfigError("sine transform needs at least 2 panels per dimension");
  }
  const int n1 = N1 - 1;
  const int n2 = N2 - 1;
  impl_->n = static_cast<std::size_t>(n1) * n2;
  impl_->in = fftw_alloc_real(impl_->n);
  impl_->out = fftw_alloc_real(impl_->n);
  if (!impl_->in || !impl_->out) {
    throw ConfigError("sine transform buffer allocation failed");
  }
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    // Storage is (i2,i1) with i1 fastest, i.e. n2 rows of length n1.
    impl_->plan = fftw_plan_r2r_2d(n2, n1, impl_->in, impl_->out,
                                   FFTW_RODFT00, FFTW_RODFT00, FFTW_ESTIMATE);
  }
  if (!impl_->plan) {
    throw ConfigError("sine transform planning failed");
  }
}

SineTransform2D::SineTransform2D(const GridSpec& grid)
    : SineTransform2D(grid.N1, grid.N2) {}

SineTransform2D::~SineTransform2D() = default;

void SineTransform2D::forward(const double* in, double* out) const {
  std::memcpy(impl_->in, in, impl_->n * sizeof(double));
  fftw_execute(impl_->plan);
  std::memcpy(out, impl_->out, impl_->n * sizeof(double));
}

void SineTransform2D::inverse(const double* in, double* out) const {
  forward(in, out);
  const double scale = 1.0 / (4.0 * N1_ * N2_);
  for (std::size_t i = 0; i < impl_->n; ++i) out[i] *= scale;
}

void SineTransform2D::forward(const std::vector<double>& in,
                              std::vector<double>& out) const {
  if (in.size() != impl_->n) throw ConfigError("forward(): size mismatch");
  out.resize(impl_->n);
  forward(in.data(), out.data());
}

void SineTransform2D::inverse(const std::vector<double>& in,
                              std::vector<double>& out) const {
  if (in.size() != impl_->n) throw ConfigError("inverse(): size mismatch");
  out.resize(impl_->n);
  inverse(in.data(), out.data());
}

std::vector<double> laplace_eigenvalues_1d(double l, int N) {
  if (!(l > 0.0) || N < 2) {
    throw ConfigError("laplace_eigenvalues_1d: need l > 0 and N >= 2");
  }
  const double h = l / N;
  std::vector<double> lam(N - 1);
  for (int k = 1; k < N; ++k) {
    const double s = std::sin(0.5 * k * std::numbers::pi / N);
    lam[k - 1] = 4.0 / (h * h) * s * s;
  }
  return lam;
}

}  // namespace fracpow
