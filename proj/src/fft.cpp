#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <memory>
#include <mutex>

namespace efrep::detail {
namespace {

// FFTW planning is not thread safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(double* p) const noexcept { fftw_free(p); }
};

struct PlanDestroy {
  void operator()(fftw_plan_s* p) const noexcept {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};

using PlanPtr = std::unique_ptr<fftw_plan_s, PlanDestroy>;

}  // namespace

std::size_t next_pow2(std::size_t n) noexcept {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<double> fft_self_convolve(std::span<const double> a, std::size_t out_len) {
  if (a.empty() || out_len == 0) return std::vector<double>(out_len, 0.0);
  const std::size_t full = 2 * a.size() - 1;
  const std::size_t len = next_pow2(std::max<std::size_t>(full, 2));
  const std::size_t n_complex = len / 2 + 1;

  // In-place r2c: real data padded to 2 * n_complex doubles.
  std::unique_ptr<double, FftwFree> buf(
      static_cast<double*>(fftw_malloc(sizeof(double) * 2 * n_complex)));
  double* data = buf.get();
  auto* spec = reinterpret_cast<fftw_complex*>(data);
  const int n = static_cast<int>(len);

  PlanPtr forward, backward;
  {
    std::lock_guard lock(planner_mutex());
    forward.reset(fftw_plan_dft_r2c_1d(n, data, spec, FFTW_ESTIMATE));
    backward.reset(fftw_plan_dft_c2r_1d(n, spec, data, FFTW_ESTIMATE));
  }

  std::fill(data, data + 2 * n_complex, 0.0);
  std::copy(a.begin(), a.end(), data);
  fftw_execute(forward.get());
  for (std::size_t k = 0; k < n_complex; ++k) {
    const std::complex<double> z(spec[k][0], spec[k][1]);
    const std::complex<double> sq = z * z;
    spec[k][0] = sq.real();
    spec[k][1] = sq.imag();
  }
  fftw_execute(backward.get());

  const double scale = 1.0 / static_cast<double>(len);
  std::vector<double> out(out_len, 0.0);
  const std::size_t m = std::min(out_len, full);
  for (std::size_t k = 0; k < m; ++k) out[k] = data[k] * scale;
  return out;
}

}  // namespace efrep::detail
