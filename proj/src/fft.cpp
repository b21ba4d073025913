#include "fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace onsetlab::fft {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<std::complex<double>> run_c2c(
    const std::vector<std::complex<double>>& x, int sign) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> in(x);
  std::vector<std::complex<double>> out(n);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(
        static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
        reinterpret_cast<fftw_complex*>(out.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  if (sign == FFTW_BACKWARD) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : out) v *= scale;
  }
  return out;
}

}  // namespace

std::vector<std::complex<double>> real_forward(const std::vector<double>& x) {
  std::vector<std::complex<double>> in(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) in[i] = x[i];
  auto full = run_c2c(in, FFTW_FORWARD);
  full.resize(x.size() / 2 + 1);
  return full;
}

std::vector<std::complex<double>> forward(
    const std::vector<std::complex<double>>& x) {
  return run_c2c(x, FFTW_FORWARD);
}

std::vector<std::complex<double>> inverse(
    const std::vector<std::complex<double>>& x) {
  return run_c2c(x, FFTW_BACKWARD);
}

RealForwardPlan::RealForwardPlan(std::size_t n) : n_(n) {
  std::lock_guard<std::mutex> lock(planner_mutex());
  in_ = fftw_alloc_real(n);
  out_ = fftw_alloc_complex(n / 2 + 1);
  plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_,
                               static_cast<fftw_complex*>(out_),
                               FFTW_ESTIMATE | FFTW_UNALIGNED |
                                   FFTW_PRESERVE_INPUT);
}

RealForwardPlan::~RealForwardPlan() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  fftw_free(in_);
  fftw_free(out_);
}

void RealForwardPlan::execute(const double* in,
                              std::complex<double>* out) const {
  fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_),
                       const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
}

}  // namespace onsetlab::fft
