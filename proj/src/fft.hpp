#pragma once

// Thin FFTW wrapper. Plan creation is serialized behind a mutex (FFTW's
// planner is not thread-safe); execution is reentrant.

#include <complex>
#include <cstddef>
#include <vector>

namespace onsetlab::fft {

/// Forward DFT of a real signal; returns n/2+1 non-redundant bins.
std::vector<std::complex<double>> real_forward(const std::vector<double>& x);

/// Forward complex DFT, length x.size().
std::vector<std::complex<double>> forward(
    const std::vector<std::complex<double>>& x);

/// Inverse complex DFT with 1/n scaling, length x.size().
std::vector<std::complex<double>> inverse(
    const std::vector<std::complex<double>>& x);

/// Reusable real-to-complex plan for fixed-length frames (STFT inner loop).
class RealForwardPlan {
 public:
  explicit RealForwardPlan(std::size_t n);
  ~RealForwardPlan();
  RealForwardPlan(const RealForwardPlan&) = delete;
  RealForwardPlan& operator=(const RealForwardPlan&) = delete;

  std::size_t size() const { return n_; }
  /// in must hold n reals, out n/2+1 complex values.
  void execute(const double* in, std::complex<double>* out) const;

 private:
  std::size_t n_;
  void* plan_;  // fftw_plan
  double* in_;
  void* out_;  // fftw_complex*
};

}  // namespace onsetlab::fft
