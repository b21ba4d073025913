#include "onsetlab/cgd.hpp"

#include <algorithm>
#include <cmath>

#include "fft.hpp"

namespace onsetlab {

namespace {
constexpr double kPowerGuard = 1e-12;  // relative |X_c|^2 floor
}

std::vector<double> chirp_group_delay(const std::vector<double>& signal,
                                      double radius, std::size_t n_points) {
  if (signal.empty()) throw DomainError("EmptySignal");
  if (radius <= 0) throw DomainError("InvalidConfig: radius must be > 0");
  if (n_points < signal.size())
    throw DomainError("InvalidConfig: n_points < signal length");

  // Damped signal and its ramp-weighted sibling, zero-padded to n_points.
  std::vector<std::complex<double>> damped(n_points, 0.0);
  std::vector<std::complex<double>> ramped(n_points, 0.0);
  double decay = 1.0;
  const double inv_r = 1.0 / radius;
  for (std::size_t n = 0; n < signal.size(); ++n) {
    const double v = signal[n] * decay;
    damped[n] = v;
    ramped[n] = static_cast<double>(n) * v;
    decay *= inv_r;
  }

  const auto chirp = fft::forward(damped);   // X_c(k)
  const auto chirp_ramp = fft::forward(ramped);  // Y_c(k) = DFT of n x(n) r^-n

  double max_power = 0.0;
  for (const auto& v : chirp) max_power = std::max(max_power, std::norm(v));
  const double floor_power = kPowerGuard * max_power;

  // tau(k) = -d/dw arg X_c = Re{Y_c / X_c} = Re{Y_c conj(X_c)} / |X_c|^2.
  std::vector<double> tau(n_points, 0.0);
  for (std::size_t k = 0; k < n_points; ++k) {
    const double power = std::norm(chirp[k]);
    if (power <= floor_power || power == 0.0) continue;
    tau[k] = (chirp_ramp[k] * std::conj(chirp[k])).real() / power;
  }
  return tau;
}

OnsetStrengthSignal cgd_smooth(const OnsetStrengthSignal& oss,
                               const CgdConfig& cfg) {
  const std::size_t len = oss.values.size();
  if (len < 2) throw DomainError("TooShort: OSS needs >= 2 values");
  if (cfg.radius <= 1.0)
    throw DomainError("InvalidConfig: CGD radius must be > 1");

  OnsetStrengthSignal out;
  out.hop_seconds = oss.hop_seconds;
  out.time_offset_seconds = oss.time_offset_seconds;

  const bool all_zero =
      std::all_of(oss.values.begin(), oss.values.end(),
                  [](double v) { return v == 0.0; });
  if (all_zero) {
    out.values.assign(len, 0.0);
    return out;
  }

  // Mirror to length 2K, even about the half-sample midpoint:
  // X(k) = O(k) for k < K, O(2K-1-k) for k >= K.
  const std::size_t full = 2 * len;
  std::vector<std::complex<double>> mirrored(full);
  for (std::size_t k = 0; k < len; ++k) {
    mirrored[k] = oss.values[k];
    mirrored[full - 1 - k] = oss.values[k];
  }

  // The implied time-domain signal is real up to rounding; keep the causal
  // half including n = 0 (dropping it would lose the DC term).
  const auto impulse = fft::inverse(mirrored);
  std::vector<double> causal(len);
  for (std::size_t n = 0; n < len; ++n) causal[n] = impulse[n].real();

  const auto tau = chirp_group_delay(causal, cfg.radius, full);
  out.values.assign(tau.begin(), tau.begin() + len);
  return out;
}

}  // namespace onsetlab
