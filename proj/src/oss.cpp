#include "onsetlab/oss.hpp"

#include <cmath>

#include "onsetlab/spectral.hpp"

namespace onsetlab {

OnsetStrengthSignal oss_complex_domain(const ComplexSpectrogram& spec,
                                       bool rectify) {
  if (spec.n_frames < 3)
    throw DomainError("TooFewFrames: complex domain needs >= 3 frames");

  OnsetStrengthSignal oss;
  oss.hop_seconds = spec.hop_seconds;
  oss.time_offset_seconds = spec.time_offset_seconds;
  oss.values.assign(spec.n_frames, 0.0);

  for (std::size_t n = 2; n < spec.n_frames; ++n) {
    double acc = 0.0;
    for (std::size_t k = 0; k < spec.n_bins; ++k) {
      const std::complex<double> x0 = spec.at(n - 2, k);
      const std::complex<double> x1 = spec.at(n - 1, k);
      const std::complex<double> x = spec.at(n, k);
      const double m1 = std::abs(x1);

      // Prediction: magnitude of the previous frame, phase advanced by the
      // previous frame's per-bin phase increment. exp(j(2*phi1 - phi0)) is
      // insensitive to 2*pi wraps, so principal-value phases suffice.
      std::complex<double> predicted;
      if (m1 == 0.0) {
        predicted = 0.0;
      } else {
        std::complex<double> phasor = x1 * x1;  // |x1|^2 e^{j 2 phi1}
        const double m0 = std::abs(x0);
        if (m0 > 0.0) phasor *= std::conj(x0) / m0;
        predicted = phasor / m1;
      }
      if (rectify && std::abs(x) < m1) continue;
      acc += std::abs(x - predicted);
    }
    oss.values[n] = acc;
  }
  return oss;
}

OnsetStrengthSignal oss_spectral_flux(const MagnitudeSpectrogram& mag) {
  if (mag.n_frames < 2)
    throw DomainError("TooFewFrames: spectral flux needs >= 2 frames");

  OnsetStrengthSignal oss;
  oss.hop_seconds = mag.hop_seconds;
  oss.time_offset_seconds = mag.time_offset_seconds;
  oss.values.assign(mag.n_frames, 0.0);
  for (std::size_t n = 1; n < mag.n_frames; ++n) {
    double acc = 0.0;
    for (std::size_t k = 0; k < mag.n_bins; ++k)
      acc += half_wave_rectify(mag.at(n, k) - mag.at(n - 1, k));
    oss.values[n] = acc;
  }
  return oss;
}

OnsetStrengthSignal oss_superflux(const MagnitudeSpectrogram& filtered_mag,
                                  int mu_offset, int max_radius) {
  if (mu_offset < 1) throw DomainError("InvalidConfig: mu_offset must be >= 1");
  if (filtered_mag.n_frames <= static_cast<std::size_t>(mu_offset))
    throw DomainError("TooFewFrames: superflux needs > mu_offset frames");

  const MagnitudeSpectrogram filtered =
      max_radius >= 1 ? max_filter_freq(filtered_mag, max_radius)
                      : filtered_mag;

  OnsetStrengthSignal oss;
  oss.hop_seconds = filtered.hop_seconds;
  oss.time_offset_seconds = filtered.time_offset_seconds;
  oss.values.assign(filtered.n_frames, 0.0);
  const std::size_t mu = static_cast<std::size_t>(mu_offset);
  for (std::size_t n = mu; n < filtered.n_frames; ++n) {
    double acc = 0.0;
    for (std::size_t k = 0; k < filtered.n_bins; ++k)
      acc += half_wave_rectify(filtered.at(n, k) - filtered.at(n - mu, k));
    oss.values[n] = acc;
  }
  return oss;
}

OnsetStrengthSignal oss_stsa(const MagnitudeSpectrogram& mag) {
  if (mag.n_bins < 1) throw DomainError("TooFewFrames: no frequency bins");

  OnsetStrengthSignal oss;
  oss.hop_seconds = mag.hop_seconds;
  oss.time_offset_seconds = mag.time_offset_seconds;
  oss.values.assign(mag.n_frames, 0.0);
  for (std::size_t n = 0; n < mag.n_frames; ++n) {
    double acc = 0.0;
    for (std::size_t k = 0; k < mag.n_bins; ++k) acc += mag.at(n, k);
    oss.values[n] = acc / static_cast<double>(mag.n_bins);
  }
  return oss;
}

}  // namespace onsetlab
