#pragma once

#include "onsetlab/types.hpp"

namespace onsetlab {

/// H(x) = (x + |x|) / 2.
inline double half_wave_rectify(double x) { return (x + std::abs(x)) / 2.0; }

/// Complex domain function: per frame, the summed deviation of X(n,k) from
/// a constant-magnitude constant-phase-rate prediction built from the two
/// previous frames. With rectify, only bins whose magnitude rises
/// contribute (rectified complex domain variant).
OnsetStrengthSignal oss_complex_domain(const ComplexSpectrogram& spec,
                                       bool rectify = false);

/// Spectral flux: sum of half-wave rectified bin-wise magnitude differences
/// between adjacent frames.
OnsetStrengthSignal oss_spectral_flux(const MagnitudeSpectrogram& mag);

/// Superflux: max-filter across frequency (max_radius bins each side), then
/// rectified differences at frame offset mu_offset. Expects the
/// log-filterbank output. max_radius = 0 skips the filter.
OnsetStrengthSignal oss_superflux(const MagnitudeSpectrogram& filtered_mag,
                                  int mu_offset = 1, int max_radius = 1);

/// Short-time spectral average: per-frame mean of magnitudes across bins.
OnsetStrengthSignal oss_stsa(const MagnitudeSpectrogram& mag);

}  // namespace onsetlab
