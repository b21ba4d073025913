#pragma once

#include "onsetlab/types.hpp"

namespace onsetlab {

struct PeakValleySet {
  std::vector<std::size_t> peaks;
  std::vector<std::size_t> valleys;
};

struct VpdConfig {
  double mu_scale = 0.80;  // threshold factor, recommended band (0.75, 1)
};

struct PickerParams {
  int pre_max_frames = 3;
  int post_max_frames = 3;
  int pre_avg_frames = 9;
  int post_avg_frames = 3;
  double delta = 0.1;
  int combination_frames = 3;  // minimum spacing between reported onsets
};

/// Strict local extrema: n is a peak iff x(n-1) < x(n) > x(n+1), a valley
/// iff x(n-1) > x(n) < x(n+1). Plateaus are resolved at their rising edge
/// by comparing against the next strictly different value. If the first
/// extremum is a peak, a virtual valley at index 0 is prepended, so peaks
/// and valleys strictly interleave starting with a valley.
PeakValleySet find_peaks_valleys(const std::vector<double>& x);

/// Valley-peak distance picking: d_vp(m) = x(peak_m) - x(valley_m),
/// T = mu * max d_vp; report the valleys whose pair exceeds T.
std::vector<std::size_t> vpd_pick(const OnsetStrengthSignal& oss,
                                  const VpdConfig& cfg);

/// Windowed local-max + mean-threshold picking: n is an onset iff x(n) is
/// the max over [n-pre_max, n+post_max], x(n) >= mean over
/// [n-pre_avg, n+post_avg] + delta, and n is at least combination_frames
/// past the previous onset. Windows clamp at the boundaries.
std::vector<std::size_t> pp1_pick(const OnsetStrengthSignal& oss,
                                  const PickerParams& params);
std::vector<std::size_t> pp2_pick(const OnsetStrengthSignal& oss,
                                  const PickerParams& params);

/// Defaults for the two comparison pickers; tuning surfaces, not constants.
PickerParams pp1_defaults();
PickerParams pp2_defaults();

/// t(l) = frame(l) * hop_seconds + offset_seconds. Input indices must be
/// strictly increasing.
OnsetList frames_to_times(const std::vector<std::size_t>& frames,
                          double hop_seconds, double offset_seconds = 0.0);

}  // namespace onsetlab
