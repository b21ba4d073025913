#include "onsetlab/peakpick.hpp"

#include <algorithm>
#include <cmath>

namespace onsetlab {

PeakValleySet find_peaks_valleys(const std::vector<double>& x) {
  const std::size_t n = x.size();
  if (n < 3) throw DomainError("TooShort: need >= 3 samples");

  PeakValleySet set;
  // Walk runs of equal values; a run [i..j] is an extremum iff the strictly
  // different neighbors on both sides agree, and it is marked at its first
  // sample (the edge where the signal arrived).
  std::size_t i = 1;
  while (i + 1 < n + 1) {
    std::size_t j = i;
    while (j + 1 < n && x[j + 1] == x[i]) ++j;
    if (j + 1 >= n) break;  // run touches the end, not an interior extremum
    const double prev = x[i - 1];
    const double v = x[i];
    const double next = x[j + 1];
    if (prev < v && next < v) set.peaks.push_back(i);
    else if (prev > v && next > v) set.valleys.push_back(i);
    i = j + 1;
  }

  const bool first_is_peak =
      !set.peaks.empty() &&
      (set.valleys.empty() || set.peaks.front() < set.valleys.front());
  if (first_is_peak) set.valleys.insert(set.valleys.begin(), 0);
  return set;
}

std::vector<std::size_t> vpd_pick(const OnsetStrengthSignal& oss,
                                  const VpdConfig& cfg) {
  if (oss.values.size() < 3) throw DomainError("TooShort: OSS needs >= 3 values");
  if (cfg.mu_scale <= 0.0 || cfg.mu_scale > 1.0)
    throw DomainError("InvalidConfig: mu_scale must be in (0, 1]");

  const auto set = find_peaks_valleys(oss.values);
  if (set.peaks.empty()) return {};

  // With the virtual valley the sets interleave starting with a valley, so
  // peak m pairs with valley m; a trailing unpaired valley is ignored.
  const std::size_t pairs = std::min(set.peaks.size(), set.valleys.size());
  std::vector<double> dist(pairs);
  double max_dist = 0.0;
  for (std::size_t m = 0; m < pairs; ++m) {
    dist[m] = oss.values[set.peaks[m]] - oss.values[set.valleys[m]];
    max_dist = std::max(max_dist, dist[m]);
  }

  const double threshold = cfg.mu_scale * max_dist;
  std::vector<std::size_t> onsets;
  for (std::size_t m = 0; m < pairs; ++m)
    if (dist[m] > threshold) onsets.push_back(set.valleys[m]);
  return onsets;
}

namespace {

std::vector<std::size_t> windowed_pick(const OnsetStrengthSignal& oss,
                                       const PickerParams& params) {
  const auto& x = oss.values;
  const long n = static_cast<long>(x.size());
  const long max_window =
      std::max(params.pre_max_frames + params.post_max_frames,
               params.pre_avg_frames + params.post_avg_frames);
  if (n <= max_window) throw DomainError("TooShort: OSS shorter than window");
  if (params.pre_max_frames < 0 || params.post_max_frames < 0 ||
      params.pre_avg_frames < 0 || params.post_avg_frames < 0 ||
      params.delta < 0 || params.combination_frames < 0)
    throw DomainError("InvalidConfig: negative picker parameter");
  if (params.pre_max_frames + params.post_max_frames == 0 &&
      params.pre_avg_frames + params.post_avg_frames == 0)
    throw DomainError("InvalidConfig: all picker windows are zero");

  std::vector<std::size_t> onsets;
  long last = -1;
  for (long i = 0; i < n; ++i) {
    const long max_lo = std::max(0L, i - params.pre_max_frames);
    const long max_hi = std::min(n - 1, i + params.post_max_frames);
    double wmax = x[max_lo];
    for (long j = max_lo + 1; j <= max_hi; ++j) wmax = std::max(wmax, x[j]);
    if (x[i] < wmax) continue;

    const long avg_lo = std::max(0L, i - params.pre_avg_frames);
    const long avg_hi = std::min(n - 1, i + params.post_avg_frames);
    double sum = 0.0;
    for (long j = avg_lo; j <= avg_hi; ++j) sum += x[j];
    const double mean = sum / static_cast<double>(avg_hi - avg_lo + 1);
    if (x[i] < mean + params.delta) continue;

    if (last >= 0 && i - last < params.combination_frames) continue;
    onsets.push_back(static_cast<std::size_t>(i));
    last = i;
  }
  return onsets;
}

}  // namespace

std::vector<std::size_t> pp1_pick(const OnsetStrengthSignal& oss,
                                  const PickerParams& params) {
  return windowed_pick(oss, params);
}

std::vector<std::size_t> pp2_pick(const OnsetStrengthSignal& oss,
                                  const PickerParams& params) {
  return windowed_pick(oss, params);
}

PickerParams pp1_defaults() {
  // Asymmetric mean window reaching further into the past, single delta.
  PickerParams p;
  p.pre_max_frames = 3;
  p.post_max_frames = 3;
  p.pre_avg_frames = 9;
  p.post_avg_frames = 3;
  p.delta = 0.1;
  p.combination_frames = 3;
  return p;
}

PickerParams pp2_defaults() {
  // 30 ms max windows, 100/70 ms mean windows, 30 ms combination at a
  // 10 ms hop.
  PickerParams p;
  p.pre_max_frames = 3;
  p.post_max_frames = 3;
  p.pre_avg_frames = 10;
  p.post_avg_frames = 7;
  p.delta = 0.1;
  p.combination_frames = 3;
  return p;
}

OnsetList frames_to_times(const std::vector<std::size_t>& frames,
                          double hop_seconds, double offset_seconds) {
  for (std::size_t i = 1; i < frames.size(); ++i)
    if (frames[i] <= frames[i - 1])
      throw DomainError("NonMonotonicInput: frame indices must increase");
  OnsetList times(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i)
    times[i] = static_cast<double>(frames[i]) * hop_seconds + offset_seconds;
  return times;
}

}  // namespace onsetlab
