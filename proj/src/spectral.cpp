#include "onsetlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.hpp"

namespace onsetlab {

ComplexSpectrogram stft(const AudioBuffer& audio, const StftConfig& cfg) {
  if (audio.sample_rate <= 0) throw DomainError("AudioTooShort: empty buffer");
  if (cfg.hop_ms <= 0 || cfg.hop_ms > cfg.frame_ms)
    throw DomainError("InvalidConfig: need 0 < hop_ms <= frame_ms");

  const double fs = audio.sample_rate;
  const std::size_t frame_len =
      static_cast<std::size_t>(std::lround(cfg.frame_ms * fs / 1000.0));
  const std::size_t hop =
      static_cast<std::size_t>(std::lround(cfg.hop_ms * fs / 1000.0));
  if (frame_len == 0 || hop == 0)
    throw DomainError("InvalidConfig: frame/hop rounds to zero samples");
  if (audio.samples.size() < frame_len)
    throw DomainError("AudioTooShort: " + std::to_string(audio.samples.size()) +
                      " samples < frame of " + std::to_string(frame_len));

  const std::size_t n_frames = (audio.samples.size() - frame_len) / hop + 1;
  const std::size_t n_fft = frame_len;
  const std::size_t n_bins = n_fft / 2;

  std::vector<double> window(frame_len, 1.0);
  if (cfg.window == Window::hann) {
    for (std::size_t i = 0; i < frame_len; ++i) {
      window[i] =
          0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / frame_len);
    }
  }

  ComplexSpectrogram spec;
  spec.n_frames = n_frames;
  spec.n_bins = n_bins;
  spec.n_fft = n_fft;
  spec.hop_seconds = hop / fs;
  spec.bin_hz = fs / static_cast<double>(n_fft);
  spec.time_offset_seconds = 0.5 * frame_len / fs;
  spec.cells.resize(n_frames * n_bins);

  fft::RealForwardPlan plan(n_fft);
  std::vector<double> frame(n_fft);
  std::vector<std::complex<double>> bins(n_fft / 2 + 1);
  for (std::size_t n = 0; n < n_frames; ++n) {
    const double* src = audio.samples.data() + n * hop;
    for (std::size_t i = 0; i < frame_len; ++i) frame[i] = src[i] * window[i];
    plan.execute(frame.data(), bins.data());
    std::copy(bins.begin(), bins.begin() + n_bins,
              spec.cells.begin() + n * n_bins);
  }
  return spec;
}

MagnitudeSpectrogram magnitude(const ComplexSpectrogram& spec) {
  MagnitudeSpectrogram mag;
  mag.n_frames = spec.n_frames;
  mag.n_bins = spec.n_bins;
  mag.hop_seconds = spec.hop_seconds;
  mag.bin_hz = spec.bin_hz;
  mag.time_offset_seconds = spec.time_offset_seconds;
  mag.cells.resize(spec.cells.size());
  for (std::size_t i = 0; i < spec.cells.size(); ++i)
    mag.cells[i] = std::abs(spec.cells[i]);
  return mag;
}

MagnitudeSpectrogram log_filterbank(const MagnitudeSpectrogram& mag,
                                    int bands_per_octave, double fmin_hz,
                                    double fmax_hz) {
  if (bands_per_octave < 1 || fmin_hz <= 0 || fmin_hz >= fmax_hz)
    throw DomainError("InvalidBandRange");
  if (mag.bin_hz <= 0)
    throw DomainError("InvalidBandRange: input has no bin frequency scale");
  const double nyquist = mag.bin_hz * static_cast<double>(mag.n_bins);
  if (fmax_hz > nyquist + 1e-9)
    throw DomainError("InvalidBandRange: fmax above Nyquist");

  const int n_bands = static_cast<int>(
      std::floor(bands_per_octave * std::log2(fmax_hz / fmin_hz)));
  if (n_bands < 1) throw DomainError("InvalidBandRange: no bands fit");

  // Centers log-spaced; each triangle spans neighbor center to neighbor
  // center with unit peak.
  std::vector<double> centers(n_bands + 2);
  const double step = std::pow(2.0, 1.0 / bands_per_octave);
  centers[0] = fmin_hz / step;
  for (int b = 0; b <= n_bands; ++b) centers[b + 1] = fmin_hz * std::pow(step, b);

  MagnitudeSpectrogram out;
  out.n_frames = mag.n_frames;
  out.n_bins = static_cast<std::size_t>(n_bands);
  out.hop_seconds = mag.hop_seconds;
  out.bin_hz = 0.0;
  out.time_offset_seconds = mag.time_offset_seconds;
  out.band_centers_hz.assign(centers.begin() + 1, centers.end() - 1);
  out.cells.assign(mag.n_frames * out.n_bins, 0.0);

  // Sparse weights: (band, bin, weight) triplets.
  struct Entry {
    int band;
    std::size_t bin;
    double w;
  };
  std::vector<Entry> entries;
  for (int b = 0; b < n_bands; ++b) {
    const double lo = centers[b], c = centers[b + 1], hi = centers[b + 2];
    for (std::size_t k = 0; k < mag.n_bins; ++k) {
      const double f = k * mag.bin_hz;
      if (f <= lo || f >= hi) continue;
      const double w = f < c ? (f - lo) / (c - lo) : (hi - f) / (hi - c);
      entries.push_back({b, k, w});
    }
    // Narrow bands can fall between bins; take the nearest bin verbatim so
    // no band is silently empty.
    bool empty = entries.empty() || entries.back().band != b;
    if (empty) {
      std::size_t k = static_cast<std::size_t>(std::lround(c / mag.bin_hz));
      if (k < mag.n_bins) entries.push_back({b, k, 1.0});
    }
  }

  for (std::size_t n = 0; n < mag.n_frames; ++n) {
    const double* src = mag.cells.data() + n * mag.n_bins;
    double* dst = out.cells.data() + n * out.n_bins;
    for (const Entry& e : entries) dst[e.band] += e.w * src[e.bin];
  }
  return out;
}

MagnitudeSpectrogram max_filter_freq(const MagnitudeSpectrogram& mag,
                                     int radius) {
  if (radius < 1) throw DomainError("InvalidConfig: radius must be >= 1");
  MagnitudeSpectrogram out = mag;
  const std::size_t nb = mag.n_bins;
  for (std::size_t n = 0; n < mag.n_frames; ++n) {
    const double* src = mag.cells.data() + n * nb;
    double* dst = out.cells.data() + n * nb;
    for (std::size_t k = 0; k < nb; ++k) {
      std::size_t lo = k >= static_cast<std::size_t>(radius)
                           ? k - static_cast<std::size_t>(radius)
                           : 0;
      std::size_t hi = std::min(nb - 1, k + static_cast<std::size_t>(radius));
      double m = src[lo];
      for (std::size_t j = lo + 1; j <= hi; ++j) m = std::max(m, src[j]);
      dst[k] = m;
    }
  }
  return out;
}

}  // namespace onsetlab
