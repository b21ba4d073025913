#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace onsetlab {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// File / stream problems: missing files, bad encodings, malformed text.
class IoError : public Error {
 public:
  using Error::Error;
};

// Contract violations on in-memory data: too short, bad ranges, bad config.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Mono time-domain signal, samples nominally in [-1, 1].
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate = 0;

  double duration_seconds() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
};

/// X(n,k): n_frames x n_bins complex STFT cells, bins 0 .. n_fft/2 - 1.
struct ComplexSpectrogram {
  std::vector<std::complex<double>> cells;  // row-major, frame-major
  std::size_t n_frames = 0;
  std::size_t n_bins = 0;
  std::size_t n_fft = 0;
  double hop_seconds = 0.0;
  double bin_hz = 0.0;
  // Frame n represents time n * hop_seconds + time_offset_seconds. The
  // offset places the timestamp at the analysis window center, so detected
  // events line up with where their energy actually sits in the signal.
  double time_offset_seconds = 0.0;

  std::complex<double>& at(std::size_t frame, std::size_t bin) {
    return cells[frame * n_bins + bin];
  }
  const std::complex<double>& at(std::size_t frame, std::size_t bin) const {
    return cells[frame * n_bins + bin];
  }
};

/// |X(n,k)| or band energies after filtering; every cell >= 0.
struct MagnitudeSpectrogram {
  std::vector<double> cells;  // row-major, frame-major
  std::size_t n_frames = 0;
  std::size_t n_bins = 0;
  double hop_seconds = 0.0;
  double bin_hz = 0.0;  // 0 once bins are filter bands
  double time_offset_seconds = 0.0;
  std::vector<double> band_centers_hz;  // populated after a filterbank

  double& at(std::size_t frame, std::size_t bin) {
    return cells[frame * n_bins + bin];
  }
  double at(std::size_t frame, std::size_t bin) const {
    return cells[frame * n_bins + bin];
  }
};

/// One value per frame; frame n sits at n * hop_seconds + time_offset_seconds.
struct OnsetStrengthSignal {
  std::vector<double> values;
  double hop_seconds = 0.0;
  double time_offset_seconds = 0.0;

  std::size_t size() const { return values.size(); }
};

/// Strictly increasing onset times in seconds.
using OnsetList = std::vector<double>;

}  // namespace onsetlab
