#pragma once

#include "onsetlab/types.hpp"

namespace onsetlab {

enum class Window { hann, rect };

struct StftConfig {
  double frame_ms = 40.0;
  double hop_ms = 10.0;
  Window window = Window::hann;
};

/// Short-time Fourier transform. Frame length L = round(frame_ms*fs/1000),
/// hop H = round(hop_ms*fs/1000), n_frames = floor((len-L)/H)+1, n_fft = L,
/// bins 0 .. n_fft/2 - 1. Frame n covers samples [nH, nH+L); its time
/// coordinate is nH/fs.
ComplexSpectrogram stft(const AudioBuffer& audio, const StftConfig& cfg);

/// Elementwise complex modulus; metadata carried over.
MagnitudeSpectrogram magnitude(const ComplexSpectrogram& spec);

/// Triangular filters with log-spaced centers, bands_per_octave per octave
/// from fmin to fmax, unit peak. Band count = floor(bands_per_octave *
/// log2(fmax/fmin)).
MagnitudeSpectrogram log_filterbank(const MagnitudeSpectrogram& mag,
                                    int bands_per_octave = 24,
                                    double fmin_hz = 30.0,
                                    double fmax_hz = 17000.0);

/// out(n,k) = max of in(n, k-radius .. k+radius), clamped at the edges.
MagnitudeSpectrogram max_filter_freq(const MagnitudeSpectrogram& mag,
                                     int radius = 1);

}  // namespace onsetlab
