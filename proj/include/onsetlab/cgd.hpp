#pragma once

#include "onsetlab/types.hpp"

namespace onsetlab {

struct CgdConfig {
  double radius = 1.010;  // > 1 strictly; useful sweep range 1.001 .. 1.020
};

/// Chirp group delay of a real signal: spectra of x(n) r^-n and n x(n) r^-n
/// over n_points bins, then tau(k) = Re{X_c(k) conj(Y_c(k))} / |X_c(k)|^2.
/// Bins with |X_c|^2 below 1e-12 of the maximum return 0.
std::vector<double> chirp_group_delay(const std::vector<double>& signal,
                                      double radius, std::size_t n_points);

/// Smooth an OSS by treating it as half of a DFT magnitude spectrum:
/// mirror to length 2K, inverse DFT, keep the causal half, and take the
/// chirp group delay of that signal. Output has the input's length and hop.
/// An all-zero input maps to all zeros.
OnsetStrengthSignal cgd_smooth(const OnsetStrengthSignal& oss,
                               const CgdConfig& cfg);

}  // namespace onsetlab
