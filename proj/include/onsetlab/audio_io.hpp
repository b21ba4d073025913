#pragma once

#include <string>

#include "onsetlab/types.hpp"

namespace onsetlab {

/// Decode a PCM WAV file (16/24-bit int or 32-bit float) into a mono
/// buffer at the file's native rate. Multichannel input is downmixed by
/// arithmetic mean; integer samples are scaled by 2^(bits-1).
AudioBuffer load_audio(const std::string& path);

/// Write a mono buffer as 32-bit float WAV (lossless round-trip) or
/// 16-bit PCM when float32 = false.
void write_wav(const std::string& path, const AudioBuffer& audio,
               bool float32 = true);

/// Load an externally computed OSS from the text format
///   hop_seconds=<decimal>
///   <value per line>
OnsetStrengthSignal load_external_oss(const std::string& path);

/// Inverse of load_external_oss.
void save_external_oss(const std::string& path,
                       const OnsetStrengthSignal& oss);

}  // namespace onsetlab
