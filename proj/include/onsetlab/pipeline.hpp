#pragma once

#include <optional>
#include <string>

#include "onsetlab/cgd.hpp"
#include "onsetlab/peakpick.hpp"
#include "onsetlab/spectral.hpp"
#include "onsetlab/types.hpp"

namespace onsetlab {

enum class OssMethod { complex_domain, spectral_flux, superflux, stsa, external };
enum class Picker { vpd, pp1, pp2 };

struct FilterbankConfig {
  int bands_per_octave = 24;
  double fmin_hz = 30.0;
  double fmax_hz = 17000.0;
};

struct PipelineConfig {
  OssMethod oss_method = OssMethod::stsa;
  bool use_cgd = true;
  CgdConfig cgd;
  Picker picker = Picker::vpd;
  VpdConfig vpd;
  PickerParams picker_params;
  StftConfig stft;
  int superflux_mu = 1;
  int superflux_max_radius = 1;
  FilterbankConfig filterbank;
  bool rectify_cd = false;
  std::string external_oss_path;  // only for OssMethod::external
};

/// Table-style preset codes: 1001, 1012, 2101, 2112, 3100, 4012, 5000
/// (5000 needs an external OSS file). Throws DomainError on unknown codes.
PipelineConfig preset_config(const std::string& code);

/// Compute the OSS for a config (STFT + filterbank/max-filter as needed).
OnsetStrengthSignal compute_oss(const AudioBuffer& audio,
                                const PipelineConfig& cfg);

/// Apply the config's picker to a (possibly smoothed) OSS.
std::vector<std::size_t> pick_onsets(const OnsetStrengthSignal& oss,
                                     const PipelineConfig& cfg);

/// Full pipeline on an in-memory buffer: OSS -> optional CGD -> picker ->
/// times. Silent audio yields an empty list.
OnsetList detect_onsets(const AudioBuffer& audio, const PipelineConfig& cfg);

/// Convenience: load_audio + detect_onsets.
OnsetList run_detect(const std::string& audio_path, const PipelineConfig& cfg);

}  // namespace onsetlab
