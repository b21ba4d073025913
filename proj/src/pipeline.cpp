#include "onsetlab/pipeline.hpp"

#include <algorithm>

#include "onsetlab/audio_io.hpp"
#include "onsetlab/oss.hpp"

namespace onsetlab {

PipelineConfig preset_config(const std::string& code) {
  PipelineConfig cfg;
  cfg.stft.frame_ms = 40.0;
  cfg.stft.hop_ms = 10.0;
  cfg.cgd.radius = 1.010;
  cfg.vpd.mu_scale = 0.80;

  if (code == "1001") {
    cfg.oss_method = OssMethod::complex_domain;
    cfg.use_cgd = false;
    cfg.picker = Picker::pp1;
    cfg.picker_params = pp1_defaults();
  } else if (code == "1012") {
    cfg.oss_method = OssMethod::complex_domain;
    cfg.use_cgd = true;
    cfg.picker = Picker::vpd;
  } else if (code == "2101") {
    cfg.oss_method = OssMethod::spectral_flux;
    cfg.use_cgd = false;
    cfg.picker = Picker::pp1;
    cfg.picker_params = pp1_defaults();
  } else if (code == "2112") {
    cfg.oss_method = OssMethod::spectral_flux;
    cfg.use_cgd = true;
    cfg.picker = Picker::vpd;
  } else if (code == "3100") {
    cfg.oss_method = OssMethod::superflux;
    cfg.use_cgd = false;
    cfg.picker = Picker::pp2;
    cfg.picker_params = pp2_defaults();
    // Published superflux settings run at a 5 ms frame rate.
    cfg.stft.hop_ms = 5.0;
    cfg.picker_params.pre_avg_frames = 20;
    cfg.picker_params.post_avg_frames = 14;
    cfg.picker_params.pre_max_frames = 6;
    cfg.picker_params.post_max_frames = 6;
    cfg.picker_params.combination_frames = 6;
    // Band-summed linear magnitudes put the flux on a much larger scale
    // than a single-bin OSS, so the absolute threshold scales with it.
    // Vibrato-induced flux ripples stay well below this; attacks exceed it.
    cfg.picker_params.delta = 150.0;
  } else if (code == "4012") {
    cfg.oss_method = OssMethod::stsa;
    cfg.use_cgd = true;
    cfg.picker = Picker::vpd;
  } else if (code == "5000") {
    cfg.oss_method = OssMethod::external;
    cfg.use_cgd = false;
    cfg.picker = Picker::pp2;
    cfg.picker_params = pp2_defaults();
  } else {
    throw DomainError("InvalidConfig: unknown preset '" + code + "'");
  }
  return cfg;
}

OnsetStrengthSignal compute_oss(const AudioBuffer& audio,
                                const PipelineConfig& cfg) {
  if (cfg.oss_method == OssMethod::external) {
    if (cfg.external_oss_path.empty())
      throw DomainError("InvalidConfig: external OSS method needs a file");
    return load_external_oss(cfg.external_oss_path);
  }

  const ComplexSpectrogram spec = stft(audio, cfg.stft);
  switch (cfg.oss_method) {
    case OssMethod::complex_domain:
      return oss_complex_domain(spec, cfg.rectify_cd);
    case OssMethod::spectral_flux:
      return oss_spectral_flux(magnitude(spec));
    case OssMethod::superflux: {
      const auto banded =
          log_filterbank(magnitude(spec), cfg.filterbank.bands_per_octave,
                         cfg.filterbank.fmin_hz,
                         std::min(cfg.filterbank.fmax_hz,
                                  0.5 * audio.sample_rate));
      return oss_superflux(banded, cfg.superflux_mu, cfg.superflux_max_radius);
    }
    case OssMethod::stsa:
      return oss_stsa(magnitude(spec));
    default:
      throw DomainError("InvalidConfig: unknown OSS method");
  }
}

std::vector<std::size_t> pick_onsets(const OnsetStrengthSignal& oss,
                                     const PipelineConfig& cfg) {
  switch (cfg.picker) {
    case Picker::vpd:
      return vpd_pick(oss, cfg.vpd);
    case Picker::pp1:
      return pp1_pick(oss, cfg.picker_params);
    case Picker::pp2:
      return pp2_pick(oss, cfg.picker_params);
    default:
      throw DomainError("InvalidConfig: unknown picker");
  }
}

OnsetList detect_onsets(const AudioBuffer& audio, const PipelineConfig& cfg) {
  OnsetStrengthSignal oss = compute_oss(audio, cfg);
  const bool all_zero = std::all_of(oss.values.begin(), oss.values.end(),
                                    [](double v) { return v == 0.0; });
  if (all_zero) return {};  // silent input degrades to no onsets
  if (cfg.use_cgd) oss = cgd_smooth(oss, cfg.cgd);
  return frames_to_times(pick_onsets(oss, cfg), oss.hop_seconds,
                         oss.time_offset_seconds);
}

OnsetList run_detect(const std::string& audio_path,
                     const PipelineConfig& cfg) {
  try {
    return detect_onsets(load_audio(audio_path), cfg);
  } catch (const IoError& e) {
    throw IoError(std::string(e.what()) + " [file: " + audio_path + "]");
  } catch (const DomainError& e) {
    throw DomainError(std::string(e.what()) + " [file: " + audio_path + "]");
  }
}

}  // namespace onsetlab
