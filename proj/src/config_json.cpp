#include "onsetlab/config_json.hpp"

namespace onsetlab {

std::string oss_method_name(OssMethod m) {
  switch (m) {
    case OssMethod::complex_domain: return "complex_domain";
    case OssMethod::spectral_flux: return "spectral_flux";
    case OssMethod::superflux: return "superflux";
    case OssMethod::stsa: return "stsa";
    case OssMethod::external: return "external";
  }
  return "unknown";
}

OssMethod oss_method_from_name(const std::string& name) {
  if (name == "complex_domain") return OssMethod::complex_domain;
  if (name == "spectral_flux") return OssMethod::spectral_flux;
  if (name == "superflux") return OssMethod::superflux;
  if (name == "stsa") return OssMethod::stsa;
  if (name == "external") return OssMethod::external;
  throw DomainError("InvalidConfig: unknown OSS method '" + name + "'");
}

std::string picker_name(Picker p) {
  switch (p) {
    case Picker::vpd: return "vpd";
    case Picker::pp1: return "pp1";
    case Picker::pp2: return "pp2";
  }
  return "unknown";
}

Picker picker_from_name(const std::string& name) {
  if (name == "vpd") return Picker::vpd;
  if (name == "pp1") return Picker::pp1;
  if (name == "pp2") return Picker::pp2;
  throw DomainError("InvalidConfig: unknown picker '" + name + "'");
}

nlohmann::json config_to_json(const PipelineConfig& cfg) {
  return nlohmann::json{
      {"oss", oss_method_name(cfg.oss_method)},
      {"use_cgd", cfg.use_cgd},
      {"cgd_radius", cfg.cgd.radius},
      {"picker", picker_name(cfg.picker)},
      {"vpd_mu", cfg.vpd.mu_scale},
      {"picker_params",
       {{"pre_max_frames", cfg.picker_params.pre_max_frames},
        {"post_max_frames", cfg.picker_params.post_max_frames},
        {"pre_avg_frames", cfg.picker_params.pre_avg_frames},
        {"post_avg_frames", cfg.picker_params.post_avg_frames},
        {"delta", cfg.picker_params.delta},
        {"combination_frames", cfg.picker_params.combination_frames}}},
      {"frame_ms", cfg.stft.frame_ms},
      {"hop_ms", cfg.stft.hop_ms},
      {"window", cfg.stft.window == Window::hann ? "hann" : "rect"},
      {"superflux_mu", cfg.superflux_mu},
      {"superflux_max_radius", cfg.superflux_max_radius},
      {"filterbank",
       {{"bands_per_octave", cfg.filterbank.bands_per_octave},
        {"fmin_hz", cfg.filterbank.fmin_hz},
        {"fmax_hz", cfg.filterbank.fmax_hz}}},
      {"rectify_cd", cfg.rectify_cd},
      {"external_oss_path", cfg.external_oss_path}};
}

PipelineConfig config_from_json(const nlohmann::json& j) {
  PipelineConfig cfg;
  try {
    if (j.contains("oss")) cfg.oss_method = oss_method_from_name(j.at("oss"));
    if (j.contains("use_cgd")) cfg.use_cgd = j.at("use_cgd");
    if (j.contains("cgd_radius")) cfg.cgd.radius = j.at("cgd_radius");
    if (j.contains("picker")) cfg.picker = picker_from_name(j.at("picker"));
    if (j.contains("vpd_mu")) cfg.vpd.mu_scale = j.at("vpd_mu");
    if (j.contains("picker_params")) {
      const auto& p = j.at("picker_params");
      auto& pp = cfg.picker_params;
      if (p.contains("pre_max_frames")) pp.pre_max_frames = p.at("pre_max_frames");
      if (p.contains("post_max_frames")) pp.post_max_frames = p.at("post_max_frames");
      if (p.contains("pre_avg_frames")) pp.pre_avg_frames = p.at("pre_avg_frames");
      if (p.contains("post_avg_frames")) pp.post_avg_frames = p.at("post_avg_frames");
      if (p.contains("delta")) pp.delta = p.at("delta");
      if (p.contains("combination_frames")) pp.combination_frames = p.at("combination_frames");
    }
    if (j.contains("frame_ms")) cfg.stft.frame_ms = j.at("frame_ms");
    if (j.contains("hop_ms")) cfg.stft.hop_ms = j.at("hop_ms");
    if (j.contains("window"))
      cfg.stft.window =
          j.at("window") == "rect" ? Window::rect : Window::hann;
    if (j.contains("superflux_mu")) cfg.superflux_mu = j.at("superflux_mu");
    if (j.contains("superflux_max_radius"))
      cfg.superflux_max_radius = j.at("superflux_max_radius");
    if (j.contains("filterbank")) {
      const auto& f = j.at("filterbank");
      if (f.contains("bands_per_octave"))
        cfg.filterbank.bands_per_octave = f.at("bands_per_octave");
      if (f.contains("fmin_hz")) cfg.filterbank.fmin_hz = f.at("fmin_hz");
      if (f.contains("fmax_hz")) cfg.filterbank.fmax_hz = f.at("fmax_hz");
    }
    if (j.contains("rectify_cd")) cfg.rectify_cd = j.at("rectify_cd");
    if (j.contains("external_oss_path"))
      cfg.external_oss_path = j.at("external_oss_path");
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("InvalidConfig: ") + e.what());
  }
  return cfg;
}

std::string config_key(const PipelineConfig& cfg) {
  return config_to_json(cfg).dump();
}

nlohmann::json timing_to_json(const StageTiming& t) {
  return nlohmann::json{{"stage", stage_name(t.stage)},
                        {"mean_ms", t.mean_ms},
                        {"min_ms", t.min_ms},
                        {"max_ms", t.max_ms},
                        {"median_ms", t.median_ms},
                        {"repeats", t.repeats},
                        {"raw_ms", t.raw_ms}};
}

}  // namespace onsetlab
