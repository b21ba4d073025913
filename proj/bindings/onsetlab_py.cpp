#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "onsetlab/audio_io.hpp"
#include "onsetlab/bench.hpp"
#include "onsetlab/cgd.hpp"
#include "onsetlab/config_json.hpp"
#include "onsetlab/eval.hpp"
#include "onsetlab/oss.hpp"
#include "onsetlab/peakpick.hpp"
#include "onsetlab/pipeline.hpp"
#include "onsetlab/spectral.hpp"

namespace py = pybind11;
using namespace onsetlab;

namespace {

py::array_t<double> mag_to_array(const MagnitudeSpectrogram& mag) {
  py::array_t<double> out({mag.n_frames, mag.n_bins});
  std::copy(mag.cells.begin(), mag.cells.end(), out.mutable_data());
  return out;
}

MagnitudeSpectrogram array_to_mag(py::array_t<double, py::array::c_style |
                                                          py::array::forcecast>
                                      arr,
                                  double hop_seconds, double bin_hz) {
  if (arr.ndim() != 2) throw DomainError("InvalidConfig: expected a 2-D array");
  MagnitudeSpectrogram mag;
  mag.n_frames = static_cast<std::size_t>(arr.shape(0));
  mag.n_bins = static_cast<std::size_t>(arr.shape(1));
  mag.hop_seconds = hop_seconds;
  mag.bin_hz = bin_hz;
  mag.cells.assign(arr.data(), arr.data() + arr.size());
  return mag;
}

PipelineConfig config_from_kwargs(const py::dict& kwargs) {
  nlohmann::json j;
  for (const auto& item : kwargs) {
    const std::string key = py::str(item.first);
    const py::handle v = item.second;
    if (py::isinstance<py::bool_>(v)) j[key] = v.cast<bool>();
    else if (py::isinstance<py::int_>(v)) j[key] = v.cast<long>();
    else if (py::isinstance<py::float_>(v)) j[key] = v.cast<double>();
    else j[key] = std::string(py::str(v));
  }
  return config_from_json(j);
}

}  // namespace

PYBIND11_MODULE(_onsetlab, m) {
  m.doc() = "Onset detection: OSS estimators, chirp group delay smoothing, "
            "valley-peak-distance peak picking, and evaluation";

  py::register_exception<IoError>(m, "IoError", PyExc_IOError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::class_<AudioBuffer>(m, "AudioBuffer")
      .def(py::init([](py::array_t<double, py::array::c_style |
                                               py::array::forcecast>
                           samples,
                       int sample_rate) {
             AudioBuffer buf;
             buf.sample_rate = sample_rate;
             buf.samples.assign(samples.data(),
                                samples.data() + samples.size());
             return buf;
           }),
           py::arg("samples"), py::arg("sample_rate"))
      .def_property_readonly("samples",
                             [](const AudioBuffer& b) {
                               return py::array_t<double>(
                                   static_cast<py::ssize_t>(b.samples.size()),
                                   b.samples.data());
                             })
      .def_readonly("sample_rate", &AudioBuffer::sample_rate)
      .def_property_readonly("duration_seconds",
                             &AudioBuffer::duration_seconds);

  py::class_<OnsetStrengthSignal>(m, "OnsetStrengthSignal")
      .def(py::init([](py::array_t<double, py::array::c_style |
                                               py::array::forcecast>
                           values,
                       double hop_seconds) {
             OnsetStrengthSignal oss;
             oss.hop_seconds = hop_seconds;
             oss.values.assign(values.data(), values.data() + values.size());
             return oss;
           }),
           py::arg("values"), py::arg("hop_seconds"))
      .def_property_readonly("values",
                             [](const OnsetStrengthSignal& o) {
                               return py::array_t<double>(
                                   static_cast<py::ssize_t>(o.values.size()),
                                   o.values.data());
                             })
      .def_readonly("hop_seconds", &OnsetStrengthSignal::hop_seconds)
      .def("__len__", &OnsetStrengthSignal::size);

  m.def("load_audio", &load_audio, py::arg("path"));
  m.def("write_wav", &write_wav, py::arg("path"), py::arg("audio"),
        py::arg("float32") = true);
  m.def("load_external_oss", &load_external_oss, py::arg("path"));
  m.def("save_external_oss", &save_external_oss, py::arg("path"),
        py::arg("oss"));

  m.def(
      "stft_magnitude",
      [](const AudioBuffer& audio, double frame_ms, double hop_ms,
         const std::string& window) {
        StftConfig cfg{frame_ms, hop_ms,
                       window == "rect" ? Window::rect : Window::hann};
        const auto mag = magnitude(stft(audio, cfg));
        return py::make_tuple(mag_to_array(mag), mag.hop_seconds, mag.bin_hz);
      },
      py::arg("audio"), py::arg("frame_ms") = 40.0, py::arg("hop_ms") = 10.0,
      py::arg("window") = "hann",
      "Magnitude spectrogram as (frames x bins array, hop_seconds, bin_hz)");

  m.def(
      "log_filterbank",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> mag,
         double hop_seconds, double bin_hz, int bands_per_octave,
         double fmin_hz, double fmax_hz) {
        const auto out =
            log_filterbank(array_to_mag(mag, hop_seconds, bin_hz),
                           bands_per_octave, fmin_hz, fmax_hz);
        return py::make_tuple(mag_to_array(out), out.band_centers_hz);
      },
      py::arg("magnitudes"), py::arg("hop_seconds"), py::arg("bin_hz"),
      py::arg("bands_per_octave") = 24, py::arg("fmin_hz") = 30.0,
      py::arg("fmax_hz") = 17000.0);

  m.def(
      "max_filter_freq",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> mag,
         int radius) {
        return mag_to_array(max_filter_freq(array_to_mag(mag, 0.01, 0), radius));
      },
      py::arg("magnitudes"), py::arg("radius") = 1);

  m.def(
      "oss_spectral_flux",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> mag,
         double hop_seconds) {
        return oss_spectral_flux(array_to_mag(mag, hop_seconds, 0));
      },
      py::arg("magnitudes"), py::arg("hop_seconds") = 0.01);
  m.def(
      "oss_superflux",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> mag,
         double hop_seconds, int mu_offset, int max_radius) {
        return oss_superflux(array_to_mag(mag, hop_seconds, 0), mu_offset,
                             max_radius);
      },
      py::arg("magnitudes"), py::arg("hop_seconds") = 0.01,
      py::arg("mu_offset") = 1, py::arg("max_radius") = 1);
  m.def(
      "oss_stsa",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> mag,
         double hop_seconds) {
        return oss_stsa(array_to_mag(mag, hop_seconds, 0));
      },
      py::arg("magnitudes"), py::arg("hop_seconds") = 0.01);

  m.def(
      "cgd_smooth",
      [](const OnsetStrengthSignal& oss, double radius) {
        return cgd_smooth(oss, {radius});
      },
      py::arg("oss"), py::arg("radius") = 1.010);
  m.def("chirp_group_delay", &chirp_group_delay, py::arg("signal"),
        py::arg("radius"), py::arg("n_points"));

  m.def(
      "find_peaks_valleys",
      [](const std::vector<double>& x) {
        const auto set = find_peaks_valleys(x);
        return py::make_tuple(set.peaks, set.valleys);
      },
      py::arg("x"));
  m.def(
      "vpd_pick",
      [](const OnsetStrengthSignal& oss, double mu_scale) {
        return vpd_pick(oss, {mu_scale});
      },
      py::arg("oss"), py::arg("mu_scale") = 0.80);
  m.def("frames_to_times", &frames_to_times, py::arg("frames"),
        py::arg("hop_seconds"), py::arg("offset_seconds") = 0.0);

  m.def("parse_annotations", &parse_annotations, py::arg("path"));
  m.def(
      "match_onsets",
      [](const OnsetList& reference, const OnsetList& detected,
         double tolerance_s) {
        const auto match = match_onsets(reference, detected, tolerance_s);
        const auto metrics = compute_metrics(match);
        py::dict out;
        out["tp"] = match.tp;
        out["fp"] = match.fp;
        out["fn"] = match.fn;
        out["pairs"] = match.pairs;
        out["precision"] = metrics.precision;
        out["recall"] = metrics.recall;
        out["f1"] = metrics.f1;
        return out;
      },
      py::arg("reference"), py::arg("detected"),
      py::arg("tolerance_s") = 0.050);

  m.def(
      "detect",
      [](const AudioBuffer& audio, const std::string& preset,
         const py::kwargs& kwargs) {
        PipelineConfig cfg = preset.empty() ? PipelineConfig{}
                                            : preset_config(preset);
        if (kwargs && py::len(kwargs) > 0) {
          nlohmann::json base = config_to_json(cfg);
          nlohmann::json patch =
              config_to_json(config_from_kwargs(kwargs));
          // Only override keys the caller actually passed.
          for (const auto& item : kwargs) {
            const std::string key = py::str(item.first);
            base[key] = patch.at(key);
          }
          cfg = config_from_json(base);
        }
        return detect_onsets(audio, cfg);
      },
      py::arg("audio"), py::arg("preset") = "4012",
      "Run the full pipeline; keyword arguments override preset fields "
      "(cgd_radius, vpd_mu, frame_ms, hop_ms, oss, picker, use_cgd, ...)");

  m.def(
      "bench",
      [](const AudioBuffer& audio, const std::string& preset, int repeats,
         int warmup) {
        const auto timings =
            time_pipeline(audio, preset_config(preset), repeats, warmup);
        py::list out;
        for (const auto& t : timings) {
          py::dict d;
          d["stage"] = stage_name(t.stage);
          d["mean_ms"] = t.mean_ms;
          d["min_ms"] = t.min_ms;
          d["max_ms"] = t.max_ms;
          d["repeats"] = t.repeats;
          out.append(d);
        }
        return out;
      },
      py::arg("audio"), py::arg("preset") = "4012", py::arg("repeats") = 10,
      py::arg("warmup") = 2);

  m.def("preset_names", [] {
    return std::vector<std::string>{"1001", "1012", "2101", "2112",
                                    "3100", "4012", "5000"};
  });
}
