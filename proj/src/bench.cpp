#include "onsetlab/bench.hpp"

#include <algorithm>
#include <chrono>

namespace onsetlab {

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
StageTiming time_stage(Stage stage, int repeats, int warmup, F&& body) {
  for (int i = 0; i < warmup; ++i) body();

  StageTiming t;
  t.stage = stage;
  t.repeats = repeats;
  t.raw_ms.reserve(repeats);
  for (int i = 0; i < repeats; ++i) {
    const auto start = Clock::now();
    body();
    const auto stop = Clock::now();
    t.raw_ms.push_back(
        std::chrono::duration<double, std::milli>(stop - start).count());
  }

  std::vector<double> sorted = t.raw_ms;
  std::sort(sorted.begin(), sorted.end());
  t.min_ms = sorted.front();
  t.max_ms = sorted.back();
  t.median_ms = sorted[sorted.size() / 2];
  double sum = 0.0;
  for (double v : t.raw_ms) sum += v;
  t.mean_ms = sum / static_cast<double>(t.raw_ms.size());
  return t;
}

}  // namespace

std::string stage_name(Stage s) {
  switch (s) {
    case Stage::oss: return "oss";
    case Stage::smoothing: return "smoothing";
    case Stage::peak_picking: return "peak_picking";
    case Stage::total: return "total";
  }
  return "unknown";
}

std::vector<StageTiming> time_pipeline(const AudioBuffer& audio,
                                       const PipelineConfig& cfg,
                                       int repeats, int warmup) {
  if (repeats < 1) throw DomainError("InvalidConfig: repeats must be >= 1");

  std::vector<StageTiming> out;

  // The OSS stage includes the STFT and any filterbank/max-filter work.
  OnsetStrengthSignal oss;
  out.push_back(time_stage(Stage::oss, repeats, warmup,
                           [&] { oss = compute_oss(audio, cfg); }));

  OnsetStrengthSignal picked_input = oss;
  if (cfg.use_cgd) {
    out.push_back(time_stage(Stage::smoothing, repeats, warmup, [&] {
      picked_input = cgd_smooth(oss, cfg.cgd);
    }));
  }

  std::vector<std::size_t> frames;
  out.push_back(time_stage(Stage::peak_picking, repeats, warmup,
                           [&] { frames = pick_onsets(picked_input, cfg); }));

  out.push_back(time_stage(Stage::total, repeats, warmup, [&] {
    OnsetStrengthSignal s = compute_oss(audio, cfg);
    if (cfg.use_cgd) s = cgd_smooth(s, cfg.cgd);
    pick_onsets(s, cfg);
  }));
  return out;
}

}  // namespace onsetlab
