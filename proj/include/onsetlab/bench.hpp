#pragma once

#include <string>
#include <vector>

#include "onsetlab/pipeline.hpp"
#include "onsetlab/types.hpp"

namespace onsetlab {

enum class Stage { oss, smoothing, peak_picking, total };

struct StageTiming {
  Stage stage = Stage::total;
  double mean_ms = 0.0;
  double min_ms = 0.0;
  double max_ms = 0.0;
  double median_ms = 0.0;
  int repeats = 0;
  std::vector<double> raw_ms;  // per-repeat durations, mean recomputable
};

std::string stage_name(Stage s);

/// Wall-clock per-stage cost over `repeats` timed runs after `warmup`
/// untimed ones. The STFT is computed inside the OSS stage; file I/O is
/// excluded (the caller passes a decoded buffer). Single-threaded.
std::vector<StageTiming> time_pipeline(const AudioBuffer& audio,
                                       const PipelineConfig& cfg,
                                       int repeats = 10, int warmup = 2);

}  // namespace onsetlab
