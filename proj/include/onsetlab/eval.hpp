#pragma once

#include <string>
#include <utility>
#include <vector>

#include "onsetlab/types.hpp"

namespace onsetlab {

struct MatchResult {
  int tp = 0;
  int fp = 0;
  int fn = 0;
  std::vector<std::pair<double, double>> pairs;  // (ref_time, det_time)
};

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// One decimal seconds value per line; blank lines and '#' comments
/// ignored; output sorted with exact duplicates collapsed.
OnsetList parse_annotations(const std::string& path);

/// One-to-one matching within +-tolerance: references ascending, each
/// paired with the earliest unmatched detection in its window. Equidistant
/// ties therefore resolve to the earlier detection, and the pairing
/// maximizes the number of matches.
MatchResult match_onsets(const OnsetList& reference, const OnsetList& detected,
                         double tolerance_s = 0.050);

/// P = tp/(tp+fp), R = tp/(tp+fn) (0 on zero denominators),
/// F1 = 2PR/(P+R).
Metrics compute_metrics(const MatchResult& m);

/// Macro average: arithmetic mean of per-file P, R, F1 independently.
Metrics aggregate(const std::vector<Metrics>& per_file);

}  // namespace onsetlab
