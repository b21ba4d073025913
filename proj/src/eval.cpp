#include "onsetlab/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace onsetlab {

OnsetList parse_annotations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("FileNotFound: " + path);

  OnsetList times;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    try {
      std::size_t used = 0;
      const std::string body = line.substr(first);
      times.push_back(std::stod(body, &used));
      if (body.find_first_not_of(" \t", used) != std::string::npos)
        throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw IoError("NonNumericLine: '" + line + "'");
    }
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

MatchResult match_onsets(const OnsetList& reference, const OnsetList& detected,
                         double tolerance_s) {
  if (tolerance_s <= 0)
    throw DomainError("InvalidConfig: tolerance must be > 0");

  MatchResult result;
  // References ascending, each taking the earliest unmatched detection
  // within its window. For sorted lists this maximizes the match count and
  // resolves equidistant ties toward the earlier detection.
  std::size_t next = 0;
  std::vector<bool> used(detected.size(), false);
  for (double ref : reference) {
    while (next < detected.size() && detected[next] < ref - tolerance_s)
      ++next;
    std::size_t cand = next;
    while (cand < detected.size() && used[cand]) ++cand;
    if (cand < detected.size() && detected[cand] <= ref + tolerance_s) {
      used[cand] = true;
      result.pairs.emplace_back(ref, detected[cand]);
    }
  }
  result.tp = static_cast<int>(result.pairs.size());
  result.fp = static_cast<int>(detected.size()) - result.tp;
  result.fn = static_cast<int>(reference.size()) - result.tp;
  return result;
}

Metrics compute_metrics(const MatchResult& m) {
  Metrics out;
  const int det = m.tp + m.fp;
  const int ref = m.tp + m.fn;
  out.precision = det > 0 ? static_cast<double>(m.tp) / det : 0.0;
  out.recall = ref > 0 ? static_cast<double>(m.tp) / ref : 0.0;
  const double pr = out.precision + out.recall;
  out.f1 = pr > 0 ? 2.0 * out.precision * out.recall / pr : 0.0;
  return out;
}

Metrics aggregate(const std::vector<Metrics>& per_file) {
  if (per_file.empty()) throw DomainError("EmptyList: nothing to aggregate");
  Metrics out;
  for (const Metrics& m : per_file) {
    out.precision += m.precision;
    out.recall += m.recall;
    out.f1 += m.f1;
  }
  const double n = static_cast<double>(per_file.size());
  out.precision /= n;
  out.recall /= n;
  out.f1 /= n;
  return out;
}

}  // namespace onsetlab
