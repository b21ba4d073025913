#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <limits>
#include <random>

#include "onsetlab/peakpick.hpp"
#include "synth.hpp"

using namespace onsetlab;

namespace {

OnsetStrengthSignal make_oss(std::vector<double> values, double hop = 0.01) {
  OnsetStrengthSignal oss;
  oss.values = std::move(values);
  oss.hop_seconds = hop;
  return oss;
}

}  // namespace

TEST_CASE("peaks and valleys with a leading virtual valley") {
  const auto set = find_peaks_valleys({0, 1, 0, 2, 0});
  CHECK(set.peaks == std::vector<std::size_t>{1, 3});
  CHECK(set.valleys == std::vector<std::size_t>{0, 2});
}

TEST_CASE("monotone sequences have no extrema") {
  const auto set = find_peaks_valleys({0, 1, 2, 3, 4});
  CHECK(set.peaks.empty());
  CHECK(set.valleys.empty());
}

TEST_CASE("hand-traced extrema") {
  const auto set = find_peaks_valleys({2, 0, 1, 0.5, 4, 1});
  CHECK(set.peaks == std::vector<std::size_t>{2, 4});
  CHECK(set.valleys == std::vector<std::size_t>{1, 3});
}

TEST_CASE("plateaus resolve at the rising edge") {
  const auto set = find_peaks_valleys({0, 1, 1, 0, 0, 2, 0});
  CHECK(set.peaks == std::vector<std::size_t>{1, 5});
  REQUIRE(set.valleys.size() == 2);
  CHECK(set.valleys[0] == 0);  // virtual
  CHECK(set.valleys[1] == 3);
}

TEST_CASE("too short throws") {
  CHECK_THROWS_AS(find_peaks_valleys({1, 2}), DomainError);
}

TEST_CASE("vpd hand trace") {
  // d_vp = {1, 3.5}; T = 0.8 * 3.5 = 2.8; only the second survives.
  const auto onsets = vpd_pick(make_oss({2, 0, 1, 0.5, 4, 1}), {0.8});
  CHECK(onsets == std::vector<std::size_t>{3});
}

TEST_CASE("vpd with equal distances keeps all below-threshold-free pairs") {
  const auto onsets = vpd_pick(make_oss({0, 1, 0, 1, 0, 1, 0}), {0.9});
  CHECK(onsets == std::vector<std::size_t>{0, 2, 4});
}

TEST_CASE("vpd on a flat signal is empty") {
  CHECK(vpd_pick(make_oss({1, 1, 1, 1}), {0.8}).empty());
}

TEST_CASE("vpd properties over random signals") {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<std::size_t> len_dist(3, 200);
    const auto oss = testsynth::random_oss(len_dist(rng), rng);
    const auto set = find_peaks_valleys(oss.values);
    const auto onsets = vpd_pick(oss, {0.8});

    // Subset of the valleys, strictly increasing, no more than the peaks.
    CHECK(std::is_sorted(onsets.begin(), onsets.end()));
    CHECK(std::adjacent_find(onsets.begin(), onsets.end()) == onsets.end());
    CHECK(onsets.size() <= set.peaks.size());
    for (auto v : onsets)
      CHECK(std::find(set.valleys.begin(), set.valleys.end(), v) !=
            set.valleys.end());

    // Monotone in mu.
    const auto strict = vpd_pick(oss, {0.95});
    for (auto v : strict)
      CHECK(std::find(onsets.begin(), onsets.end(), v) != onsets.end());

    // Scale and shift invariance.
    auto scaled = oss;
    for (auto& v : scaled.values) v = v * 3.25 + 1.5;
    CHECK(vpd_pick(scaled, {0.8}) == onsets);
  }
}

TEST_CASE("pp1/pp2: all-zero OSS with positive delta is empty") {
  const auto oss = make_oss(std::vector<double>(50, 0.0));
  PickerParams p = pp1_defaults();
  p.delta = 0.1;
  CHECK(pp1_pick(oss, p).empty());
  CHECK(pp2_pick(oss, pp2_defaults()).empty());
}

TEST_CASE("pp1: single impulse above delta is found") {
  std::vector<double> values(60, 0.0);
  values[30] = 2.0;
  PickerParams p = pp1_defaults();
  p.delta = 0.5;
  const auto onsets = pp1_pick(make_oss(values), p);
  CHECK(onsets == std::vector<std::size_t>{30});
}

TEST_CASE("pp1: combination window drops the second of two close impulses") {
  std::vector<double> values(60, 0.0);
  values[20] = 2.0;
  values[22] = 1.9;
  PickerParams p = pp1_defaults();
  p.pre_max_frames = 1;
  p.post_max_frames = 1;
  p.delta = 0.5;
  p.combination_frames = 5;
  const auto onsets = pp1_pick(make_oss(values), p);
  CHECK(onsets == std::vector<std::size_t>{20});
}

TEST_CASE("pp pickers return empty for delta = infinity") {
  std::mt19937 rng(7);
  const auto oss = testsynth::random_oss(100, rng);
  PickerParams p = pp1_defaults();
  p.delta = std::numeric_limits<double>::infinity();
  CHECK(pp1_pick(oss, p).empty());
  CHECK(pp2_pick(oss, p).empty());
}

TEST_CASE("pp pickers validate input") {
  PickerParams p = pp1_defaults();
  CHECK_THROWS_AS(pp1_pick(make_oss({1, 2, 1}), p), DomainError);
  PickerParams zeros{};
  zeros.pre_max_frames = zeros.post_max_frames = 0;
  zeros.pre_avg_frames = zeros.post_avg_frames = 0;
  CHECK_THROWS_AS(pp1_pick(make_oss(std::vector<double>(50, 1.0)), zeros),
                  DomainError);
}

TEST_CASE("frames to times") {
  const auto times = frames_to_times({0, 10, 20}, 0.01);
  REQUIRE(times.size() == 3);
  CHECK(times[0] == 0.0);
  CHECK(times[1] == doctest::Approx(0.1));
  CHECK(times[2] == doctest::Approx(0.2));
  CHECK(frames_to_times({}, 0.01).empty());
  CHECK(frames_to_times({3}, 0.005)[0] == doctest::Approx(0.015));
  CHECK_THROWS_AS(frames_to_times({5, 5}, 0.01), DomainError);
  CHECK_THROWS_AS(frames_to_times({5, 3}, 0.01), DomainError);
}
