#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "onsetlab/spectral.hpp"
#include "oracles.hpp"

using namespace onsetlab;

namespace {

AudioBuffer sine(double freq, double dur_s, int fs = 44100) {
  AudioBuffer a;
  a.sample_rate = fs;
  a.samples.resize(static_cast<std::size_t>(dur_s * fs));
  for (std::size_t i = 0; i < a.samples.size(); ++i)
    a.samples[i] = std::sin(2.0 * std::numbers::pi * freq * i / fs);
  return a;
}

MagnitudeSpectrogram make_mag(const std::vector<std::vector<double>>& rows,
                              double bin_hz = 0.0) {
  MagnitudeSpectrogram mag;
  mag.n_frames = rows.size();
  mag.n_bins = rows.empty() ? 0 : rows[0].size();
  mag.hop_seconds = 0.01;
  mag.bin_hz = bin_hz;
  for (const auto& r : rows)
    mag.cells.insert(mag.cells.end(), r.begin(), r.end());
  return mag;
}

}  // namespace

TEST_CASE("stft framing arithmetic") {
  AudioBuffer a;
  a.sample_rate = 44100;
  a.samples.assign(44100, 0.0);
  const auto spec = stft(a, {40.0, 10.0, Window::hann});
  CHECK(spec.n_fft == 1764);
  CHECK(spec.n_bins == 882);
  CHECK(spec.n_frames == (44100 - 1764) / 441 + 1);  // 97
  CHECK(spec.n_frames == 97);
  CHECK(spec.hop_seconds == doctest::Approx(0.01));
  CHECK(spec.bin_hz == doctest::Approx(44100.0 / 1764.0));
}

TEST_CASE("stft of silence is zero") {
  AudioBuffer a;
  a.sample_rate = 44100;
  a.samples.assign(8820, 0.0);
  const auto spec = stft(a, {40.0, 10.0, Window::hann});
  for (const auto& c : spec.cells) CHECK(std::abs(c) == 0.0);
}

TEST_CASE("pure bin-aligned sinusoid concentrates energy, rect window") {
  // 441 Hz * m lands on a bin when n_fft = 1764 divides fs evenly (bin_hz
  // = 25 Hz, 450? no: bin_hz = 44100/1764 = 25 Hz; use 441*2 = 882 Hz ->
  // not integer bin). Take f = 25 * 40 = 1000 Hz exactly on bin 40.
  const auto audio = sine(1000.0, 0.5);
  const auto spec = stft(audio, {40.0, 10.0, Window::rect});
  const auto mag = magnitude(spec);
  const std::size_t frame = spec.n_frames / 2;
  double total = 0.0, at_bin = 0.0;
  for (std::size_t k = 0; k < mag.n_bins; ++k) {
    const double e = mag.at(frame, k) * mag.at(frame, k);
    total += e;
    if (k == 40) at_bin = e;
  }
  CHECK(at_bin / total >= 0.90);

  // Against a direct DFT oracle on the same frame.
  std::vector<double> frame_samples(
      audio.samples.begin() + static_cast<long>(frame * 441),
      audio.samples.begin() + static_cast<long>(frame * 441 + 1764));
  const auto direct = oracle::dft(frame_samples);
  for (std::size_t k = 0; k < mag.n_bins; k += 97)
    CHECK(mag.at(frame, k) ==
          doctest::Approx(std::abs(direct[k])).epsilon(1e-9));
}

TEST_CASE("stft is linear in the audio") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  AudioBuffer a, b, sum;
  a.sample_rate = b.sample_rate = sum.sample_rate = 8000;
  a.samples.resize(1600);
  b.samples.resize(1600);
  sum.samples.resize(1600);
  for (std::size_t i = 0; i < 1600; ++i) {
    a.samples[i] = dist(rng);
    b.samples[i] = dist(rng);
    sum.samples[i] = a.samples[i] + b.samples[i];
  }
  const StftConfig cfg{20.0, 5.0, Window::hann};
  const auto sa = stft(a, cfg), sb = stft(b, cfg), ss = stft(sum, cfg);
  REQUIRE(ss.cells.size() == sa.cells.size());
  for (std::size_t i = 0; i < ss.cells.size(); ++i)
    CHECK(std::abs(ss.cells[i] - (sa.cells[i] + sb.cells[i])) < 1e-9);
}

TEST_CASE("stft rejects short audio") {
  AudioBuffer a;
  a.sample_rate = 44100;
  a.samples.assign(100, 0.0);
  CHECK_THROWS_AS(stft(a, {40.0, 10.0, Window::hann}), DomainError);
}

TEST_CASE("magnitude basics") {
  ComplexSpectrogram spec;
  spec.n_frames = 1;
  spec.n_bins = 2;
  spec.hop_seconds = 0.01;
  spec.cells = {{3.0, 4.0}, {0.0, 0.0}};
  const auto mag = magnitude(spec);
  CHECK(mag.at(0, 0) == doctest::Approx(5.0));
  CHECK(mag.at(0, 1) == 0.0);
  CHECK(mag.hop_seconds == 0.01);
}

TEST_CASE("magnitude invariant under phase rotation") {
  ComplexSpectrogram spec;
  spec.n_frames = 2;
  spec.n_bins = 3;
  spec.cells = {{1, 2}, {-3, 0.5}, {0, -2}, {4, 4}, {-1, -1}, {2, 0}};
  auto rotated = spec;
  const std::complex<double> phase = std::polar(1.0, 0.7);
  for (auto& c : rotated.cells) c *= phase;
  const auto m1 = magnitude(spec), m2 = magnitude(rotated);
  for (std::size_t i = 0; i < m1.cells.size(); ++i)
    CHECK(m1.cells[i] == doctest::Approx(m2.cells[i]));
}

TEST_CASE("filterbank band count matches the log spacing formula") {
  const double bin_hz = 44100.0 / 1764.0;
  auto mag = make_mag({std::vector<double>(882, 1.0)}, bin_hz);
  const auto out = log_filterbank(mag, 24, 30.0, 17000.0);
  const int expected =
      static_cast<int>(std::floor(24.0 * std::log2(17000.0 / 30.0)));
  CHECK(expected == 219);
  CHECK(out.n_bins == static_cast<std::size_t>(expected));
  CHECK(out.band_centers_hz.size() == out.n_bins);
  CHECK(out.band_centers_hz.front() == doctest::Approx(30.0));
}

TEST_CASE("filterbank maps zero to zero and is linear") {
  const double bin_hz = 44100.0 / 1764.0;
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(0.0, 2.0);
  std::vector<std::vector<double>> rows(3, std::vector<double>(882));
  for (auto& r : rows)
    for (auto& v : r) v = dist(rng);

  auto zero = make_mag({std::vector<double>(882, 0.0)}, bin_hz);
  for (double v : log_filterbank(zero, 24, 30, 17000).cells) CHECK(v == 0.0);

  auto mag = make_mag(rows, bin_hz);
  auto doubled = mag;
  for (auto& v : doubled.cells) v *= 2.0;
  const auto f1 = log_filterbank(mag, 24, 30, 17000);
  const auto f2 = log_filterbank(doubled, 24, 30, 17000);
  for (std::size_t i = 0; i < f1.cells.size(); ++i)
    CHECK(f2.cells[i] == doctest::Approx(2.0 * f1.cells[i]).epsilon(1e-12));
}

TEST_CASE("filterbank range validation") {
  auto mag = make_mag({std::vector<double>(882, 1.0)}, 25.0);
  CHECK_THROWS_AS(log_filterbank(mag, 24, 17000.0, 30.0), DomainError);
  CHECK_THROWS_AS(log_filterbank(mag, 24, 30.0, 40000.0), DomainError);
  CHECK_THROWS_AS(log_filterbank(mag, 0, 30.0, 17000.0), DomainError);
}

TEST_CASE("max filter windowed maxima") {
  auto mag = make_mag({{0, 1, 0}});
  const auto out = max_filter_freq(mag, 1);
  CHECK(out.at(0, 0) == 1.0);
  CHECK(out.at(0, 1) == 1.0);
  CHECK(out.at(0, 2) == 1.0);
}

TEST_CASE("max filter leaves constants unchanged") {
  auto mag = make_mag({{3, 3, 3, 3}});
  const auto out = max_filter_freq(mag, 1);
  for (double v : out.cells) CHECK(v == 3.0);
}

TEST_CASE("max filter matches brute force on random grids") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<std::vector<double>> rows(5, std::vector<double>(8));
  for (auto& r : rows)
    for (auto& v : r) v = dist(rng);
  const auto mag = make_mag(rows);
  for (int radius : {1, 2, 3}) {
    const auto got = max_filter_freq(mag, radius);
    const auto want = oracle::max_filter(rows, radius);
    for (std::size_t n = 0; n < 5; ++n)
      for (std::size_t k = 0; k < 8; ++k)
        CHECK(got.at(n, k) == want[n][k]);
  }
}

TEST_CASE("max filter properties") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<std::vector<double>> rows(4, std::vector<double>(12));
  for (auto& r : rows)
    for (auto& v : r) v = dist(rng);
  const auto mag = make_mag(rows);

  const auto once = max_filter_freq(mag, 1);
  // Output dominates input.
  for (std::size_t i = 0; i < mag.cells.size(); ++i)
    CHECK(once.cells[i] >= mag.cells[i]);
  // Twice with radius 1 equals once with radius 2 on interior bins.
  const auto twice = max_filter_freq(once, 1);
  const auto radius2 = max_filter_freq(mag, 2);
  for (std::size_t n = 0; n < mag.n_frames; ++n)
    for (std::size_t k = 2; k + 2 < mag.n_bins; ++k)
      CHECK(twice.at(n, k) == radius2.at(n, k));
}
