/// Command-line front end: detect onsets in one file, evaluate a manifest
/// against reference annotations, sweep parameter grids, and time the
/// pipeline stages.

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "onsetlab/audio_io.hpp"
#include "onsetlab/bench.hpp"
#include "onsetlab/config_json.hpp"
#include "onsetlab/eval.hpp"
#include "onsetlab/pipeline.hpp"

using nlohmann::json;
using namespace onsetlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;

int thread_cap() {
  if (const char* env = std::getenv("ONSETLAB_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

struct ManifestEntry {
  std::string audio_path;
  std::string annotation_path;
};

std::vector<ManifestEntry> load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("FileNotFound: " + path);
  std::vector<ManifestEntry> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size())
      throw IoError("ManifestMalformed: line " + std::to_string(lineno) +
                    " needs audio<TAB>annotation");
    entries.push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  return entries;
}

struct FileScore {
  std::string path;
  bool ok = false;
  std::string error;
  MatchResult match;
  Metrics metrics;
};

/// Detect + score each manifest entry. Files run in parallel up to the
/// ONSETLAB_THREADS cap; results keep manifest order.
std::vector<FileScore> evaluate_manifest(const std::vector<ManifestEntry>& entries,
                                         const PipelineConfig& cfg,
                                         double tolerance_s) {
  std::vector<FileScore> scores(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= entries.size()) return;
      FileScore& score = scores[i];
      score.path = entries[i].audio_path;
      try {
        const OnsetList detected = run_detect(entries[i].audio_path, cfg);
        const OnsetList reference =
            parse_annotations(entries[i].annotation_path);
        score.match = match_onsets(reference, detected, tolerance_s);
        score.metrics = compute_metrics(score.match);
        score.ok = true;
      } catch (const Error& e) {
        score.error = e.what();
      }
    }
  };
  const int n_threads =
      std::min<int>(thread_cap(), static_cast<int>(entries.size()));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return scores;
}

json report_json(const std::vector<FileScore>& scores,
                 const PipelineConfig& cfg, double tolerance_s) {
  json files = json::array();
  std::vector<Metrics> per_file;
  int tp = 0, fp = 0, fn = 0;
  for (const FileScore& s : scores) {
    if (!s.ok) {
      files.push_back({{"path", s.path}, {"error", s.error}});
      continue;
    }
    files.push_back({{"path", s.path},
                     {"tp", s.match.tp},
                     {"fp", s.match.fp},
                     {"fn", s.match.fn},
                     {"precision", s.metrics.precision},
                     {"recall", s.metrics.recall},
                     {"f1", s.metrics.f1}});
    per_file.push_back(s.metrics);
    tp += s.match.tp;
    fp += s.match.fp;
    fn += s.match.fn;
  }

  json out;
  out["files"] = files;
  if (!per_file.empty()) {
    const Metrics macro = aggregate(per_file);
    out["macro"] = {{"precision", macro.precision},
                    {"recall", macro.recall},
                    {"f1", macro.f1}};
    const Metrics micro = compute_metrics({tp, fp, fn, {}});
    out["micro"] = {{"precision", micro.precision},
                    {"recall", micro.recall},
                    {"f1", micro.f1},
                    {"tp", tp},
                    {"fp", fp},
                    {"fn", fn}};
  }
  out["params"] = config_to_json(cfg);
  out["params"]["tolerance_s"] = tolerance_s;
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("FileNotFound: cannot write " + path);
  out << text;
}

/// Shared pipeline flags; a config file provides the base and explicit
/// flags override it.
struct ConfigFlags {
  std::string preset;
  std::string config_path;
  std::string oss_name;
  std::string picker;
  std::string external_oss;
  double cgd_radius = -1;
  double vpd_mu = -1;
  double frame_ms = -1;
  double hop_ms = -1;
  double pp_delta = -1;
  int superflux_mu = -1;
  int use_cgd = -1;  // tri-state

  void attach(CLI::App* app) {
    app->add_option("--preset", preset,
                    "Named pipeline: 1001 1012 2101 2112 3100 4012 5000");
    app->add_option("--config", config_path, "JSON config file");
    app->add_option("--oss", oss_name,
                    "complex_domain|spectral_flux|superflux|stsa|external");
    app->add_option("--picker", picker, "vpd|pp1|pp2");
    app->add_option("--oss-file", external_oss,
                    "External OSS text file (for --oss external)");
    app->add_option("--cgd-radius", cgd_radius, "Chirp radius (> 1)");
    app->add_option("--vpd-mu", vpd_mu, "VPD threshold scale in (0,1]");
    app->add_option("--frame-ms", frame_ms, "STFT frame length, ms");
    app->add_option("--hop-ms", hop_ms, "STFT hop, ms");
    app->add_option("--pp-delta", pp_delta, "PP1/PP2 threshold delta");
    app->add_option("--superflux-mu", superflux_mu,
                    "Superflux frame offset (1-4)");
    app->add_flag("--cgd,!--no-cgd",
                  [this](std::int64_t v) { use_cgd = v > 0 ? 1 : 0; },
                  "Enable/disable CGD smoothing");
  }

  PipelineConfig resolve() const {
    PipelineConfig cfg;
    if (!preset.empty()) cfg = preset_config(preset);
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw IoError("FileNotFound: " + config_path);
      json j;
      in >> j;
      // Accept both a bare config and a detect report wrapping one.
      cfg = config_from_json(j.contains("params") ? j.at("params") : j);
    }
    if (!oss_name.empty()) cfg.oss_method = oss_method_from_name(oss_name);
    if (!picker.empty()) {
      cfg.picker = picker_from_name(picker);
      if (cfg.picker == Picker::pp1) cfg.picker_params = pp1_defaults();
      if (cfg.picker == Picker::pp2) cfg.picker_params = pp2_defaults();
    }
    if (!external_oss.empty()) cfg.external_oss_path = external_oss;
    if (cgd_radius > 0) cfg.cgd.radius = cgd_radius;
    if (vpd_mu > 0) cfg.vpd.mu_scale = vpd_mu;
    if (frame_ms > 0) cfg.stft.frame_ms = frame_ms;
    if (hop_ms > 0) cfg.stft.hop_ms = hop_ms;
    if (pp_delta >= 0) cfg.picker_params.delta = pp_delta;
    if (superflux_mu > 0) cfg.superflux_mu = superflux_mu;
    if (use_cgd >= 0) cfg.use_cgd = use_cgd == 1;
    return cfg;
  }
};

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

int run_sweep_cmd(const std::string& manifest_path, const ConfigFlags& flags,
                  double tolerance_s, const std::string& grid_frames,
                  const std::string& grid_hops, const std::string& grid_radius,
                  const std::string& grid_mu, const std::string& grid_delta,
                  const std::string& csv_out, const std::string& json_out) {
  const PipelineConfig base = flags.resolve();
  const auto entries = load_manifest(manifest_path);

  auto values_or = [](const std::string& s, std::vector<double> dflt) {
    return s.empty() ? dflt : parse_list(s);
  };
  const auto frames = values_or(grid_frames, {20, 40});
  const auto hops = values_or(grid_hops, {5, 10});
  std::vector<double> radii;
  if (!grid_radius.empty()) {
    radii = parse_list(grid_radius);
  } else if (base.use_cgd) {
    for (int i = 1; i <= 20; ++i) radii.push_back(1.0 + i * 0.001);
  } else {
    radii.push_back(base.cgd.radius);
  }
  std::vector<double> mus;
  if (!grid_mu.empty()) {
    mus = parse_list(grid_mu);
  } else if (base.picker == Picker::vpd) {
    for (int i = 0; i <= 5; ++i) mus.push_back(0.75 + i * 0.05);
  } else {
    mus.push_back(base.vpd.mu_scale);
  }
  std::vector<double> deltas;
  if (!grid_delta.empty()) {
    deltas = parse_list(grid_delta);
  } else if (base.picker != Picker::vpd) {
    deltas = {0.01, 0.05, 0.1, 0.5, 1.0, 2.0};
  } else {
    deltas.push_back(base.picker_params.delta);
  }

  std::vector<PipelineConfig> grid;
  for (double f : frames)
    for (double h : hops)
      for (double r : radii)
        for (double mu : mus)
          for (double d : deltas) {
            PipelineConfig cfg = base;
            cfg.stft.frame_ms = f;
            cfg.stft.hop_ms = h;
            cfg.cgd.radius = r;
            cfg.vpd.mu_scale = mu;
            cfg.picker_params.delta = d;
            if (cfg.stft.hop_ms > cfg.stft.frame_ms) continue;
            grid.push_back(cfg);
          }
  if (grid.empty()) throw DomainError("EmptyGrid");

  std::ostringstream csv;
  csv << "frame_ms,hop_ms,cgd_radius,vpd_mu,delta,macro_f1,macro_precision,"
         "macro_recall\n";

  std::size_t best = 0;
  Metrics best_metrics;
  std::string best_key;
  std::vector<Metrics> macro_per_cfg(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto scores = evaluate_manifest(entries, grid[i], tolerance_s);
    std::vector<Metrics> per_file;
    for (const auto& s : scores)
      if (s.ok) per_file.push_back(s.metrics);
    Metrics macro;
    if (!per_file.empty()) macro = aggregate(per_file);
    macro_per_cfg[i] = macro;

    const auto& cfg = grid[i];
    csv << cfg.stft.frame_ms << ',' << cfg.stft.hop_ms << ','
        << cfg.cgd.radius << ',' << cfg.vpd.mu_scale << ','
        << cfg.picker_params.delta << ',' << macro.f1 << ','
        << macro.precision << ',' << macro.recall << '\n';

    const std::string key = config_key(cfg);
    const bool better =
        i == 0 || macro.f1 > best_metrics.f1 ||
        (macro.f1 == best_metrics.f1 &&
         (macro.precision > best_metrics.precision ||
          (macro.precision == best_metrics.precision && key < best_key)));
    if (better) {
      best = i;
      best_metrics = macro;
      best_key = key;
    }
  }

  if (!csv_out.empty()) write_text(csv_out, csv.str());

  json out;
  out["best_config"] = config_to_json(grid[best]);
  out["best_score"] = {{"f1", best_metrics.f1},
                       {"precision", best_metrics.precision},
                       {"recall", best_metrics.recall}};
  out["grid_points"] = grid.size();
  write_text(json_out, out.dump(2) + "\n");
  return kExitOk;
}

int run_convert(const std::string& input, const std::string& output,
                const std::string& mapping_path) {
  json mapping = json::object();
  if (!mapping_path.empty()) {
    if (!mapping_path.empty() && mapping_path.front() == '{') {
      mapping = json::parse(mapping_path);  // inline JSON
    } else {
      std::ifstream in(mapping_path);
      if (!in) throw IoError("FileNotFound: " + mapping_path);
      in >> mapping;
    }
  }
  const std::string format = mapping.value("format", "csv");
  const double scale = mapping.value("scale", 1.0);

  std::ifstream in(input);
  if (!in) throw IoError("FileNotFound: " + input);

  std::vector<double> times;
  std::string line;
  if (format == "csv") {
    const int column = mapping.value("column", 0);
    const std::string delim = mapping.value("delimiter", ",");
    const int skip = mapping.value("skip_lines", 0);
    int lineno = 0;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (++lineno <= skip || line.empty() || line[0] == '#') continue;
      std::vector<std::string> fields;
      std::size_t pos = 0;
      while (true) {
        const auto hit = line.find(delim, pos);
        fields.push_back(line.substr(pos, hit - pos));
        if (hit == std::string::npos) break;
        pos = hit + delim.size();
      }
      if (column >= static_cast<int>(fields.size()))
        throw IoError("NonNumericLine: column " + std::to_string(column) +
                      " missing in '" + line + "'");
      times.push_back(std::stod(fields[column]) * scale);
    }
  } else if (format == "regex") {
    const std::regex re(mapping.at("pattern").get<std::string>());
    while (std::getline(in, line)) {
      std::smatch m;
      if (std::regex_search(line, m, re) && m.size() > 1)
        times.push_back(std::stod(m[1].str()) * scale);
    }
  } else {
    throw DomainError("InvalidConfig: unknown mapping format '" + format +
                      "'");
  }

  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  std::ostringstream body;
  body.precision(9);
  for (double t : times) body << t << "\n";
  write_text(output, body.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"onsetlab - music onset detection, evaluation, and timing"};
  app.require_subcommand(1);

  ConfigFlags detect_flags, eval_flags, sweep_flags, bench_flags;
  std::string audio_path, manifest_path, json_out, csv_out;
  std::string conv_input, conv_output, conv_mapping;
  std::string grid_frames, grid_hops, grid_radius, grid_mu, grid_delta;
  double tolerance_s = 0.050;
  int repeats = 10, warmup = 2;

  auto* detect = app.add_subcommand("detect", "Detect onsets in one file");
  detect->add_option("audio", audio_path, "Input WAV file")->required();
  detect_flags.attach(detect);
  detect->add_option("--json-out", json_out, "Write a JSON report to a file");
  std::string detect_format = "text";
  detect->add_option("--format", detect_format, "Stdout format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  auto* evaluate =
      app.add_subcommand("evaluate", "Score a manifest of audio/annotation pairs");
  evaluate->add_option("--manifest", manifest_path,
                       "Text file of audio<TAB>annotation lines")
      ->required();
  eval_flags.attach(evaluate);
  evaluate->add_option("--tolerance-s", tolerance_s, "Match window, seconds");
  evaluate->add_option("--json-out", json_out, "Report output path");

  auto* sweep = app.add_subcommand("sweep", "Grid-search pipeline parameters");
  sweep->add_option("--manifest", manifest_path)->required();
  sweep_flags.attach(sweep);
  sweep->add_option("--tolerance-s", tolerance_s);
  sweep->add_option("--grid-frame-ms", grid_frames, "Comma list, default 20,40");
  sweep->add_option("--grid-hop-ms", grid_hops, "Comma list, default 5,10");
  sweep->add_option("--grid-cgd-radius", grid_radius,
                    "Comma list, default 1.001..1.020 step 0.001");
  sweep->add_option("--grid-vpd-mu", grid_mu,
                    "Comma list, default 0.75..1.00 step 0.05");
  sweep->add_option("--grid-delta", grid_delta, "PP1/PP2 delta values");
  sweep->add_option("--csv-out", csv_out, "Full score table");
  sweep->add_option("--json-out", json_out, "Best config + score");

  auto* bench = app.add_subcommand("bench", "Time the pipeline stages");
  bench->add_option("audio", audio_path, "Input WAV file")->required();
  bench_flags.attach(bench);
  bench->add_option("--repeats", repeats, "Timed iterations per stage");
  bench->add_option("--warmup", warmup, "Untimed iterations per stage");
  bench->add_option("--json-out", json_out, "Report output path");

  auto* convert = app.add_subcommand(
      "convert-annotations", "Map third-party annotation files to the "
                             "one-seconds-value-per-line format");
  convert->add_option("--input", conv_input)->required();
  convert->add_option("--output", conv_output)->required();
  convert->add_option("--mapping", conv_mapping,
                      "JSON field-mapping config (format/column/scale/...)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (detect->parsed()) {
      const PipelineConfig cfg = detect_flags.resolve();
      const OnsetList onsets = run_detect(audio_path, cfg);
      json out;
      out["file"] = audio_path;
      out["onsets"] = onsets;
      out["params"] = config_to_json(cfg);
      if (detect_format == "json") {
        std::cout << out.dump(2) << "\n";
      } else {
        std::ostringstream body;
        body.precision(9);
        for (double t : onsets) body << t << "\n";
        std::cout << body.str();
      }
      if (!json_out.empty()) write_text(json_out, out.dump(2) + "\n");
    } else if (evaluate->parsed()) {
      const PipelineConfig cfg = eval_flags.resolve();
      const auto entries = load_manifest(manifest_path);
      const auto scores = evaluate_manifest(entries, cfg, tolerance_s);
      write_text(json_out, report_json(scores, cfg, tolerance_s).dump(2) + "\n");
    } else if (sweep->parsed()) {
      return run_sweep_cmd(manifest_path, sweep_flags, tolerance_s,
                           grid_frames, grid_hops, grid_radius, grid_mu,
                           grid_delta, csv_out, json_out);
    } else if (bench->parsed()) {
      const PipelineConfig cfg = bench_flags.resolve();
      const AudioBuffer audio = load_audio(audio_path);
      const auto timings = time_pipeline(audio, cfg, repeats, warmup);
      json stages = json::array();
      for (const auto& t : timings) stages.push_back(timing_to_json(t));
      json out;
      out["file"] = audio_path;
      out["pipeline"] = config_to_json(cfg);
      out["machine"] = {
          {"hardware_threads", std::thread::hardware_concurrency()}};
      out["stages"] = stages;
      write_text(json_out, out.dump(2) + "\n");
    } else if (convert->parsed()) {
      return run_convert(conv_input, conv_output, conv_mapping);
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
