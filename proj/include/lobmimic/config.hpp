#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lobmimic/mlp.hpp"
#include "lobmimic/session.hpp"

namespace lobmimic {

/// Output file names, resolved against the output directory.
struct OutputPaths {
  std::string tape = "tape.csv";
  std::string recording = "recording.csv";
  std::string dataset = "dataset.csv";
  std::string model = "model.txt";
  std::string rms_history = "rms_history.csv";
  std::string predictions = "predictions.csv";
  std::string quote_chart = "quotes.svg";
  std::string zip_profits = "profit_zip.csv";
  std::string mimic_profits = "profit_mimic.csv";
  std::string clone_profits = "profit_mimic_homogeneous.csv";
  std::string report = "report.csv";
  std::string report_chart = "report.svg";
};

struct RunConfig {
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = "out";
  SessionConfig market;

  int recording_sessions = 4;

  double train_fraction = 0.8;
  std::vector<int> hidden_layers = {128, 128};
  Activation activation = Activation::Tanh;
  TrainConfig train;

  int eval_sessions = 50;
  std::optional<std::size_t> tracked_slot;  // default: the recorded focal trader
  std::uint64_t eval_seed_base = 0;
  bool homogeneous_mimic = false;

  std::optional<std::filesystem::path> compare_a;  // default: <out>/<zip_profits>
  std::optional<std::filesystem::path> compare_b;  // default: <out>/<mimic_profits>
  bool chart = true;

  OutputPaths outputs;

  [[nodiscard]] std::filesystem::path out(const std::string& name) const { return out_dir / name; }
  [[nodiscard]] std::vector<int> layer_sizes() const;
};

/// Default market: 5 ZIP buyers and 5 ZIP sellers on [1, 500] in a bull
/// market: buyer limits U[150, 200], seller limits U[100, 150], both bands
/// rising by 120 ticks over a 6000-tick session.
SessionConfig default_market();

/// Parses a YAML run file. Unknown keys, type mismatches and a missing seed
/// raise ConfigError naming the key and line. Relative paths inside the file
/// resolve against the file's directory.
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& text,
                            const std::filesystem::path& base_dir = std::filesystem::path("."));

}  // namespace lobmimic
