#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lobmimic/mlp.hpp"
#include "lobmimic/session.hpp"

namespace lobmimic {

/// Loads each model file once; MIMIC slots sharing a path share the model.
class ModelCache {
public:
  std::shared_ptr<const MlpModel> get(const std::filesystem::path& path);

private:
  std::map<std::string, std::shared_ptr<const MlpModel>> models_;
};

/// One kind string per roster slot, buyers first.
std::vector<std::string> slot_kinds(const SessionConfig& config);

/// "ZIP", "TRUTH", "MIMIC:<path>", or bare "MIMIC" for `default_model`.
std::unique_ptr<Trader> make_trader(const std::string& kind, Role role, ModelCache& cache,
                                    const std::shared_ptr<const MlpModel>& default_model = {});

Roster build_roster(const SessionConfig& config, const std::vector<std::string>& kinds,
                    ModelCache& cache, const std::shared_ptr<const MlpModel>& default_model = {});
Roster build_roster(const SessionConfig& config, ModelCache& cache);

/// Throws ConfigError unless the model's scale constants are the ones a
/// session with this config implies.
void check_model_fits(const MlpModel& model, const SessionConfig& config);

FeatureConstants session_constants(const SessionConfig& config);

enum class ExperimentMode : std::uint8_t { HomogeneousZip, Heterogeneous, HomogeneousMimic };
const char* to_string(ExperimentMode mode) noexcept;

struct ExperimentSpec {
  ExperimentMode mode = ExperimentMode::HomogeneousZip;
  int n_sessions = 0;
  SessionConfig base;
  std::size_t tracked_slot = 0;
  std::uint64_t seed_base = 0;
  std::shared_ptr<const MlpModel> model;
  int jobs = 1;
};

struct ProfitSample {
  std::vector<std::int64_t> values;
  ExperimentMode mode = ExperimentMode::HomogeneousZip;

  [[nodiscard]] std::vector<double> as_reals() const {
    return {values.begin(), values.end()};
  }
};

struct ExperimentResult {
  ProfitSample tracked;
  /// Every slot's end-of-session profit, one row per session.
  std::vector<std::vector<std::int64_t>> all_profits;
};

/// Session i runs with seed seed_base + i. Sessions are share-nothing and run
/// on up to `jobs` threads; results are merged by session index.
ExperimentResult run_experiment_detailed(const ExperimentSpec& spec);
ProfitSample run_experiment(const ExperimentSpec& spec);

void write_profit_csv(const std::filesystem::path& path, const ProfitSample& sample);
std::vector<std::int64_t> read_profit_csv(const std::filesystem::path& path);

}  // namespace lobmimic
