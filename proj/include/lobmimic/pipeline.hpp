#pragma once

#include <cstdint>
#include <vector>

#include "lobmimic/config.hpp"
#include "lobmimic/experiment.hpp"
#include "lobmimic/stats.hpp"

namespace lobmimic {

struct SimulateSummary {
  std::size_t focal_slot = 0;
  std::vector<std::int64_t> cumulative_profit;  // per slot, over all recording sessions
  std::size_t tape_records = 0;
};

/// Runs the recording sessions, picks the ZIP slot with the highest
/// cumulative profit and writes its quote tape. Recording session i uses seed
/// config.seed + i and its tape times are offset by i * duration.
SimulateSummary run_simulate(const RunConfig& config);

struct TrainSummary {
  double train_rms = 0.0;
  double test_rms = 0.0;
  double test_correlation = 0.0;  // teacher vs student quotes, held-out part
  std::size_t train_records = 0;
  std::size_t test_records = 0;
};

/// Tape -> dataset -> trained model, RMS histories and teacher/student
/// predictions.
TrainSummary run_train(const RunConfig& config);

struct EvaluateSummary {
  std::size_t tracked_slot = 0;
  ProfitSample zip;
  ProfitSample mimic;
};

/// Homogeneous ZIP and heterogeneous sessions with matched seeds, plus
/// homogeneous clone sessions when enabled.
EvaluateSummary run_evaluate(const RunConfig& config, int jobs = 1);

struct CompareSummary {
  SummaryStats a;
  SummaryStats b;
  MannWhitneyResult test;
};

/// One-tailed test of "b greater than a" over two profit files.
CompareSummary run_compare(const RunConfig& config);

/// Slot recorded as focal in the recording summary of a previous simulate.
std::size_t read_focal_slot(const std::filesystem::path& recording_csv);

}  // namespace lobmimic
