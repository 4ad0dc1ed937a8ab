#include "lobmimic/experiment.hpp"

#include <fstream>
#include <thread>

namespace lobmimic {

const char* to_string(ExperimentMode mode) noexcept {
  switch (mode) {
    case ExperimentMode::HomogeneousZip:
      return "homogeneous-zip";
    case ExperimentMode::Heterogeneous:
      return "heterogeneous";
    case ExperimentMode::HomogeneousMimic:
      return "homogeneous-mimic";
  }
  return "unknown";
}

namespace {

std::vector<std::string> experiment_kinds(const ExperimentSpec& spec) {
  std::vector<std::string> kinds(static_cast<std::size_t>(spec.base.trader_count()), "ZIP");
  switch (spec.mode) {
    case ExperimentMode::HomogeneousZip:
      break;
    case ExperimentMode::Heterogeneous:
      kinds[spec.tracked_slot] = "MIMIC";
      break;
    case ExperimentMode::HomogeneousMimic:
      kinds.assign(kinds.size(), "MIMIC");
      break;
  }
  return kinds;
}

}  // namespace

ExperimentResult run_experiment_detailed(const ExperimentSpec& spec) {
  if (spec.n_sessions <= 0) throw ConfigError("an experiment needs at least one session");
  validate(spec.base);
  if (spec.tracked_slot >= static_cast<std::size_t>(spec.base.trader_count())) {
    throw ConfigError("tracked slot " + std::to_string(spec.tracked_slot) + " outside roster");
  }
  if (spec.mode != ExperimentMode::HomogeneousZip) {
    if (!spec.model) throw ConfigError("experiment mode " + std::string(to_string(spec.mode)) +
                                       " needs a trained model");
    check_model_fits(*spec.model, spec.base);
  }
  const auto kinds = experiment_kinds(spec);
  const auto n = static_cast<std::size_t>(spec.n_sessions);

  ExperimentResult result;
  result.tracked.mode = spec.mode;
  result.tracked.values.assign(n, 0);
  result.all_profits.assign(n, {});

  auto run_one = [&](std::size_t i) {
    SessionConfig config = spec.base;
    config.rng_seed = spec.seed_base + i;
    ModelCache cache;
    Roster roster = build_roster(config, kinds, cache, spec.model);
    SessionResult session = run_session(config, roster);
    result.tracked.values[i] = session.profit_by_trader[spec.tracked_slot];
    result.all_profits[i] = std::move(session.profit_by_trader);
  };

  const auto jobs = static_cast<std::size_t>(std::max(1, spec.jobs));
  if (jobs == 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) run_one(i);
    return result;
  }
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < std::min(jobs, n); ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += jobs) run_one(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return result;
}

ProfitSample run_experiment(const ExperimentSpec& spec) {
  return run_experiment_detailed(spec).tracked;
}

void write_profit_csv(const std::filesystem::path& path, const ProfitSample& sample) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << "profit\n";
  for (auto v : sample.values) out << v << '\n';
}

std::vector<std::int64_t> read_profit_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DependencyError("cannot read profit file " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "profit") {
    throw FormatError(path.string() + ": line 1: expected header 'profit'");
  }
  std::vector<std::int64_t> values;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(line, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != line.size()) {
      throw FormatError(path.string() + ": line " + std::to_string(lineno) + ": bad profit '" +
                        line + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) throw DatasetError(path.string() + ": no profit values");
  return values;
}

}  // namespace lobmimic
