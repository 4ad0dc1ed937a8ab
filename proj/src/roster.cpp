#include "lobmimic/experiment.hpp"
#include "lobmimic/mimic.hpp"
#include "lobmimic/zip.hpp"

namespace lobmimic {

std::shared_ptr<const MlpModel> ModelCache::get(const std::filesystem::path& path) {
  const auto key = path.string();
  auto it = models_.find(key);
  if (it != models_.end()) return it->second;
  auto model = std::make_shared<const MlpModel>(read_model(path));
  models_.emplace(key, model);
  return model;
}

std::vector<std::string> slot_kinds(const SessionConfig& config) {
  std::vector<std::string> kinds;
  for (const auto* specs : {&config.buyer_specs, &config.seller_specs}) {
    for (const auto& spec : *specs) {
      for (int i = 0; i < spec.count; ++i) kinds.push_back(spec.kind);
    }
  }
  return kinds;
}

std::unique_ptr<Trader> make_trader(const std::string& kind, Role role, ModelCache& cache,
                                    const std::shared_ptr<const MlpModel>& default_model) {
  if (kind == "ZIP") return std::make_unique<ZipTrader>(role);
  if (kind == "TRUTH") return std::make_unique<TruthTrader>(role);
  if (kind == "MIMIC") {
    if (!default_model) throw ConfigError("agent kind MIMIC needs a model");
    return std::make_unique<MimicTrader>(role, default_model);
  }
  static constexpr std::string_view prefix = "MIMIC:";
  if (kind.starts_with(prefix)) {
    const std::string path = kind.substr(prefix.size());
    if (path.empty()) throw ConfigError("agent kind MIMIC: has an empty model path");
    try {
      return std::make_unique<MimicTrader>(role, cache.get(path));
    } catch (const DependencyError& e) {
      throw ConfigError(std::string("missing model for mimic agent: ") + e.what());
    }
  }
  throw ConfigError("unknown agent kind '" + kind + "'");
}

Roster build_roster(const SessionConfig& config, const std::vector<std::string>& kinds,
                    ModelCache& cache, const std::shared_ptr<const MlpModel>& default_model) {
  if (kinds.size() != static_cast<std::size_t>(config.trader_count())) {
    throw ConfigError("roster kinds do not match configured trader counts");
  }
  Roster roster;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    roster.push_back(make_trader(kinds[i], config.role_of(i), cache, default_model));
  }
  return roster;
}

Roster build_roster(const SessionConfig& config, ModelCache& cache) {
  return build_roster(config, slot_kinds(config), cache);
}

FeatureConstants session_constants(const SessionConfig& config) {
  return FeatureConstants{static_cast<double>(config.price_range.max),
                          static_cast<double>(config.trader_count()),
                          static_cast<double>(config.duration)};
}

void check_model_fits(const MlpModel& model, const SessionConfig& config) {
  const FeatureConstants expected = session_constants(config);
  if (!(model.constants == expected)) {
    throw ConfigError("model normalisation constants (p_max " + format_real(model.constants.p_max) +
                      ", q_norm " + format_real(model.constants.q_norm) + ", horizon " +
                      format_real(model.constants.horizon) +
                      ") differ from those of the live session (p_max " +
                      format_real(expected.p_max) + ", q_norm " + format_real(expected.q_norm) +
                      ", horizon " + format_real(expected.horizon) + ")");
  }
}

}  // namespace lobmimic
