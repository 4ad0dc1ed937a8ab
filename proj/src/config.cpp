#include "lobmimic/config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

namespace lobmimic {

std::vector<int> RunConfig::layer_sizes() const {
  std::vector<int> sizes{static_cast<int>(kFeatureCount)};
  sizes.insert(sizes.end(), hidden_layers.begin(), hidden_layers.end());
  sizes.push_back(1);
  return sizes;
}

namespace {

Schedule band(Tick duration, double lo, double hi, double slope) {
  return {ScheduleSegment{0, duration, {lo, slope}, {hi, slope}}};
}

}  // namespace

SessionConfig default_market() {
  SessionConfig m;
  m.duration = 6000;
  m.price_range = {1, 500};
  m.buyer_specs = {{"ZIP", 5}};
  m.seller_specs = {{"ZIP", 5}};
  m.demand_schedule = band(m.duration, 150.0, 200.0, 0.02);
  m.supply_schedule = band(m.duration, 100.0, 150.0, 0.02);
  return m;
}

namespace {

std::string where(const YAML::Node& node) {
  const auto mark = node.Mark();
  return mark.line >= 0 ? " (line " + std::to_string(mark.line + 1) + ")" : "";
}

[[noreturn]] void fail(const std::string& key, const YAML::Node& node, const std::string& what) {
  throw ConfigError("config key '" + key + "'" + where(node) + ": " + what);
}

void require_map(const std::string& key, const YAML::Node& node) {
  if (!node.IsMap()) fail(key, node, "expected a mapping");
}

/// Rejects keys outside `allowed`.
void check_keys(const std::string& section, const YAML::Node& node,
                const std::set<std::string>& allowed) {
  require_map(section.empty() ? "<root>" : section, node);
  for (const auto& kv : node) {
    const auto name = kv.first.as<std::string>();
    if (!allowed.contains(name)) {
      const std::string full = section.empty() ? name : section + "." + name;
      throw ConfigError("unknown config key '" + full + "'" + where(kv.first));
    }
  }
}

template <typename T>
T as(const std::string& key, const YAML::Node& node) {
  if (!node.IsScalar()) fail(key, node, "expected a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(key, node, "type mismatch for value '" + node.Scalar() + "'");
  }
}

template <typename T>
void read_opt(const YAML::Node& parent, const std::string& section, const char* name, T& out) {
  if (const YAML::Node n = parent[name]) out = as<T>(section + "." + name, n);
}

AffinePrice parse_affine(const std::string& key, const YAML::Node& node) {
  check_keys(key, node, {"base", "slope"});
  AffinePrice f;
  if (!node["base"]) fail(key + ".base", node, "missing required key");
  f.base = as<double>(key + ".base", node["base"]);
  read_opt(node, key, "slope", f.slope);
  return f;
}

Schedule parse_schedule(const std::string& key, const YAML::Node& node) {
  if (!node.IsSequence() || node.size() == 0) fail(key, node, "expected a nonempty list");
  Schedule schedule;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::string k = key + "[" + std::to_string(i) + "]";
    const YAML::Node s = node[i];
    check_keys(k, s, {"t_start", "t_end", "min", "max"});
    for (const char* req : {"t_start", "t_end", "min", "max"}) {
      if (!s[req]) fail(k + "." + req, s, "missing required key");
    }
    ScheduleSegment seg;
    seg.t_start = as<Tick>(k + ".t_start", s["t_start"]);
    seg.t_end = as<Tick>(k + ".t_end", s["t_end"]);
    seg.min_fn = parse_affine(k + ".min", s["min"]);
    seg.max_fn = parse_affine(k + ".max", s["max"]);
    schedule.push_back(seg);
  }
  return schedule;
}

std::vector<AgentSpec> parse_agents(const std::string& key, const YAML::Node& node) {
  if (!node.IsSequence()) fail(key, node, "expected a list");
  std::vector<AgentSpec> specs;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::string k = key + "[" + std::to_string(i) + "]";
    check_keys(k, node[i], {"kind", "count"});
    if (!node[i]["kind"]) fail(k + ".kind", node[i], "missing required key");
    if (!node[i]["count"]) fail(k + ".count", node[i], "missing required key");
    specs.push_back({as<std::string>(k + ".kind", node[i]["kind"]),
                     as<int>(k + ".count", node[i]["count"])});
  }
  return specs;
}

void parse_market(const YAML::Node& node, SessionConfig& m) {
  check_keys("market", node,
             {"duration", "price_range", "buyers", "sellers", "demand", "supply"});
  bool custom_duration = false;
  if (node["duration"]) {
    m.duration = as<Tick>("market.duration", node["duration"]);
    custom_duration = true;
  }
  if (const YAML::Node r = node["price_range"]) {
    if (!r.IsSequence() || r.size() != 2) fail("market.price_range", r, "expected [min, max]");
    m.price_range = {as<Price>("market.price_range", r[0]), as<Price>("market.price_range", r[1])};
  }
  if (node["buyers"]) m.buyer_specs = parse_agents("market.buyers", node["buyers"]);
  if (node["sellers"]) m.seller_specs = parse_agents("market.sellers", node["sellers"]);
  if (node["demand"]) {
    m.demand_schedule = parse_schedule("market.demand", node["demand"]);
  } else if (custom_duration) {
    m.demand_schedule.front().t_end = m.duration;
  }
  if (node["supply"]) {
    m.supply_schedule = parse_schedule("market.supply", node["supply"]);
  } else if (custom_duration) {
    m.supply_schedule.front().t_end = m.duration;
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

RunConfig build(const YAML::Node& root, const std::filesystem::path& base_dir) {
  if (!root || root.IsNull()) throw ConfigError("empty config file");
  check_keys("", root,
             {"seed", "out_dir", "market", "simulate", "train", "evaluate", "compare", "outputs"});
  RunConfig c;
  c.market = default_market();
  if (!root["seed"]) throw ConfigError("config key 'seed' is required (seeds are mandatory)");
  c.seed = as<std::uint64_t>("seed", root["seed"]);
  c.train.seed = c.seed + 1;
  c.eval_seed_base = c.seed + 1000;
  if (root["out_dir"]) c.out_dir = resolve(base_dir, as<std::string>("out_dir", root["out_dir"]));

  if (const YAML::Node m = root["market"]) parse_market(m, c.market);

  if (const YAML::Node s = root["simulate"]) {
    check_keys("simulate", s, {"sessions"});
    read_opt(s, "simulate", "sessions", c.recording_sessions);
  }

  if (const YAML::Node t = root["train"]) {
    check_keys("train", t,
               {"train_fraction", "hidden", "activation", "epochs", "batch_size",
                "learning_rate", "momentum", "seed"});
    read_opt(t, "train", "train_fraction", c.train_fraction);
    if (const YAML::Node h = t["hidden"]) {
      if (!h.IsSequence() || h.size() == 0) fail("train.hidden", h, "expected a nonempty list");
      c.hidden_layers.clear();
      for (const auto& v : h) c.hidden_layers.push_back(as<int>("train.hidden", v));
    }
    if (t["activation"]) {
      c.activation = parse_activation(as<std::string>("train.activation", t["activation"]));
    }
    read_opt(t, "train", "epochs", c.train.epochs);
    read_opt(t, "train", "batch_size", c.train.batch_size);
    read_opt(t, "train", "learning_rate", c.train.learning_rate);
    read_opt(t, "train", "momentum", c.train.momentum);
    read_opt(t, "train", "seed", c.train.seed);
  }

  if (const YAML::Node e = root["evaluate"]) {
    check_keys("evaluate", e, {"sessions", "tracked_slot", "seed_base", "homogeneous_mimic"});
    read_opt(e, "evaluate", "sessions", c.eval_sessions);
    if (e["tracked_slot"]) c.tracked_slot = as<std::size_t>("evaluate.tracked_slot", e["tracked_slot"]);
    read_opt(e, "evaluate", "seed_base", c.eval_seed_base);
    read_opt(e, "evaluate", "homogeneous_mimic", c.homogeneous_mimic);
  }

  if (const YAML::Node k = root["compare"]) {
    check_keys("compare", k, {"sample_a", "sample_b", "chart"});
    if (k["sample_a"]) c.compare_a = resolve(base_dir, as<std::string>("compare.sample_a", k["sample_a"]));
    if (k["sample_b"]) c.compare_b = resolve(base_dir, as<std::string>("compare.sample_b", k["sample_b"]));
    read_opt(k, "compare", "chart", c.chart);
  }

  if (const YAML::Node o = root["outputs"]) {
    check_keys("outputs", o,
               {"tape", "recording", "dataset", "model", "rms_history", "predictions",
                "quote_chart", "zip_profits", "mimic_profits", "clone_profits", "report",
                "report_chart"});
    auto& out = c.outputs;
    read_opt(o, "outputs", "tape", out.tape);
    read_opt(o, "outputs", "recording", out.recording);
    read_opt(o, "outputs", "dataset", out.dataset);
    read_opt(o, "outputs", "model", out.model);
    read_opt(o, "outputs", "rms_history", out.rms_history);
    read_opt(o, "outputs", "predictions", out.predictions);
    read_opt(o, "outputs", "quote_chart", out.quote_chart);
    read_opt(o, "outputs", "zip_profits", out.zip_profits);
    read_opt(o, "outputs", "mimic_profits", out.mimic_profits);
    read_opt(o, "outputs", "clone_profits", out.clone_profits);
    read_opt(o, "outputs", "report", out.report);
    read_opt(o, "outputs", "report_chart", out.report_chart);
  }

  // Cross-field validation.
  try {
    validate(c.market);
  } catch (const ScheduleError& e) {
    throw ConfigError(std::string("config key 'market': ") + e.what());
  }
  if (c.recording_sessions < 1) throw ConfigError("config key 'simulate.sessions' must be >= 1");
  if (!(c.train_fraction > 0.0 && c.train_fraction < 1.0)) {
    throw ConfigError("config key 'train.train_fraction' must lie in (0, 1)");
  }
  for (int n : c.hidden_layers) {
    if (n <= 0) throw ConfigError("config key 'train.hidden' sizes must be positive");
  }
  validate(c.train);
  if (c.eval_sessions < 1) throw ConfigError("config key 'evaluate.sessions' must be >= 1");
  if (c.tracked_slot && *c.tracked_slot >= static_cast<std::size_t>(c.market.trader_count())) {
    throw ConfigError("config key 'evaluate.tracked_slot' outside the roster");
  }
  return c;
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config syntax error: ") + e.what());
  }
  return build(root, base_dir);
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  auto base = path.parent_path();
  if (base.empty()) base = ".";
  return parse_config_text(ss.str(), base);
}

}  // namespace lobmimic
