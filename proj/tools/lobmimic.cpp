// Command-line driver: simulate -> train -> evaluate -> compare.

#include <CLI11.hpp>
#include <iostream>

#include "lobmimic/pipeline.hpp"

using namespace lobmimic;

int main(int argc, char** argv) {
  CLI::App app{"Limit-order-book market lab: record a ZIP trader, train a network to imitate it, "
               "and compare the two live"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  int jobs = 1;
  app.add_option("--config", config_path, "YAML run configuration")->required();
  app.add_option("--seed", seed, "Override the config seed");
  app.add_option("--out", out_dir, "Override the output directory");
  app.add_option("--jobs", jobs, "Parallel sessions during evaluate")->check(CLI::PositiveNumber);
  app.fallthrough();

  auto* simulate = app.add_subcommand("simulate", "Run recording sessions and write the tape");
  auto* train = app.add_subcommand("train", "Train the network on the recorded tape");
  auto* evaluate = app.add_subcommand("evaluate", "Live-trade the model against ZIP traders");
  auto* compare = app.add_subcommand("compare", "Compare two profit samples");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig config = parse_config(config_path);
    if (seed) {
      const std::uint64_t train_offset = config.train.seed - config.seed;
      const std::uint64_t eval_offset = config.eval_seed_base - config.seed;
      config.seed = *seed;
      config.train.seed = *seed + train_offset;
      config.eval_seed_base = *seed + eval_offset;
    }
    if (out_dir) config.out_dir = *out_dir;

    if (simulate->parsed()) {
      const auto s = run_simulate(config);
      std::cout << "focal slot " << s.focal_slot << " (" << to_string(config.market.role_of(s.focal_slot))
                << "), profit " << s.cumulative_profit[s.focal_slot] << ", " << s.tape_records
                << " tape records -> " << config.out(config.outputs.tape).string() << '\n';
    } else if (train->parsed()) {
      const auto t = run_train(config);
      std::cout << "train rms " << t.train_rms << " (" << t.train_records << " records), test rms "
                << t.test_rms << " (" << t.test_records << " records), test correlation "
                << t.test_correlation << " -> " << config.out(config.outputs.model).string()
                << '\n';
    } else if (evaluate->parsed()) {
      const auto e = run_evaluate(config, jobs);
      const auto zip = summary_stats(e.zip.as_reals());
      const auto mimic = summary_stats(e.mimic.as_reals());
      std::cout << "tracked slot " << e.tracked_slot << ": ZIP median " << zip.median
                << ", mimic median " << mimic.median << " over " << e.zip.values.size()
                << " sessions\n";
    } else if (compare->parsed()) {
      const auto c = run_compare(config);
      std::cout << "U_a " << c.test.u_a << ", U_b " << c.test.u_b << ", one-tailed p (B > A) "
                << c.test.p << (c.test.exact ? " exact" : " normal approx.") << " -> "
                << config.out(config.outputs.report).string() << '\n';
    }
  } catch (const DependencyError& e) {
    std::cerr << "lobmimic: dependency error: " << e.what() << '\n';
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "lobmimic: config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "lobmimic: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
