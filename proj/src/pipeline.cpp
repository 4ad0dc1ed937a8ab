#include "lobmimic/pipeline.hpp"

#include <algorithm>
#include <fstream>

#include "lobmimic/svg.hpp"

namespace lobmimic {

namespace {

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

void require_file(const std::filesystem::path& path, const std::string& producer) {
  if (!std::filesystem::is_regular_file(path)) {
    throw DependencyError("missing " + path.string() + "; run `" + producer + "` first");
  }
}

}  // namespace

SimulateSummary run_simulate(const RunConfig& config) {
  ensure_dir(config.out_dir);
  const auto kinds = slot_kinds(config.market);
  SimulateSummary summary;
  summary.cumulative_profit.assign(kinds.size(), 0);
  std::vector<std::vector<std::vector<TapeRecord>>> tapes;

  ModelCache cache;
  for (int i = 0; i < config.recording_sessions; ++i) {
    SessionConfig session = config.market;
    session.rng_seed = config.seed + static_cast<std::uint64_t>(i);
    Roster roster = build_roster(session, kinds, cache);
    SessionResult result = run_session(session, roster);
    for (std::size_t s = 0; s < kinds.size(); ++s) {
      summary.cumulative_profit[s] += result.profit_by_trader[s];
      for (auto& r : result.tapes[s]) r.time += static_cast<Tick>(i) * session.duration;
    }
    tapes.push_back(std::move(result.tapes));
  }

  std::optional<std::size_t> focal;
  for (std::size_t s = 0; s < kinds.size(); ++s) {
    if (kinds[s] != "ZIP") continue;
    if (!focal || summary.cumulative_profit[s] > summary.cumulative_profit[*focal]) focal = s;
  }
  if (!focal) throw ConfigError("simulate needs at least one ZIP trader to record");
  summary.focal_slot = *focal;

  std::vector<TapeRecord> tape;
  for (auto& session_tapes : tapes) {
    auto& t = session_tapes[*focal];
    tape.insert(tape.end(), t.begin(), t.end());
  }
  summary.tape_records = tape.size();
  write_tape_csv(config.out(config.outputs.tape), tape);

  auto rec = open_out(config.out(config.outputs.recording));
  rec << "slot,role,kind,profit,focal\n";
  for (std::size_t s = 0; s < kinds.size(); ++s) {
    rec << s << ',' << to_string(config.market.role_of(s)) << ',' << kinds[s] << ','
        << summary.cumulative_profit[s] << ',' << (s == *focal ? 1 : 0) << '\n';
  }
  return summary;
}

std::size_t read_focal_slot(const std::filesystem::path& recording_csv) {
  require_file(recording_csv, "simulate");
  std::ifstream in(recording_csv, std::ios::binary);
  std::string line;
  std::getline(in, line);
  if (line != "slot,role,kind,profit,focal") {
    throw FormatError(recording_csv.string() + ": line 1: unexpected header");
  }
  while (std::getline(in, line)) {
    if (line.size() >= 2 && line.ends_with(",1")) return std::stoul(line.substr(0, line.find(',')));
  }
  throw FormatError(recording_csv.string() + ": no focal slot recorded");
}

TrainSummary run_train(const RunConfig& config) {
  const auto tape_path = config.out(config.outputs.tape);
  require_file(tape_path, "simulate");
  ensure_dir(config.out_dir);

  const FeatureConstants constants = session_constants(config.market);
  Dataset dataset = split_dataset(read_tape_csv(tape_path), config.train_fraction, constants);
  write_dataset(dataset, config.out(config.outputs.dataset));

  const Samples train = make_samples(dataset.train(), constants);
  const Samples test = make_samples(dataset.test(), constants);
  Rng init_rng(config.train.seed, 1);
  MlpModel model = mlp_init(config.layer_sizes(), config.activation, init_rng);
  model.constants = constants;
  TrainResult trained = mlp_train(std::move(model), train, test, config.train);
  write_model(config.out(config.outputs.model), trained.model);

  {
    auto out = open_out(config.out(config.outputs.rms_history));
    out << "epoch,train_rms,test_rms\n";
    for (std::size_t e = 0; e < trained.train_rms.size(); ++e) {
      out << e + 1 << ',' << format_real(trained.train_rms[e]) << ','
          << format_real(trained.test_rms[e]) << '\n';
    }
  }

  TrainSummary summary;
  summary.train_rms = trained.train_rms.back();
  summary.test_rms = trained.test_rms.back();
  summary.train_records = dataset.split_index;
  summary.test_records = dataset.records.size() - dataset.split_index;

  const Eigen::VectorXd train_pred = mlp_forward_batch(trained.model, train.inputs);
  const Eigen::VectorXd test_pred = mlp_forward_batch(trained.model, test.inputs);
  std::vector<double> teacher_test(test.targets.data(), test.targets.data() + test.targets.size());
  std::vector<double> student_test(test_pred.data(), test_pred.data() + test_pred.size());
  summary.test_correlation = pearson_correlation(teacher_test, student_test);

  auto out = open_out(config.out(config.outputs.predictions));
  out << "index,partition,teacher,student\n";
  LineSeries teacher{"teacher (ZIP)", "#1f77b4", {}, {}};
  LineSeries fit{"student, train", "#2ca02c", {}, {}};
  LineSeries held{"student, test", "#d62728", {}, {}};
  for (Eigen::Index i = 0; i < train.size(); ++i) {
    const double t = train.targets(i) * constants.p_max;
    const double s = train_pred(i) * constants.p_max;
    out << i << ",train," << format_real(t) << ',' << format_real(s) << '\n';
    teacher.x.push_back(static_cast<double>(i));
    teacher.y.push_back(t);
    fit.x.push_back(static_cast<double>(i));
    fit.y.push_back(s);
  }
  for (Eigen::Index i = 0; i < test.size(); ++i) {
    const auto k = static_cast<double>(train.size() + i);
    const double t = test.targets(i) * constants.p_max;
    const double s = test_pred(i) * constants.p_max;
    out << train.size() + i << ",test," << format_real(t) << ',' << format_real(s) << '\n';
    teacher.x.push_back(k);
    teacher.y.push_back(t);
    held.x.push_back(k);
    held.y.push_back(s);
  }
  if (config.chart) {
    auto svg = open_out(config.out(config.outputs.quote_chart));
    svg << line_chart_svg({teacher, fit, held}, "quote stream: teacher vs student");
  }
  return summary;
}

EvaluateSummary run_evaluate(const RunConfig& config, int jobs) {
  const auto model_path = config.out(config.outputs.model);
  require_file(model_path, "train");
  ensure_dir(config.out_dir);
  auto model = std::make_shared<const MlpModel>(read_model(model_path));

  EvaluateSummary summary;
  summary.tracked_slot = config.tracked_slot
                             ? *config.tracked_slot
                             : read_focal_slot(config.out(config.outputs.recording));

  ExperimentSpec spec;
  spec.n_sessions = config.eval_sessions;
  spec.base = config.market;
  spec.tracked_slot = summary.tracked_slot;
  spec.seed_base = config.eval_seed_base;
  spec.model = model;
  spec.jobs = jobs;

  spec.mode = ExperimentMode::HomogeneousZip;
  summary.zip = run_experiment(spec);
  write_profit_csv(config.out(config.outputs.zip_profits), summary.zip);

  spec.mode = ExperimentMode::Heterogeneous;
  summary.mimic = run_experiment(spec);
  write_profit_csv(config.out(config.outputs.mimic_profits), summary.mimic);

  if (config.homogeneous_mimic) {
    spec.mode = ExperimentMode::HomogeneousMimic;
    write_profit_csv(config.out(config.outputs.clone_profits), run_experiment(spec));
  }
  return summary;
}

CompareSummary run_compare(const RunConfig& config) {
  const auto path_a = config.compare_a.value_or(config.out(config.outputs.zip_profits));
  const auto path_b = config.compare_b.value_or(config.out(config.outputs.mimic_profits));
  require_file(path_a, "evaluate");
  require_file(path_b, "evaluate");
  ensure_dir(config.out_dir);
  const auto raw_a = read_profit_csv(path_a);
  const auto raw_b = read_profit_csv(path_b);
  const std::vector<double> a(raw_a.begin(), raw_a.end());
  const std::vector<double> b(raw_b.begin(), raw_b.end());

  CompareSummary summary;
  summary.a = summary_stats(a);
  summary.b = summary_stats(b);
  summary.test = mann_whitney_one_tailed(a, b, Tail::BGreater);

  auto out = open_out(config.out(config.outputs.report));
  out << "statistic,value\n";
  auto stats_rows = [&](const char* tag, const SummaryStats& s) {
    out << "n_" << tag << ',' << s.n << '\n'
        << "median_" << tag << ',' << format_real(s.median) << '\n'
        << "q1_" << tag << ',' << format_real(s.q1) << '\n'
        << "q3_" << tag << ',' << format_real(s.q3) << '\n'
        << "mean_" << tag << ',' << format_real(s.mean) << '\n'
        << "sd_" << tag << ',' << format_real(s.sd) << '\n'
        << "whisker_lo_" << tag << ',' << format_real(s.whisker_lo) << '\n'
        << "whisker_hi_" << tag << ',' << format_real(s.whisker_hi) << '\n'
        << "degenerate_" << tag << ',' << (s.degenerate ? 1 : 0) << '\n';
  };
  stats_rows("a", summary.a);
  stats_rows("b", summary.b);
  out << "u_a," << format_real(summary.test.u_a) << '\n'
      << "u_b," << format_real(summary.test.u_b) << '\n'
      << "p_b_greater," << format_real(summary.test.p) << '\n'
      << "p_exact," << (summary.test.exact ? 1 : 0) << '\n';

  if (config.chart) {
    auto svg = open_out(config.out(config.outputs.report_chart));
    svg << box_plot_svg({{"A: " + path_a.filename().string(), summary.a},
                         {"B: " + path_b.filename().string(), summary.b}},
                        "end-of-session profit");
  }
  return summary;
}

}  // namespace lobmimic
