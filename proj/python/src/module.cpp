#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <vector>

#include "lobmimic/pipeline.hpp"

namespace py = pybind11;
using namespace lobmimic;

namespace {

Side parse_side(const std::string& s) {
  if (s == "bid" || s == "buy") return Side::Bid;
  if (s == "ask" || s == "sell") return Side::Ask;
  throw py::value_error("side must be 'bid' or 'ask', got '" + s + "'");
}

py::dict record_dict(const TapeRecord& r) {
  py::dict d;
  d["time"] = r.time;
  d["side"] = to_string(r.side);
  d["limit"] = r.limit;
  d["best_bid"] = r.book.best_bid ? py::object(py::int_(r.book.best_bid->price)) : py::none();
  d["best_ask"] = r.book.best_ask ? py::object(py::int_(r.book.best_ask->price)) : py::none();
  d["midprice"] = r.book.midprice ? py::object(py::float_(r.book.midprice->value())) : py::none();
  d["last_trade"] = r.book.last_trade ? py::object(py::int_(*r.book.last_trade)) : py::none();
  d["quote"] = r.quote;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Core bindings for lobmimic";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<DependencyError>(m, "DependencyError", base.ptr());
  py::register_exception<DatasetError>(m, "DatasetError", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", base.ptr());

  py::enum_<Side>(m, "Side").value("BID", Side::Bid).value("ASK", Side::Ask);

  py::class_<Trade>(m, "Trade")
      .def_readonly("price", &Trade::price)
      .def_readonly("time", &Trade::time)
      .def_readonly("buyer", &Trade::buyer)
      .def_readonly("seller", &Trade::seller)
      .def("__repr__", [](const Trade& t) {
        return "Trade(price=" + std::to_string(t.price) + ", buyer=" + std::to_string(t.buyer) +
               ", seller=" + std::to_string(t.seller) + ")";
      });

  py::class_<LobSnapshot>(m, "LobSnapshot")
      .def_property_readonly("bids", [](const LobSnapshot& s) {
        std::vector<std::pair<Price, int>> out;
        for (const auto& l : s.bids) out.emplace_back(l.price, l.qty);
        return out;
      })
      .def_property_readonly("asks", [](const LobSnapshot& s) {
        std::vector<std::pair<Price, int>> out;
        for (const auto& l : s.asks) out.emplace_back(l.price, l.qty);
        return out;
      })
      .def_readonly("best_bid", &LobSnapshot::best_bid)
      .def_readonly("best_ask", &LobSnapshot::best_ask)
      .def_property_readonly("midprice",
                             [](const LobSnapshot& s) -> std::optional<double> {
                               if (!s.midprice) return std::nullopt;
                               return s.midprice->value();
                             })
      .def_readonly("spread", &LobSnapshot::spread)
      .def_readonly("bid_depth", &LobSnapshot::bid_depth)
      .def_readonly("ask_depth", &LobSnapshot::ask_depth)
      .def_readonly("last_trade_price", &LobSnapshot::last_trade_price);

  py::class_<ProcessResult>(m, "ProcessResult")
      .def_readonly("accepted", &ProcessResult::accepted)
      .def_readonly("reject_reason", &ProcessResult::reject_reason)
      .def_readonly("snapshot", &ProcessResult::snapshot)
      .def_readonly("trade", &ProcessResult::trade);

  py::class_<Book>(m, "Book")
      .def(py::init<Price, Price>(), py::arg("min_price") = 1, py::arg("max_price") = 500)
      .def(
          "submit",
          [](Book& b, TraderId trader, const std::string& side, Price price, Tick time) {
            return b.process_order(Order{trader, parse_side(side), price, 1, time});
          },
          py::arg("trader"), py::arg("side"), py::arg("price"), py::arg("time") = 0,
          "Submit a unit order; replaces the trader's resting order, if any.")
      .def("snapshot", &Book::summary)
      .def("withdraw", &Book::withdraw)
      .def("has_order", &Book::has_order)
      .def("__len__", &Book::order_count);

  py::class_<MannWhitneyResult>(m, "MannWhitneyResult")
      .def_readonly("u_a", &MannWhitneyResult::u_a)
      .def_readonly("u_b", &MannWhitneyResult::u_b)
      .def_readonly("p", &MannWhitneyResult::p)
      .def_readonly("exact", &MannWhitneyResult::exact);

  m.def(
      "mann_whitney",
      [](const std::vector<double>& a, const std::vector<double>& b, const std::string& tail) {
        if (tail != "b_greater" && tail != "a_greater") {
          throw py::value_error("tail must be 'b_greater' or 'a_greater'");
        }
        return mann_whitney_one_tailed(a, b, tail == "b_greater" ? Tail::BGreater : Tail::AGreater);
      },
      py::arg("a"), py::arg("b"), py::arg("tail") = "b_greater",
      "One-tailed Mann-Whitney U test; exact for small samples.");

  py::class_<SummaryStats>(m, "SummaryStats")
      .def_readonly("n", &SummaryStats::n)
      .def_readonly("median", &SummaryStats::median)
      .def_readonly("q1", &SummaryStats::q1)
      .def_readonly("q3", &SummaryStats::q3)
      .def_readonly("mean", &SummaryStats::mean)
      .def_readonly("sd", &SummaryStats::sd)
      .def_readonly("whisker_lo", &SummaryStats::whisker_lo)
      .def_readonly("whisker_hi", &SummaryStats::whisker_hi)
      .def_readonly("degenerate", &SummaryStats::degenerate);

  m.def("summary_stats", [](const std::vector<double>& v) { return summary_stats(v); });
  m.def("smiths_alpha", [](const std::vector<Price>& prices, double p0) {
    return smiths_alpha(prices, p0);
  });
  m.def("pearson", [](const std::vector<double>& x, const std::vector<double>& y) {
    return pearson_correlation(x, y);
  });

  py::class_<MlpModel>(m, "Model")
      .def_readonly("layer_sizes", &MlpModel::layer_sizes)
      .def_property_readonly("activation",
                             [](const MlpModel& mm) { return std::string(to_string(mm.hidden)); })
      .def("forward", [](const MlpModel& mm, const std::vector<double>& x) {
        return mlp_forward(mm, x);
      });
  m.def("load_model", [](const std::filesystem::path& p) { return read_model(p); });

  m.def("read_tape", [](const std::filesystem::path& p) {
    py::list out;
    for (const auto& r : read_tape_csv(p)) out.append(record_dict(r));
    return out;
  });
  m.def("read_profits", &read_profit_csv);

  py::class_<RunConfig>(m, "RunConfig")
      .def_readwrite("seed", &RunConfig::seed)
      .def_readwrite("out_dir", &RunConfig::out_dir)
      .def_readwrite("recording_sessions", &RunConfig::recording_sessions)
      .def_readwrite("eval_sessions", &RunConfig::eval_sessions)
      .def_property(
          "epochs", [](const RunConfig& c) { return c.train.epochs; },
          [](RunConfig& c, int e) { c.train.epochs = e; })
      .def_property(
          "duration", [](const RunConfig& c) { return c.market.duration; },
          [](RunConfig& c, Tick d) {
            // Stretch or shrink the final segments to the new length.
            c.market.duration = d;
            c.market.demand_schedule.back().t_end = d;
            c.market.supply_schedule.back().t_end = d;
          });
  m.def("load_config", [](const std::filesystem::path& p) { return parse_config(p); });
  m.def(
      "parse_config",
      [](const std::string& text, const std::filesystem::path& base) {
        return parse_config_text(text, base);
      },
      py::arg("text"), py::arg("base_dir") = std::filesystem::path("."));

  m.def(
      "simulate",
      [](const RunConfig& c) {
        SimulateSummary s;
        {
          py::gil_scoped_release release;
          s = run_simulate(c);
        }
        py::dict d;
        d["focal_slot"] = s.focal_slot;
        d["cumulative_profit"] = s.cumulative_profit;
        d["tape_records"] = s.tape_records;
        return d;
      },
      py::arg("config"));
  m.def(
      "train",
      [](const RunConfig& c) {
        TrainSummary s;
        {
          py::gil_scoped_release release;
          s = run_train(c);
        }
        py::dict d;
        d["train_rms"] = s.train_rms;
        d["test_rms"] = s.test_rms;
        d["test_correlation"] = s.test_correlation;
        d["train_records"] = s.train_records;
        d["test_records"] = s.test_records;
        return d;
      },
      py::arg("config"));
  m.def(
      "evaluate",
      [](const RunConfig& c, int jobs) {
        EvaluateSummary s;
        {
          py::gil_scoped_release release;
          s = run_evaluate(c, jobs);
        }
        py::dict d;
        d["tracked_slot"] = s.tracked_slot;
        d["zip"] = s.zip.values;
        d["mimic"] = s.mimic.values;
        return d;
      },
      py::arg("config"), py::arg("jobs") = 1);
  m.def(
      "compare",
      [](const RunConfig& c) {
        CompareSummary s;
        {
          py::gil_scoped_release release;
          s = run_compare(c);
        }
        py::dict d;
        d["a"] = s.a;
        d["b"] = s.b;
        d["test"] = s.test;
        return d;
      },
      py::arg("config"));
}
