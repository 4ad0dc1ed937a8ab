#include "lobmimic/tape.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace lobmimic {

std::string format_real(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

FeatureVector featurize(const BookFeatures& book, Role side, Price limit, Tick time,
                        const FeatureConstants& c) {
  FeatureVector f{};
  const auto price = [&](double p) { return p / c.p_max; };
  const auto qty = [&](double q) { return q / c.q_norm; };
  f[kSide] = side == Role::Buyer ? 1.0 : -1.0;
  f[kLimit] = price(static_cast<double>(limit));
  if (book.best_bid) {
    f[kHasBid] = 1.0;
    f[kBestBid] = price(static_cast<double>(book.best_bid->price));
    f[kBidQty] = qty(book.best_bid->qty);
  }
  if (book.best_ask) {
    f[kHasAsk] = 1.0;
    f[kBestAsk] = price(static_cast<double>(book.best_ask->price));
    f[kAskQty] = qty(book.best_ask->qty);
  }
  if (book.midprice) f[kMidprice] = price(book.midprice->value());
  if (book.spread) f[kSpread] = price(static_cast<double>(*book.spread));
  f[kBidDepth] = qty(book.bid_depth);
  f[kAskDepth] = qty(book.ask_depth);
  if (book.last_trade) f[kLastTrade] = price(static_cast<double>(*book.last_trade));
  const double phase = std::fmod(static_cast<double>(time), c.horizon);
  f[kSessionPhase] = phase / c.horizon;
  return f;
}

Dataset split_dataset(std::vector<TapeRecord> tape, double train_fraction,
                      const FeatureConstants& constants) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw DatasetError("train fraction must lie in (0, 1)");
  }
  if (tape.empty()) throw DatasetError("empty tape");
  const auto n = tape.size();
  const auto split =
      static_cast<std::size_t>(std::floor(static_cast<double>(n) * train_fraction));
  if (split == 0 || split >= n) {
    throw DatasetError("tape of " + std::to_string(n) +
                       " records is too small for nonempty train and test partitions");
  }
  return Dataset{std::move(tape), split, constants};
}

namespace {

template <typename T>
std::string opt(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string();
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::int64_t parse_int(const std::string& s, std::size_t line, const char* column) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw FormatError("line " + std::to_string(line) + ": bad integer in column " + column +
                      ": '" + s + "'");
  }
  return v;
}

std::optional<std::int64_t> parse_opt(const std::string& s, std::size_t line, const char* column) {
  if (s.empty()) return std::nullopt;
  return parse_int(s, line, column);
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DependencyError("cannot read " + path.string());
  return in;
}

}  // namespace

void write_tape_csv(std::ostream& out, std::span<const TapeRecord> records) {
  out << kTapeHeader << '\n';
  for (const auto& r : records) {
    const auto& b = r.book;
    out << r.time << ',' << to_string(r.side) << ',' << r.limit << ','
        << (b.best_bid ? std::to_string(b.best_bid->price) : "") << ','
        << (b.best_bid ? std::to_string(b.best_bid->qty) : "") << ','
        << (b.best_ask ? std::to_string(b.best_ask->price) : "") << ','
        << (b.best_ask ? std::to_string(b.best_ask->qty) : "") << ','
        << (b.midprice ? b.midprice->to_string() : "") << ',' << opt(b.spread) << ','
        << b.bid_depth << ',' << b.ask_depth << ',' << opt(b.last_trade) << ',' << r.quote
        << '\n';
  }
}

void write_tape_csv(const std::filesystem::path& path, std::span<const TapeRecord> records) {
  auto out = open_out(path);
  write_tape_csv(out, records);
}

std::vector<TapeRecord> read_tape_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DatasetError("empty tape file");
  if (line != kTapeHeader) {
    throw FormatError("line 1: tape header mismatch: expected '" + std::string(kTapeHeader) +
                      "'");
  }
  std::vector<TapeRecord> records;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 13) {
      throw FormatError("line " + std::to_string(lineno) + ": expected 13 fields, got " +
                        std::to_string(f.size()));
    }
    TapeRecord r;
    r.time = parse_int(f[0], lineno, "time");
    if (f[1] == "buy") {
      r.side = Role::Buyer;
    } else if (f[1] == "sell") {
      r.side = Role::Seller;
    } else {
      throw FormatError("line " + std::to_string(lineno) + ": bad side '" + f[1] + "'");
    }
    r.limit = parse_int(f[2], lineno, "limit");
    const auto bid = parse_opt(f[3], lineno, "best_bid");
    const auto bid_qty = parse_opt(f[4], lineno, "bid_qty");
    const auto ask = parse_opt(f[5], lineno, "best_ask");
    const auto ask_qty = parse_opt(f[6], lineno, "ask_qty");
    if (bid.has_value() != bid_qty.has_value() || ask.has_value() != ask_qty.has_value()) {
      throw FormatError("line " + std::to_string(lineno) + ": price and quantity presence differ");
    }
    if (bid) r.book.best_bid = PriceLevel{*bid, static_cast<int>(*bid_qty)};
    if (ask) r.book.best_ask = PriceLevel{*ask, static_cast<int>(*ask_qty)};
    if (!f[7].empty()) {
      try {
        r.book.midprice = HalfTicks::parse(f[7]);
      } catch (const FormatError& e) {
        throw FormatError("line " + std::to_string(lineno) + ": " + e.what());
      }
    }
    r.book.spread = parse_opt(f[8], lineno, "spread");
    r.book.bid_depth = static_cast<int>(parse_int(f[9], lineno, "bid_depth"));
    r.book.ask_depth = static_cast<int>(parse_int(f[10], lineno, "ask_depth"));
    r.book.last_trade = parse_opt(f[11], lineno, "last_trade");
    r.quote = parse_int(f[12], lineno, "quote");
    if (!records.empty() && r.time <= records.back().time) {
      throw FormatError("line " + std::to_string(lineno) + ": records out of time order");
    }
    records.push_back(r);
  }
  return records;
}

std::vector<TapeRecord> read_tape_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_tape_csv(in);
}

void write_dataset(const Dataset& dataset, const std::filesystem::path& csv_path) {
  write_tape_csv(csv_path, dataset.records);
  auto meta = open_out(csv_path.string() + ".meta");
  meta << "split_index " << dataset.split_index << '\n'
       << "p_max " << format_real(dataset.constants.p_max) << '\n'
       << "q_norm " << format_real(dataset.constants.q_norm) << '\n'
       << "horizon " << format_real(dataset.constants.horizon) << '\n';
}

Dataset read_dataset(const std::filesystem::path& csv_path) {
  Dataset d;
  d.records = read_tape_csv(csv_path);
  if (d.records.empty()) throw DatasetError("dataset has no records");
  auto in = open_in(csv_path.string() + ".meta");
  std::string key;
  bool seen[4] = {false, false, false, false};
  while (in >> key) {
    if (key == "split_index") {
      in >> d.split_index;
      seen[0] = true;
    } else if (key == "p_max") {
      in >> d.constants.p_max;
      seen[1] = true;
    } else if (key == "q_norm") {
      in >> d.constants.q_norm;
      seen[2] = true;
    } else if (key == "horizon") {
      in >> d.constants.horizon;
      seen[3] = true;
    } else {
      throw FormatError("unknown dataset metadata key '" + key + "'");
    }
    if (!in) throw FormatError("bad value for dataset metadata key '" + key + "'");
  }
  for (bool s : seen) {
    if (!s) throw FormatError("dataset metadata incomplete");
  }
  if (d.split_index == 0 || d.split_index >= d.records.size()) {
    throw DatasetError("dataset split index out of range");
  }
  return d;
}

}  // namespace lobmimic
