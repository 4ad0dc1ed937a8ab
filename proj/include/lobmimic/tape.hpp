#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "lobmimic/session.hpp"

namespace lobmimic {

/// Scale constants shared by training and live trading.
struct FeatureConstants {
  double p_max = 500.0;   // price normaliser, the top of the price range
  double q_norm = 10.0;   // depth normaliser, the number of traders
  double horizon = 1.0;   // session length in ticks

  friend bool operator==(const FeatureConstants&, const FeatureConstants&) = default;
};

inline constexpr std::size_t kFeatureCount = 14;
using FeatureVector = std::array<double, kFeatureCount>;

/// Input slots, in order.
enum FeatureSlot : std::size_t {
  kSide = 0,
  kLimit,
  kHasBid,
  kBestBid,
  kBidQty,
  kHasAsk,
  kBestAsk,
  kAskQty,
  kMidprice,
  kSpread,
  kBidDepth,
  kAskDepth,
  kLastTrade,
  kSessionPhase,
};

/// Missing book fields are encoded as 0 with their presence flag 0. The time
/// slot is the phase within the session, (time mod horizon) / horizon.
FeatureVector featurize(const BookFeatures& book, Role side, Price limit, Tick time,
                        const FeatureConstants& constants);

inline FeatureVector featurize(const TapeRecord& record, const FeatureConstants& constants) {
  return featurize(record.book, record.side, record.limit, record.time, constants);
}

inline double quote_target(Price quote, const FeatureConstants& constants) {
  return static_cast<double>(quote) / constants.p_max;
}

/// A chronologically split tape. Records [0, split_index) train, the rest test.
struct Dataset {
  std::vector<TapeRecord> records;
  std::size_t split_index = 0;
  FeatureConstants constants;

  [[nodiscard]] std::span<const TapeRecord> train() const {
    return std::span(records).first(split_index);
  }
  [[nodiscard]] std::span<const TapeRecord> test() const {
    return std::span(records).subspan(split_index);
  }

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Split at floor(n * train_fraction). Throws DatasetError unless both parts
/// are nonempty.
Dataset split_dataset(std::vector<TapeRecord> tape, double train_fraction,
                      const FeatureConstants& constants);

inline constexpr const char* kTapeHeader =
    "time,side,limit,best_bid,bid_qty,best_ask,ask_qty,midprice,spread,bid_depth,ask_depth,"
    "last_trade,quote";

void write_tape_csv(std::ostream& out, std::span<const TapeRecord> records);
void write_tape_csv(const std::filesystem::path& path, std::span<const TapeRecord> records);

/// Throws FormatError on a header mismatch, or naming the line for a
/// malformed row; DatasetError for an empty file.
std::vector<TapeRecord> read_tape_csv(std::istream& in);
std::vector<TapeRecord> read_tape_csv(const std::filesystem::path& path);

/// Writes the records to `csv_path` and the split and constants to
/// `csv_path` with ".meta" appended.
void write_dataset(const Dataset& dataset, const std::filesystem::path& csv_path);
Dataset read_dataset(const std::filesystem::path& csv_path);

/// Shortest round-trip decimal rendering, at most 17 significant digits.
std::string format_real(double value);

}  // namespace lobmimic
