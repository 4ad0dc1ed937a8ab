#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lobmimic/types.hpp"

namespace lobmimic {

struct Order {
  TraderId trader = 0;
  Side side = Side::Bid;
  Price price = 0;
  int qty = 1;
  Tick time = 0;
};

struct PriceLevel {
  Price price = 0;
  int qty = 0;

  friend bool operator==(const PriceLevel&, const PriceLevel&) = default;
};

/// Exact half-tick value. Only the midprice needs one.
struct HalfTicks {
  std::int64_t twice = 0;

  [[nodiscard]] double value() const noexcept { return static_cast<double>(twice) / 2.0; }
  /// Exact decimal rendering: "153" or "153.5".
  [[nodiscard]] std::string to_string() const;
  static HalfTicks parse(const std::string& text);

  friend bool operator==(const HalfTicks&, const HalfTicks&) = default;
};

struct LobSnapshot {
  std::vector<PriceLevel> bids;  // descending by price
  std::vector<PriceLevel> asks;  // ascending by price
  std::optional<Price> best_bid;
  std::optional<Price> best_ask;
  std::optional<HalfTicks> midprice;
  std::optional<Price> spread;
  int bid_depth = 0;
  int ask_depth = 0;
  std::optional<Price> last_trade_price;
  Tick time = 0;

  friend bool operator==(const LobSnapshot&, const LobSnapshot&) = default;
};

struct Trade {
  Price price = 0;
  Tick time = 0;
  TraderId buyer = 0;
  TraderId seller = 0;

  friend bool operator==(const Trade&, const Trade&) = default;
};

struct ProcessResult {
  bool accepted = false;
  std::string reject_reason;
  LobSnapshot snapshot;
  std::optional<Trade> trade;
};

/// Single-instrument limit order book with unit quantities and one resting
/// order per trader. A new order from a trader replaces that trader's
/// previous one; a crossing order executes against the best opposite level at
/// the resting price, earliest arrival first.
class Book {
public:
  Book(Price min_price, Price max_price);

  ProcessResult process_order(const Order& order);
  [[nodiscard]] LobSnapshot summary() const;

  [[nodiscard]] bool has_order(TraderId trader) const { return index_.contains(trader); }
  [[nodiscard]] std::size_t order_count() const noexcept { return index_.size(); }
  [[nodiscard]] PriceRange range() const noexcept { return range_; }

  /// Removes the trader's resting order, if any.
  bool withdraw(TraderId trader);

private:
  struct Resting {
    TraderId trader;
    std::uint64_t seq;
  };
  struct Location {
    Side side;
    Price price;
  };
  using Level = std::deque<Resting>;

  PriceRange range_;
  std::map<Price, Level, std::greater<>> bids_;
  std::map<Price, Level> asks_;
  std::unordered_map<TraderId, Location> index_;
  std::optional<Price> last_trade_price_;
  Tick time_ = 0;
  std::uint64_t next_seq_ = 0;
};

}  // namespace lobmimic
