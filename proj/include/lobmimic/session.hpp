#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lobmimic/exchange.hpp"
#include "lobmimic/schedule.hpp"
#include "lobmimic/trader.hpp"

namespace lobmimic {

struct AgentSpec {
  std::string kind;  // "ZIP", "TRUTH" or "MIMIC:<model path>"
  int count = 0;

  friend bool operator==(const AgentSpec&, const AgentSpec&) = default;
};

struct SessionConfig {
  Tick duration = 0;
  std::uint64_t rng_seed = 0;
  std::vector<AgentSpec> buyer_specs;
  std::vector<AgentSpec> seller_specs;
  Schedule demand_schedule;
  Schedule supply_schedule;
  PriceRange price_range;

  [[nodiscard]] int buyer_count() const;
  [[nodiscard]] int seller_count() const;
  [[nodiscard]] int trader_count() const { return buyer_count() + seller_count(); }
  /// Role of roster slot `slot`: buyers occupy the first slots.
  [[nodiscard]] Role role_of(std::size_t slot) const;
};

/// Throws ConfigError or ScheduleError.
void validate(const SessionConfig& config);

using Roster = std::vector<std::unique_ptr<Trader>>;

/// Observable book state handed to featurization: top of book, depths and
/// last trade. Everything the tape records about the book.
struct BookFeatures {
  std::optional<PriceLevel> best_bid;
  std::optional<PriceLevel> best_ask;
  std::optional<HalfTicks> midprice;
  std::optional<Price> spread;
  int bid_depth = 0;
  int ask_depth = 0;
  std::optional<Price> last_trade;

  friend bool operator==(const BookFeatures&, const BookFeatures&) = default;
};

BookFeatures book_features(const LobSnapshot& snapshot);

/// One quote by one trader, with the book it saw before quoting.
struct TapeRecord {
  Tick time = 0;
  BookFeatures book;
  Role side = Role::Buyer;
  Price limit = 0;
  Price quote = 0;

  friend bool operator==(const TapeRecord&, const TapeRecord&) = default;
};

struct ExecutedTrade {
  Trade trade;
  Price buyer_limit = 0;
  Price seller_limit = 0;

  friend bool operator==(const ExecutedTrade&, const ExecutedTrade&) = default;
};

enum class EventKind : std::uint8_t { Assign, Quote, Trade };

struct SessionEvent {
  Tick time = 0;
  EventKind kind = EventKind::Quote;
  TraderId trader = 0;
  Price price = 0;
  /// Assign: the limit price. Quote: 1 if the quote traded. Trade: counterparty.
  std::int64_t detail = 0;

  friend bool operator==(const SessionEvent&, const SessionEvent&) = default;
};

struct SessionDiagnostics {
  std::int64_t declined = 0;
  std::int64_t rejected_quotes = 0;  // loss-making or out-of-range
  std::int64_t exchange_rejects = 0;

  friend bool operator==(const SessionDiagnostics&, const SessionDiagnostics&) = default;
};

struct SessionResult {
  std::vector<ExecutedTrade> trades;
  std::vector<std::int64_t> profit_by_trader;
  std::vector<SessionEvent> events;
  /// Quote tape per trader, indexed by roster slot.
  std::vector<std::vector<TapeRecord>> tapes;
  SessionDiagnostics diagnostics;

  [[nodiscard]] std::vector<Price> trade_prices() const;
};

/// Seeds for the session's independent random streams.
enum class Stream : std::uint64_t { Schedule = 1, Polling = 2, AgentBase = 100 };

/// Runs one session. The roster must match the config's buyer and seller
/// counts, buyers first. Traders are polled one per tick in uniformly random
/// order; each accepted quote is broadcast with the post-event book before the
/// next tick. On execution both parties are credited and replenished.
SessionResult run_session(const SessionConfig& config, Roster& roster);

}  // namespace lobmimic
