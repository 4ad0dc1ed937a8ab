#include "lobmimic/session.hpp"

#include <numeric>

namespace lobmimic {

namespace {

int total(const std::vector<AgentSpec>& specs) {
  return std::accumulate(specs.begin(), specs.end(), 0,
                         [](int acc, const AgentSpec& s) { return acc + s.count; });
}

}  // namespace

int SessionConfig::buyer_count() const { return total(buyer_specs); }
int SessionConfig::seller_count() const { return total(seller_specs); }

Role SessionConfig::role_of(std::size_t slot) const {
  return slot < static_cast<std::size_t>(buyer_count()) ? Role::Buyer : Role::Seller;
}

void validate(const SessionConfig& config) {
  if (config.price_range.min < 1 || config.price_range.min >= config.price_range.max) {
    throw ConfigError("invalid price range");
  }
  if (config.duration < 0) throw ConfigError("negative session duration");
  for (const auto* specs : {&config.buyer_specs, &config.seller_specs}) {
    for (const auto& spec : *specs) {
      if (spec.count < 0) throw ConfigError("negative agent count for kind " + spec.kind);
    }
  }
  if (config.buyer_count() < 1 || config.seller_count() < 1) {
    throw ConfigError("a session needs at least one buyer and one seller");
  }
  validate_schedule(config.demand_schedule, config.duration);
  validate_schedule(config.supply_schedule, config.duration);
}

BookFeatures book_features(const LobSnapshot& snapshot) {
  BookFeatures f;
  if (!snapshot.bids.empty()) f.best_bid = snapshot.bids.front();
  if (!snapshot.asks.empty()) f.best_ask = snapshot.asks.front();
  f.midprice = snapshot.midprice;
  f.spread = snapshot.spread;
  f.bid_depth = snapshot.bid_depth;
  f.ask_depth = snapshot.ask_depth;
  f.last_trade = snapshot.last_trade_price;
  return f;
}

std::vector<Price> SessionResult::trade_prices() const {
  std::vector<Price> prices;
  prices.reserve(trades.size());
  for (const auto& t : trades) prices.push_back(t.trade.price);
  return prices;
}

SessionResult run_session(const SessionConfig& config, Roster& roster) {
  validate(config);
  if (roster.empty()) throw ConfigError("empty roster");
  if (roster.size() != static_cast<std::size_t>(config.trader_count())) {
    throw ConfigError("roster size does not match configured trader counts");
  }
  for (std::size_t i = 0; i < roster.size(); ++i) {
    if (!roster[i] || roster[i]->role() != config.role_of(i)) {
      throw ConfigError("roster slot " + std::to_string(i) + " has the wrong role");
    }
  }

  const PriceRange range = config.price_range;
  Book book(range.min, range.max);
  Rng schedule_rng(config.rng_seed, static_cast<std::uint64_t>(Stream::Schedule));
  Rng polling_rng(config.rng_seed, static_cast<std::uint64_t>(Stream::Polling));
  std::vector<Rng> agent_rngs;
  agent_rngs.reserve(roster.size());
  for (std::size_t i = 0; i < roster.size(); ++i) {
    agent_rngs.emplace_back(config.rng_seed, static_cast<std::uint64_t>(Stream::AgentBase) + i);
  }

  SessionResult result;
  result.profit_by_trader.assign(roster.size(), 0);
  result.tapes.resize(roster.size());

  auto issue = [&](TraderId id, Tick t) {
    Trader& trader = *roster[id];
    const Schedule& schedule =
        trader.role() == Role::Buyer ? config.demand_schedule : config.supply_schedule;
    const Assignment a = replenish(trader.role(), schedule, t, schedule_rng, range);
    trader.assign(a);
    result.events.push_back({t, EventKind::Assign, id, a.limit_price, a.limit_price});
  };

  for (std::size_t i = 0; i < roster.size(); ++i) roster[i]->start(agent_rngs[i]);
  if (config.duration > 0) {
    for (std::size_t i = 0; i < roster.size(); ++i) issue(static_cast<TraderId>(i), 0);
  }

  std::vector<TraderId> active;
  active.reserve(roster.size());
  for (Tick t = 0; t < config.duration; ++t) {
    active.clear();
    for (std::size_t i = 0; i < roster.size(); ++i) {
      if (roster[i]->active()) active.push_back(static_cast<TraderId>(i));
    }
    if (active.empty()) continue;
    const TraderId id = active[static_cast<std::size_t>(
        uniform_int(polling_rng, 0, static_cast<std::int64_t>(active.size()) - 1))];
    Trader& trader = *roster[id];
    const Assignment assignment = *trader.assignment();

    const LobSnapshot before = book.summary();
    const auto price = trader.quote(before, t, range, agent_rngs[id]);
    if (!price) {
      ++result.diagnostics.declined;
      continue;
    }
    const bool loss_making = trader.role() == Role::Buyer ? *price > assignment.limit_price
                                                          : *price < assignment.limit_price;
    if (loss_making || !range.contains(*price)) {
      ++result.diagnostics.rejected_quotes;
      continue;
    }

    const Side side = side_of(trader.role());
    const ProcessResult processed = book.process_order(Order{id, side, *price, 1, t});
    if (!processed.accepted) {
      ++result.diagnostics.exchange_rejects;
      continue;
    }
    result.tapes[id].push_back(
        TapeRecord{t, book_features(before), assignment.side, assignment.limit_price, *price});
    result.events.push_back(
        {t, EventKind::Quote, id, *price, processed.trade.has_value() ? 1 : 0});

    MarketEvent event{t, id, side, *price, false};
    if (processed.trade) {
      const Trade& trade = *processed.trade;
      const Price buyer_limit = roster[trade.buyer]->assignment()->limit_price;
      const Price seller_limit = roster[trade.seller]->assignment()->limit_price;
      result.profit_by_trader[trade.buyer] += buyer_limit - trade.price;
      result.profit_by_trader[trade.seller] += trade.price - seller_limit;
      result.trades.push_back({trade, buyer_limit, seller_limit});
      result.events.push_back({t, EventKind::Trade, trade.buyer, trade.price, trade.seller});
      event.price = trade.price;
      event.accepted = true;
    }

    for (std::size_t i = 0; i < roster.size(); ++i) {
      roster[i]->observe(event, processed.snapshot, agent_rngs[i]);
    }

    if (processed.trade) {
      for (TraderId party : {processed.trade->buyer, processed.trade->seller}) {
        roster[party]->complete();
        issue(party, t);
      }
    }
  }
  return result;
}

}  // namespace lobmimic
