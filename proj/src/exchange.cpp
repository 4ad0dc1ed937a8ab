#include "lobmimic/exchange.hpp"

#include <algorithm>
#include <charconv>

namespace lobmimic {

std::string HalfTicks::to_string() const {
  const bool negative = twice < 0;
  const std::int64_t mag = negative ? -twice : twice;
  std::string out = negative ? "-" : "";
  out += std::to_string(mag / 2);
  if (mag % 2 != 0) out += ".5";
  return out;
}

HalfTicks HalfTicks::parse(const std::string& text) {
  std::int64_t whole = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const bool negative = !text.empty() && text.front() == '-';
  if (negative) ++first;
  auto [ptr, ec] = std::from_chars(first, last, whole);
  if (ec != std::errc{} || ptr == first) throw FormatError("bad half-tick value '" + text + "'");
  std::int64_t twice = whole * 2;
  if (ptr != last) {
    if (std::string_view(ptr, static_cast<std::size_t>(last - ptr)) != ".5") {
      throw FormatError("bad half-tick value '" + text + "'");
    }
    twice += 1;
  }
  return HalfTicks{negative ? -twice : twice};
}

Book::Book(Price min_price, Price max_price) : range_{min_price, max_price} {
  if (min_price < 1 || min_price >= max_price) {
    throw ConfigError("invalid price range [" + std::to_string(min_price) + ", " +
                      std::to_string(max_price) + "]");
  }
}

bool Book::withdraw(TraderId trader) {
  auto it = index_.find(trader);
  if (it == index_.end()) return false;
  auto erase_from = [&](auto& side_map) {
    auto level = side_map.find(it->second.price);
    auto& queue = level->second;
    queue.erase(std::find_if(queue.begin(), queue.end(),
                             [&](const Resting& r) { return r.trader == trader; }));
    if (queue.empty()) side_map.erase(level);
  };
  if (it->second.side == Side::Bid) {
    erase_from(bids_);
  } else {
    erase_from(asks_);
  }
  index_.erase(it);
  return true;
}

ProcessResult Book::process_order(const Order& order) {
  ProcessResult result;
  if (order.side != Side::Bid && order.side != Side::Ask) {
    result.reject_reason = "unknown side";
  } else if (order.qty != 1) {
    result.reject_reason = "quantity must be 1";
  } else if (!range_.contains(order.price)) {
    result.reject_reason = "price out of range";
  }
  if (!result.reject_reason.empty()) {
    result.snapshot = summary();
    return result;
  }

  result.accepted = true;
  time_ = order.time;
  withdraw(order.trader);

  auto match = [&](auto& opposite, bool crosses) -> bool {
    if (opposite.empty() || !crosses) return false;
    auto level = opposite.begin();
    const Resting maker = level->second.front();
    level->second.pop_front();
    const Price price = level->first;
    if (level->second.empty()) opposite.erase(level);
    index_.erase(maker.trader);
    Trade trade{price, order.time, 0, 0};
    if (order.side == Side::Bid) {
      trade.buyer = order.trader;
      trade.seller = maker.trader;
    } else {
      trade.buyer = maker.trader;
      trade.seller = order.trader;
    }
    last_trade_price_ = price;
    result.trade = trade;
    return true;
  };

  bool traded = false;
  if (order.side == Side::Bid) {
    traded = match(asks_, !asks_.empty() && order.price >= asks_.begin()->first);
    if (!traded) bids_[order.price].push_back({order.trader, next_seq_++});
  } else {
    traded = match(bids_, !bids_.empty() && order.price <= bids_.begin()->first);
    if (!traded) asks_[order.price].push_back({order.trader, next_seq_++});
  }
  if (!traded) index_[order.trader] = Location{order.side, order.price};

  result.snapshot = summary();
  return result;
}

LobSnapshot Book::summary() const {
  LobSnapshot snap;
  snap.time = time_;
  snap.last_trade_price = last_trade_price_;
  for (const auto& [price, queue] : bids_) {
    snap.bids.push_back({price, static_cast<int>(queue.size())});
    snap.bid_depth += static_cast<int>(queue.size());
  }
  for (const auto& [price, queue] : asks_) {
    snap.asks.push_back({price, static_cast<int>(queue.size())});
    snap.ask_depth += static_cast<int>(queue.size());
  }
  if (!snap.bids.empty()) snap.best_bid = snap.bids.front().price;
  if (!snap.asks.empty()) snap.best_ask = snap.asks.front().price;
  if (snap.best_bid && snap.best_ask) {
    snap.spread = *snap.best_ask - *snap.best_bid;
    snap.midprice = HalfTicks{*snap.best_ask + *snap.best_bid};
  }
  return snap;
}

}  // namespace lobmimic
