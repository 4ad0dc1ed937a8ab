#pragma once

#include <memory>
#include <optional>
#include <string>

#include "lobmimic/exchange.hpp"
#include "lobmimic/rng.hpp"
#include "lobmimic/schedule.hpp"

namespace lobmimic {

/// What every trader hears after an accepted quote. When `accepted` is true
/// the quote traded and `price` is the transaction price; otherwise it is the
/// quote price of an order that now rests on the book.
struct MarketEvent {
  Tick time = 0;
  TraderId trader = 0;
  Side side = Side::Bid;
  Price price = 0;
  bool accepted = false;
};

/// A sales trader with a fixed role working at most one client order.
class Trader {
public:
  explicit Trader(Role role) : role_(role) {}
  virtual ~Trader() = default;

  [[nodiscard]] virtual std::string kind() const = 0;

  /// Called once at session start with the trader's private random stream.
  virtual void start(UniformSource& /*rng*/) {}

  /// Quote for the current assignment given the book as it stands, or
  /// nothing to decline this turn.
  virtual std::optional<Price> quote(const LobSnapshot& book, Tick now, PriceRange range,
                                     UniformSource& rng) = 0;

  /// Learning hook, called for every broadcast event.
  virtual void observe(const MarketEvent& /*event*/, const LobSnapshot& /*book*/,
                       UniformSource& /*rng*/) {}

  virtual void assign(const Assignment& assignment) { assignment_ = assignment; }
  virtual void complete() { assignment_.reset(); }

  [[nodiscard]] Role role() const noexcept { return role_; }
  [[nodiscard]] const std::optional<Assignment>& assignment() const noexcept { return assignment_; }
  [[nodiscard]] bool active() const noexcept { return assignment_.has_value(); }

protected:
  std::optional<Assignment> assignment_;

private:
  Role role_;
};

/// Quotes its limit price exactly once per assignment. Test fixture.
class TruthTrader final : public Trader {
public:
  using Trader::Trader;

  [[nodiscard]] std::string kind() const override { return "TRUTH"; }
  std::optional<Price> quote(const LobSnapshot&, Tick, PriceRange, UniformSource&) override {
    if (!assignment_ || quoted_) return std::nullopt;
    quoted_ = true;
    return assignment_->limit_price;
  }
  void assign(const Assignment& assignment) override {
    Trader::assign(assignment);
    quoted_ = false;
  }

private:
  bool quoted_ = false;
};

}  // namespace lobmimic
