#include "lobmimic/zip.hpp"

#include <algorithm>

namespace lobmimic {

namespace {

double clamp_margin(Role role, double margin) {
  return role == Role::Seller ? std::max(margin, 0.0) : std::clamp(margin, -1.0, 0.0);
}

void reprice(ZipState& state) {
  if (state.assignment) {
    state.price = static_cast<double>(state.assignment->limit_price) * (1.0 + state.margin);
  }
}

}  // namespace

ZipState zip_init(Role role, UniformSource& rng, const ZipParams& params) {
  ZipState s;
  s.role = role;
  s.beta = uniform(rng, params.beta_min, params.beta_max);
  s.gamma = uniform(rng, params.gamma_min, params.gamma_max);
  const double magnitude = uniform(rng, params.margin_min, params.margin_max);
  s.margin = role == Role::Seller ? magnitude : -magnitude;
  s.momentum = 0.0;
  return s;
}

void zip_assign(ZipState& state, const Assignment& assignment) {
  state.assignment = assignment;
  reprice(state);
}

std::optional<Price> zip_quote(ZipState& state, PriceRange range) {
  if (!state.assignment) return std::nullopt;
  const Price limit = state.assignment->limit_price;
  Price p = range.clamp(round_to_tick(static_cast<double>(limit) * (1.0 + state.margin)));
  // Clamping to the range can only cross the limit if the limit itself lies
  // outside it.
  p = state.role == Role::Seller ? std::max(p, limit) : std::min(p, limit);
  state.last_quote = p;
  return p;
}

MarginMove zip_decide(const ZipState& state, const ZipEvent& event) {
  if (!state.assignment) return MarginMove::Hold;
  // The rules compare the integer quote the trader would show now; the real
  // price only carries the adaptation between ticks.
  const Price limit = state.assignment->limit_price;
  Price shown = round_to_tick(state.price);
  shown = state.role == Role::Seller ? std::max(shown, limit) : std::min(shown, limit);
  const auto p = static_cast<double>(shown);
  const auto q = static_cast<double>(event.price);
  if (state.role == Role::Seller) {
    if (event.accepted) {
      if (p <= q) return MarginMove::Raise;
      if (event.side == Side::Bid && p >= q) return MarginMove::Lower;
    } else if (event.side == Side::Ask && p >= q) {
      return MarginMove::Lower;
    }
  } else {
    if (event.accepted) {
      if (p >= q) return MarginMove::Raise;
      if (event.side == Side::Ask && p <= q) return MarginMove::Lower;
    } else if (event.side == Side::Bid && p <= q) {
      return MarginMove::Lower;
    }
  }
  return MarginMove::Hold;
}

double zip_target(Role role, MarginMove move, double q, UniformSource& rng,
                  const ZipParams& params) {
  const double u1 = uniform(rng, 0.0, params.relative_perturbation);
  const double u2 = uniform(rng, 0.0, params.absolute_perturbation);
  // A seller raising its margin and a buyer lowering its margin both aim
  // above q.
  const bool upward = (role == Role::Seller) == (move == MarginMove::Raise);
  return upward ? q * (1.0 + u1) + u2 : q * (1.0 - u1) - u2;
}

void zip_adapt(ZipState& state, double target) {
  if (!state.assignment) return;
  const double delta = state.beta * (target - state.price);
  state.momentum = state.gamma * state.momentum + (1.0 - state.gamma) * delta;
  const double next = state.price + state.momentum;
  state.margin = clamp_margin(state.role,
                              next / static_cast<double>(state.assignment->limit_price) - 1.0);
  reprice(state);
}

ZipState zip_update(ZipState state, const ZipEvent& event, UniformSource& rng,
                    const ZipParams& params) {
  const MarginMove move = zip_decide(state, event);
  if (move == MarginMove::Hold) return state;
  zip_adapt(state, zip_target(state.role, move, static_cast<double>(event.price), rng, params));
  return state;
}

void ZipTrader::start(UniformSource& rng) {
  const auto assignment = state_.assignment;
  state_ = zip_init(role(), rng, params_);
  if (assignment) zip_assign(state_, *assignment);
}

std::optional<Price> ZipTrader::quote(const LobSnapshot&, Tick, PriceRange range,
                                      UniformSource&) {
  return zip_quote(state_, range);
}

void ZipTrader::observe(const MarketEvent& event, const LobSnapshot&, UniformSource& rng) {
  state_ = zip_update(std::move(state_), ZipEvent{event.price, event.side, event.accepted}, rng,
                      params_);
}

void ZipTrader::assign(const Assignment& assignment) {
  Trader::assign(assignment);
  zip_assign(state_, assignment);
}

void ZipTrader::complete() {
  Trader::complete();
  state_.assignment.reset();
}

}  // namespace lobmimic
