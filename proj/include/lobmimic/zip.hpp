#pragma once

#include <optional>

#include "lobmimic/trader.hpp"

namespace lobmimic {

/// Parameter ranges for ZIP initialisation and target perturbation.
struct ZipParams {
  double beta_min = 0.1;
  double beta_max = 0.5;
  double gamma_min = 0.0;
  double gamma_max = 0.1;
  double margin_min = 0.05;
  double margin_max = 0.35;
  double relative_perturbation = 0.05;  // u1 ~ U(0, relative_perturbation)
  double absolute_perturbation = 0.05;  // u2 ~ U(0, absolute_perturbation), ticks
};

/// The adaptive state of one ZIP trader. `price` is the unrounded shout
/// price limit * (1 + margin); quotes round it to ticks.
struct ZipState {
  Role role = Role::Seller;
  std::optional<Assignment> assignment;
  double margin = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double momentum = 0.0;  // carried change, in ticks
  double price = 0.0;
  std::optional<Price> last_quote;
};

struct ZipEvent {
  Price price = 0;
  Side side = Side::Bid;
  bool accepted = false;
};

enum class MarginMove { Hold, Raise, Lower };

ZipState zip_init(Role role, UniformSource& rng, const ZipParams& params = {});

/// Binds a new client order; the margin carries over.
void zip_assign(ZipState& state, const Assignment& assignment);

/// round(limit * (1 + margin)) clamped to the range; nothing without an
/// assignment.
std::optional<Price> zip_quote(ZipState& state, PriceRange range);

MarginMove zip_decide(const ZipState& state, const ZipEvent& event);

/// Perturbed target price for a move in response to market price q.
double zip_target(Role role, MarginMove move, double q, UniformSource& rng,
                  const ZipParams& params = {});

/// One Widrow-Hoff step with momentum toward `target`. Margin is clamped to
/// the role's non-loss range afterwards.
void zip_adapt(ZipState& state, double target);

[[nodiscard]] ZipState zip_update(ZipState state, const ZipEvent& event, UniformSource& rng,
                                  const ZipParams& params = {});

class ZipTrader final : public Trader {
public:
  explicit ZipTrader(Role role, ZipParams params = {}) : Trader(role), params_(params) {}

  [[nodiscard]] std::string kind() const override { return "ZIP"; }
  void start(UniformSource& rng) override;
  std::optional<Price> quote(const LobSnapshot& book, Tick now, PriceRange range,
                             UniformSource& rng) override;
  void observe(const MarketEvent& event, const LobSnapshot& book, UniformSource& rng) override;
  void assign(const Assignment& assignment) override;
  void complete() override;

  [[nodiscard]] const ZipState& state() const noexcept { return state_; }

private:
  ZipParams params_;
  ZipState state_;
};

}  // namespace lobmimic
