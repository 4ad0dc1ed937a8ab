#pragma once

#include <memory>
#include <optional>

#include "lobmimic/mlp.hpp"
#include "lobmimic/trader.hpp"

namespace lobmimic {

/// Turns a network output into a safe quote: denormalise, round, clamp to the
/// price range and then to the non-loss side of the limit. Nothing for a
/// non-finite output.
std::optional<Price> quote_from_output(double output, const FeatureConstants& constants,
                                       Role side, Price limit, PriceRange range);

std::optional<Price> mimic_quote(const MlpModel& model, const std::optional<Assignment>& assignment,
                                 const LobSnapshot& book, Tick now, PriceRange range);

/// A frozen trained network trading live. It ignores broadcasts; the book
/// state in its inputs is its only view of the market.
class MimicTrader final : public Trader {
public:
  MimicTrader(Role role, std::shared_ptr<const MlpModel> model);

  [[nodiscard]] std::string kind() const override { return "MIMIC"; }
  std::optional<Price> quote(const LobSnapshot& book, Tick now, PriceRange range,
                             UniformSource& rng) override;

  [[nodiscard]] std::int64_t non_finite_outputs() const noexcept { return non_finite_; }

private:
  std::shared_ptr<const MlpModel> model_;
  std::int64_t non_finite_ = 0;
};

}  // namespace lobmimic
