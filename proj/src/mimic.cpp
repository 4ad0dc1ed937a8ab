#include "lobmimic/mimic.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

namespace lobmimic {

std::optional<Price> quote_from_output(double output, const FeatureConstants& constants,
                                       Role side, Price limit, PriceRange range) {
  if (!std::isfinite(output)) return std::nullopt;
  const double raw = output * constants.p_max;
  // Clamp in the real domain first so huge outputs cannot overflow the cast.
  const double bounded =
      std::clamp(raw, static_cast<double>(range.min), static_cast<double>(range.max));
  Price p = range.clamp(round_to_tick(bounded));
  p = side == Role::Buyer ? std::min(p, limit) : std::max(p, limit);
  return p;
}

std::optional<Price> mimic_quote(const MlpModel& model, const std::optional<Assignment>& assignment,
                                 const LobSnapshot& book, Tick now, PriceRange range) {
  if (!assignment) return std::nullopt;
  const FeatureVector x =
      featurize(book_features(book), assignment->side, assignment->limit_price, now,
                model.constants);
  return quote_from_output(mlp_forward(model, x), model.constants, assignment->side,
                           assignment->limit_price, range);
}

MimicTrader::MimicTrader(Role role, std::shared_ptr<const MlpModel> model)
    : Trader(role), model_(std::move(model)) {
  if (!model_) throw ConfigError("mimic trader needs a model");
  if (model_->input_size() != static_cast<int>(kFeatureCount)) {
    throw ConfigError("mimic model expects " + std::to_string(model_->input_size()) +
                      " inputs, features have " + std::to_string(kFeatureCount));
  }
}

std::optional<Price> MimicTrader::quote(const LobSnapshot& book, Tick now, PriceRange range,
                                        UniformSource&) {
  if (!assignment_) return std::nullopt;
  const auto q = mimic_quote(*model_, assignment_, book, now, range);
  if (!q) {
    ++non_finite_;
    std::cerr << "lobmimic: mimic network produced a non-finite output at t=" << now << '\n';
  }
  return q;
}

}  // namespace lobmimic
