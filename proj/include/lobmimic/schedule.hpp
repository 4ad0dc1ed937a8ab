#pragma once

#include <optional>
#include <vector>

#include "lobmimic/rng.hpp"
#include "lobmimic/types.hpp"

namespace lobmimic {

/// base + slope * t, rounded to ticks.
struct AffinePrice {
  double base = 0.0;
  double slope = 0.0;

  [[nodiscard]] Price at(Tick t) const noexcept {
    return round_to_tick(base + slope * static_cast<double>(t));
  }
};

/// Limit prices on [t_start, t_end) are drawn uniformly between the two
/// affine bounds. Bull, bear and flat markets differ only in slope; multiphase
/// markets chain several segments.
struct ScheduleSegment {
  Tick t_start = 0;
  Tick t_end = 0;
  AffinePrice min_fn;
  AffinePrice max_fn;

  [[nodiscard]] bool covers(Tick t) const noexcept { return t >= t_start && t < t_end; }
};

using Schedule = std::vector<ScheduleSegment>;

struct Assignment {
  Role side = Role::Buyer;
  Price limit_price = 0;
  Tick issue_time = 0;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Throws ScheduleError on an empty or inverted segment, or if the schedule
/// leaves a gap in [0, duration).
void validate_schedule(const Schedule& schedule, Tick duration);

Price limit_price_at(const ScheduleSegment& segment, Tick t, UniformSource& rng,
                     PriceRange range);
Price limit_price_at(const Schedule& schedule, Tick t, UniformSource& rng, PriceRange range);

/// Fresh client order for a trader whose previous assignment just completed.
Assignment replenish(Role side, const Schedule& schedule, Tick t, UniformSource& rng,
                     PriceRange range);

/// Competitive equilibrium of a set of unit buyers and sellers: demand sorted
/// descending, supply ascending, and the price is the midpoint of the last
/// crossing pair. Returns nothing when no pair crosses.
std::optional<double> equilibrium_price(std::vector<Price> buyer_limits,
                                        std::vector<Price> seller_limits);

/// Equilibrium of the curves induced by the schedules at time t, taking one
/// unit per integer price in each segment's support.
std::optional<double> schedule_equilibrium(const Schedule& demand, const Schedule& supply, Tick t);

}  // namespace lobmimic
