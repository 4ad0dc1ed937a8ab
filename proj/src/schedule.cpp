#include "lobmimic/schedule.hpp"

#include <algorithm>
#include <functional>

namespace lobmimic {

void validate_schedule(const Schedule& schedule, Tick duration) {
  for (const auto& seg : schedule) {
    if (seg.t_start >= seg.t_end) throw ScheduleError("schedule segment has t_start >= t_end");
    for (Tick t : {seg.t_start, seg.t_end - 1}) {
      if (seg.min_fn.at(t) > seg.max_fn.at(t)) {
        throw ScheduleError("schedule segment min exceeds max at t=" + std::to_string(t));
      }
    }
  }
  for (Tick t = 0; t < duration;) {
    auto it = std::find_if(schedule.begin(), schedule.end(),
                           [t](const ScheduleSegment& s) { return s.covers(t); });
    if (it == schedule.end()) throw ScheduleError("schedule does not cover t=" + std::to_string(t));
    t = it->t_end;
  }
}

Price limit_price_at(const ScheduleSegment& segment, Tick t, UniformSource& rng,
                     PriceRange range) {
  if (!segment.covers(t)) throw ScheduleError("t=" + std::to_string(t) + " outside segment");
  Price lo = segment.min_fn.at(t);
  Price hi = segment.max_fn.at(t);
  if (hi < lo) std::swap(lo, hi);
  return range.clamp(uniform_int(rng, lo, hi));
}

Price limit_price_at(const Schedule& schedule, Tick t, UniformSource& rng, PriceRange range) {
  for (const auto& seg : schedule) {
    if (seg.covers(t)) return limit_price_at(seg, t, rng, range);
  }
  throw ScheduleError("no schedule segment covers t=" + std::to_string(t));
}

Assignment replenish(Role side, const Schedule& schedule, Tick t, UniformSource& rng,
                     PriceRange range) {
  return Assignment{side, limit_price_at(schedule, t, rng, range), t};
}

std::optional<double> equilibrium_price(std::vector<Price> buyer_limits,
                                        std::vector<Price> seller_limits) {
  std::sort(buyer_limits.begin(), buyer_limits.end(), std::greater<>());
  std::sort(seller_limits.begin(), seller_limits.end());
  const std::size_t n = std::min(buyer_limits.size(), seller_limits.size());
  std::optional<std::size_t> last;
  for (std::size_t k = 0; k < n && buyer_limits[k] >= seller_limits[k]; ++k) last = k;
  if (!last) return std::nullopt;
  return (static_cast<double>(buyer_limits[*last]) + static_cast<double>(seller_limits[*last])) /
         2.0;
}

namespace {

std::vector<Price> support_at(const Schedule& schedule, Tick t) {
  for (const auto& seg : schedule) {
    if (!seg.covers(t)) continue;
    std::vector<Price> prices;
    for (Price p = seg.min_fn.at(t); p <= seg.max_fn.at(t); ++p) prices.push_back(p);
    return prices;
  }
  throw ScheduleError("no schedule segment covers t=" + std::to_string(t));
}

}  // namespace

std::optional<double> schedule_equilibrium(const Schedule& demand, const Schedule& supply,
                                           Tick t) {
  return equilibrium_price(support_at(demand, t), support_at(supply, t));
}

}  // namespace lobmimic
