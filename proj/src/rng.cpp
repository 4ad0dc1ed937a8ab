#include "lobmimic/rng.hpp"

#include <cmath>

#include "lobmimic/types.hpp"

namespace lobmimic {

const char* to_string(Side side) noexcept { return side == Side::Bid ? "bid" : "ask"; }
const char* to_string(Role role) noexcept { return role == Role::Buyer ? "buy" : "sell"; }

Price round_to_tick(double value) noexcept { return static_cast<Price>(std::round(value)); }

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

double Rng::next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double uniform(UniformSource& src, double lo, double hi) { return lo + (hi - lo) * src.next_unit(); }

std::int64_t uniform_int(UniformSource& src, std::int64_t lo, std::int64_t hi) {
  if (hi <= lo) return lo;
  const auto span = static_cast<double>(hi - lo + 1);
  auto offset = static_cast<std::int64_t>(std::floor(src.next_unit() * span));
  if (offset > hi - lo) offset = hi - lo;
  return lo + offset;
}

}  // namespace lobmimic
