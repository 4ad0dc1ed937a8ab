#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lobmimic {

/// Prices are integer ticks; one tick is the smallest currency unit.
using Price = std::int64_t;
/// Simulation clock, in ticks.
using Tick = std::int64_t;
/// Opaque trader handle. Sessions use roster indices.
using TraderId = std::uint32_t;

enum class Side : std::uint8_t { Bid, Ask };
enum class Role : std::uint8_t { Buyer, Seller };

constexpr Side side_of(Role role) noexcept {
  return role == Role::Buyer ? Side::Bid : Side::Ask;
}

const char* to_string(Side side) noexcept;
const char* to_string(Role role) noexcept;

struct PriceRange {
  Price min = 1;
  Price max = 500;

  [[nodiscard]] bool contains(Price p) const noexcept { return p >= min && p <= max; }
  [[nodiscard]] Price clamp(Price p) const noexcept {
    return p < min ? min : (p > max ? max : p);
  }
};

/// Round half away from zero to integer ticks.
Price round_to_tick(double value) noexcept;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

class ScheduleError : public Error {
public:
  using Error::Error;
};

class DatasetError : public Error {
public:
  using Error::Error;
};

class FormatError : public Error {
public:
  using Error::Error;
};

class ShapeError : public Error {
public:
  using Error::Error;
};

class DivergenceError : public Error {
public:
  DivergenceError(int epoch, const std::string& what)
      : Error("training diverged at epoch " + std::to_string(epoch) + ": " + what), epoch_(epoch) {}
  [[nodiscard]] int epoch() const noexcept { return epoch_; }

private:
  int epoch_;
};

class DependencyError : public Error {
public:
  using Error::Error;
};

}  // namespace lobmimic
