#pragma once

#include <cstdint>
#include <random>

namespace lobmimic {

/// Source of uniform variates on [0, 1). Everything random in the library
/// draws through this interface so tests can pin the stream.
class UniformSource {
public:
  virtual ~UniformSource() = default;
  virtual double next_unit() = 0;
};

/// Seeded 64-bit Mersenne Twister. The mapping from engine output to reals is
/// done here rather than through <random> distributions, whose algorithms are
/// implementation-defined.
class Rng final : public UniformSource {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Independent substream: seed and stream index are mixed with splitmix64.
  Rng(std::uint64_t seed, std::uint64_t stream);

  double next_unit() override;

private:
  std::mt19937_64 engine_;
};

/// Always returns the same value; used to force draws to a bound.
class ConstantSource final : public UniformSource {
public:
  explicit ConstantSource(double value) : value_(value) {}
  double next_unit() override { return value_; }

private:
  double value_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Uniform real on [lo, hi).
double uniform(UniformSource& src, double lo, double hi);

/// Uniform integer on [lo, hi], inclusive.
std::int64_t uniform_int(UniformSource& src, std::int64_t lo, std::int64_t hi);

}  // namespace lobmimic
