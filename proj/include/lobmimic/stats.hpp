#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lobmimic/types.hpp"

namespace lobmimic {

/// Direction of the one-tailed alternative.
enum class Tail : std::uint8_t { BGreater, AGreater };

struct MannWhitneyResult {
  double u_a = 0.0;
  double u_b = 0.0;
  double p = 1.0;
  bool exact = false;
};

/// Midranks (1-based) of the pooled sample a ++ b.
std::vector<double> midranks(std::span<const double> pooled);

/// U statistics from rank sums: U_a counts pairs with a > b, ties as 1/2.
MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b);

/// Exact one-tailed p, conditional on the observed tie pattern: the share of
/// all C(n_a + n_b, n_b) rank assignments at least as extreme as observed.
double mann_whitney_exact_p(std::span<const double> a, std::span<const double> b, Tail tail);

/// Normal approximation with tie-corrected variance and continuity
/// correction.
double mann_whitney_normal_p(std::span<const double> a, std::span<const double> b, Tail tail);

inline constexpr std::size_t kExactCutover = 16;

/// Exact when n_a + n_b <= 16, otherwise the normal approximation. Throws
/// Error on an empty sample.
MannWhitneyResult mann_whitney_one_tailed(std::span<const double> a, std::span<const double> b,
                                          Tail tail = Tail::BGreater);

struct SummaryStats {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double mean = 0.0;
  double sd = 0.0;
  double whisker_lo = 0.0;
  double whisker_hi = 0.0;
  /// Set for n = 1, where the sample deviation is undefined and reported as 0.
  bool degenerate = false;
  std::size_t n = 0;
};

/// Quartiles are medians of the lower and upper halves, each half including
/// the overall median when n is odd. Whiskers sit at mean +/- 2 sd.
SummaryStats summary_stats(std::span<const double> sample);

/// 100 * RMS deviation of transaction prices from p0, over p0.
double smiths_alpha(std::span<const Price> trade_prices, double equilibrium_price);

double pearson_correlation(std::span<const double> x, std::span<const double> y);

double normal_cdf(double z);

}  // namespace lobmimic
