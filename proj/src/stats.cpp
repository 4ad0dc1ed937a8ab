#include "lobmimic/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lobmimic {

namespace {

void require_nonempty(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error("Mann-Whitney test needs two nonempty samples");
}

std::vector<double> pooled(std::span<const double> a, std::span<const double> b) {
  std::vector<double> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  return all;
}

double median_sorted(std::span<const double> v) {
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

std::vector<double> midranks(std::span<const double> values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && values[idx[j + 1]] == values[idx[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  require_nonempty(a, b);
  const auto ranks = midranks(pooled(a, b));
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  const double rank_sum_a = std::accumulate(ranks.begin(), ranks.begin() + static_cast<long>(a.size()), 0.0);
  MannWhitneyResult r;
  r.u_a = rank_sum_a - na * (na + 1.0) / 2.0;
  r.u_b = na * nb - r.u_a;
  return r;
}

double mann_whitney_exact_p(std::span<const double> a, std::span<const double> b, Tail tail) {
  require_nonempty(a, b);
  // Doubled midranks are integers; count subsets of size n_b by doubled rank
  // sum with a knapsack over the pooled ranks.
  const auto ranks = midranks(pooled(a, b));
  const std::size_t n = ranks.size();
  const std::size_t nb = b.size();
  std::vector<long> doubled(n);
  for (std::size_t i = 0; i < n; ++i) doubled[i] = std::lround(2.0 * ranks[i]);
  const long max_sum = std::accumulate(doubled.begin(), doubled.end(), 0L);

  // ways[k][s]: number of k-subsets with doubled rank sum s.
  std::vector<std::vector<double>> ways(nb + 1, std::vector<double>(static_cast<std::size_t>(max_sum) + 1, 0.0));
  ways[0][0] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = std::min(nb, i + 1); k >= 1; --k) {
      const auto& from = ways[k - 1];
      auto& to = ways[k];
      for (long s = max_sum - doubled[i]; s >= 0; --s) {
        if (from[static_cast<std::size_t>(s)] != 0.0) {
          to[static_cast<std::size_t>(s + doubled[i])] += from[static_cast<std::size_t>(s)];
        }
      }
    }
  }

  long observed = 0;
  for (std::size_t i = a.size(); i < n; ++i) observed += doubled[i];
  double total = 0.0;
  double extreme = 0.0;
  for (long s = 0; s <= max_sum; ++s) {
    const double w = ways[nb][static_cast<std::size_t>(s)];
    total += w;
    // BGreater: large rank sums for b are extreme; AGreater: small ones.
    if (tail == Tail::BGreater ? s >= observed : s <= observed) extreme += w;
  }
  return extreme / total;
}

double mann_whitney_normal_p(std::span<const double> a, std::span<const double> b, Tail tail) {
  const MannWhitneyResult u = mann_whitney_u(a, b);
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  const double n = na + nb;

  const auto all = pooled(a, b);
  std::vector<double> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  double tie_term = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const auto t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }
  const double mean = na * nb / 2.0;
  const double variance =
      n > 1.0 ? na * nb / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0))) : 0.0;
  const double stat = tail == Tail::BGreater ? u.u_b : u.u_a;
  if (variance <= 0.0) {
    // Every value tied: the statistic sits at its mean with certainty.
    return stat >= mean ? 1.0 : 0.0;
  }
  const double z = (stat - mean - 0.5) / std::sqrt(variance);
  return 1.0 - normal_cdf(z);
}

MannWhitneyResult mann_whitney_one_tailed(std::span<const double> a, std::span<const double> b,
                                          Tail tail) {
  MannWhitneyResult r = mann_whitney_u(a, b);
  r.exact = a.size() + b.size() <= kExactCutover;
  r.p = r.exact ? mann_whitney_exact_p(a, b, tail) : mann_whitney_normal_p(a, b, tail);
  return r;
}

SummaryStats summary_stats(std::span<const double> sample) {
  if (sample.empty()) throw Error("summary statistics of an empty sample");
  std::vector<double> v(sample.begin(), sample.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  SummaryStats s;
  s.n = n;
  s.median = median_sorted(v);
  const std::size_t half = (n + 1) / 2;  // lower half includes the median when n is odd
  s.q1 = median_sorted(std::span<const double>(v).first(half));
  s.q3 = median_sorted(std::span<const double>(v).last(half));
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(n - 1));
  } else {
    s.degenerate = true;
  }
  s.whisker_lo = s.mean - 2.0 * s.sd;
  s.whisker_hi = s.mean + 2.0 * s.sd;
  return s;
}

double smiths_alpha(std::span<const Price> trade_prices, double equilibrium_price) {
  if (trade_prices.empty()) throw Error("Smith's alpha needs at least one trade");
  if (!(equilibrium_price > 0.0)) throw Error("equilibrium price must be positive");
  double ss = 0.0;
  for (Price p : trade_prices) {
    const double d = static_cast<double>(p) - equilibrium_price;
    ss += d * d;
  }
  return 100.0 * std::sqrt(ss / static_cast<double>(trade_prices.size())) / equilibrium_price;
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw Error("correlation needs two equal series");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace lobmimic
