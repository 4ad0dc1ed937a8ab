#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lobmimic/rng.hpp"
#include "lobmimic/stats.hpp"

using namespace lobmimic;

namespace {

/// Oracle: enumerate every way of choosing which pooled positions belong to
/// B and count rank sums at least as large as observed.
double enumerate_p_b_greater(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  const auto ranks = midranks(pooled);
  const std::size_t n = pooled.size();
  double observed = 0.0;
  for (std::size_t i = a.size(); i < n; ++i) observed += ranks[i];
  std::vector<bool> pick(n, false);
  std::fill(pick.end() - static_cast<long>(b.size()), pick.end(), true);
  double total = 0;
  double extreme = 0;
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (pick[i]) s += ranks[i];
    }
    total += 1;
    extreme += s >= observed - 1e-9;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return extreme / total;
}

}  // namespace

TEST_CASE("midranks average ties") {
  const std::vector<double> v{3, 1, 3, 2, 3};
  CHECK(midranks(v) == std::vector<double>{4, 1, 4, 2, 4});
}

TEST_CASE("separated samples") {
  const std::vector<double> a{1, 2, 3};
  const std::vector<double> b{4, 5, 6};
  const auto r = mann_whitney_one_tailed(a, b, Tail::BGreater);
  CHECK(r.u_b == 9.0);
  CHECK(r.u_a == 0.0);
  CHECK(r.exact);
  CHECK(r.p == doctest::Approx(1.0 / 20.0));
  CHECK(enumerate_p_b_greater(a, b) == doctest::Approx(0.05));
  CHECK(mann_whitney_one_tailed(a, b, Tail::AGreater).p == doctest::Approx(1.0));
}

TEST_CASE("identical samples sit near the middle of the null") {
  const std::vector<double> a{1, 2, 3};
  const auto r = mann_whitney_one_tailed(a, a);
  CHECK(r.u_a == r.u_b);
  CHECK(r.p == doctest::Approx(enumerate_p_b_greater(a, a)));
  CHECK(r.p == doctest::Approx(0.7));  // 14 of the 20 splits reach the observed sum

  std::vector<double> big(30);
  std::iota(big.begin(), big.end(), 0.0);
  const auto large = mann_whitney_one_tailed(big, big);
  CHECK_FALSE(large.exact);
  CHECK(large.p == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("all values tied") {
  const std::vector<double> a{7, 7, 7};
  const auto r = mann_whitney_one_tailed(a, a);
  CHECK(r.u_a == 4.5);
  CHECK(r.u_b == 4.5);
  CHECK(r.p == 1.0);
}

TEST_CASE("exact p agrees with brute-force enumeration") {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> a(static_cast<std::size_t>(uniform_int(rng, 1, 7)));
    std::vector<double> b(static_cast<std::size_t>(uniform_int(rng, 1, 7)));
    for (auto& v : a) v = static_cast<double>(uniform_int(rng, 0, 6));
    for (auto& v : b) v = static_cast<double>(uniform_int(rng, 0, 6));
    CHECK(mann_whitney_exact_p(a, b, Tail::BGreater) ==
          doctest::Approx(enumerate_p_b_greater(a, b)).epsilon(1e-12));
    // AGreater on (a, b) is BGreater on (b, a).
    CHECK(mann_whitney_exact_p(a, b, Tail::AGreater) ==
          doctest::Approx(enumerate_p_b_greater(b, a)).epsilon(1e-12));
  }
}

TEST_CASE("U statistics partition the pairs") {
  Rng rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(static_cast<std::size_t>(uniform_int(rng, 1, 30)));
    std::vector<double> b(static_cast<std::size_t>(uniform_int(rng, 1, 30)));
    for (auto& v : a) v = static_cast<double>(uniform_int(rng, 0, 20));
    for (auto& v : b) v = static_cast<double>(uniform_int(rng, 0, 20));
    const auto r = mann_whitney_u(a, b);
    CHECK(r.u_a + r.u_b == static_cast<double>(a.size() * b.size()));
    double pairs = 0;
    for (double x : a) {
      for (double y : b) pairs += x > y ? 1.0 : (x == y ? 0.5 : 0.0);
    }
    CHECK(r.u_a == pairs);
  }
}

TEST_CASE("rank tests ignore monotone transforms") {
  Rng rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(12);
    std::vector<double> b(14);
    for (auto& v : a) v = static_cast<double>(uniform_int(rng, 0, 15));
    for (auto& v : b) v = static_cast<double>(uniform_int(rng, 0, 15));
    std::vector<double> ta(a.size());
    std::vector<double> tb(b.size());
    auto f = [](double x) { return std::exp(x / 3.0) - 4.0; };
    std::transform(a.begin(), a.end(), ta.begin(), f);
    std::transform(b.begin(), b.end(), tb.begin(), f);
    CHECK(mann_whitney_one_tailed(a, b).p == doctest::Approx(mann_whitney_one_tailed(ta, tb).p));
    const std::vector<double> sa(a.begin(), a.begin() + 5);
    const std::vector<double> sb(b.begin(), b.begin() + 6);
    const std::vector<double> tsa(ta.begin(), ta.begin() + 5);
    const std::vector<double> tsb(tb.begin(), tb.begin() + 6);
    CHECK(mann_whitney_one_tailed(sa, sb).p ==
          doctest::Approx(mann_whitney_one_tailed(tsa, tsb).p));
  }
}

TEST_CASE("shifting B upward never raises the p for B > A") {
  Rng rng(34);
  for (int trial = 0; trial < 50; ++trial) {
    for (std::size_t n : {4u, 25u}) {
      std::vector<double> a(n);
      std::vector<double> b(n);
      for (auto& v : a) v = static_cast<double>(uniform_int(rng, 0, 10));
      for (auto& v : b) v = static_cast<double>(uniform_int(rng, 0, 10));
      double prev = mann_whitney_one_tailed(a, b).p;
      for (int shift = 0; shift < 5; ++shift) {
        for (auto& v : b) v += 1.0;
        const double p = mann_whitney_one_tailed(a, b).p;
        CHECK(p <= prev + 1e-12);
        prev = p;
      }
    }
  }
}

TEST_CASE("normal approximation at paper scale") {
  Rng rng(35);
  std::vector<double> a(50);
  std::vector<double> b(50);
  for (auto& v : a) v = uniform(rng, 0.0, 100.0);
  for (auto& v : b) v = uniform(rng, 20.0, 120.0);
  const auto r = mann_whitney_one_tailed(a, b);
  CHECK_FALSE(r.exact);
  CHECK(r.p < 0.01);
  CHECK(r.u_a + r.u_b == 2500.0);
}

TEST_CASE("empty samples are errors") {
  const std::vector<double> a{1.0};
  const std::vector<double> none;
  CHECK_THROWS_AS(mann_whitney_one_tailed(a, none), Error);
  CHECK_THROWS_AS(mann_whitney_one_tailed(none, a), Error);
}

TEST_CASE("summary statistics") {
  const std::vector<double> v{5, 1, 4, 2, 3};
  const auto s = summary_stats(v);
  CHECK(s.median == 3.0);
  CHECK(s.q1 == 2.0);
  CHECK(s.q3 == 4.0);
  CHECK(s.mean == 3.0);
  CHECK(s.sd == doctest::Approx(1.5811388300841898));
  CHECK(s.whisker_lo == doctest::Approx(3.0 - 3.1622776601683795));
  CHECK(s.whisker_hi == doctest::Approx(3.0 + 3.1622776601683795));
  CHECK_FALSE(s.degenerate);

  const auto even = summary_stats(std::vector<double>{1, 2, 3, 4, 5, 6});
  CHECK(even.median == 3.5);
  CHECK(even.q1 == 2.0);
  CHECK(even.q3 == 5.0);

  const auto flat = summary_stats(std::vector<double>{7, 7, 7});
  CHECK(flat.median == 7.0);
  CHECK(flat.q1 == 7.0);
  CHECK(flat.q3 == 7.0);
  CHECK(flat.sd == 0.0);
  CHECK(flat.whisker_lo == 7.0);
  CHECK(flat.whisker_hi == 7.0);

  const auto single = summary_stats(std::vector<double>{5});
  CHECK(single.median == 5.0);
  CHECK(single.sd == 0.0);
  CHECK(single.degenerate);

  CHECK_THROWS_AS(summary_stats(std::vector<double>{}), Error);
}

TEST_CASE("Smith's alpha") {
  CHECK(smiths_alpha(std::vector<Price>{100, 100, 100}, 100.0) == 0.0);
  CHECK(smiths_alpha(std::vector<Price>{90, 110}, 100.0) == doctest::Approx(10.0));
  CHECK_THROWS_AS(smiths_alpha(std::vector<Price>{}, 100.0), Error);
  CHECK_THROWS_AS(smiths_alpha(std::vector<Price>{1}, 0.0), Error);
}

TEST_CASE("pearson correlation") {
  const std::vector<double> x{1, 2, 3, 4};
  const std::vector<double> y{2, 4, 6, 8};
  const std::vector<double> z{4, 3, 2, 1};
  CHECK(pearson_correlation(x, y) == doctest::Approx(1.0));
  CHECK(pearson_correlation(x, z) == doctest::Approx(-1.0));
}
