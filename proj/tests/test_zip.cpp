#include <doctest.h>

#include <cmath>

#include "lobmimic/zip.hpp"

using namespace lobmimic;

namespace {

ZipState seller_at(Price limit, double margin, double beta, double gamma) {
  ZipState s;
  s.role = Role::Seller;
  s.margin = margin;
  s.beta = beta;
  s.gamma = gamma;
  zip_assign(s, Assignment{Role::Seller, limit, 0});
  return s;
}

ZipState buyer_at(Price limit, double margin, double beta, double gamma) {
  ZipState s;
  s.role = Role::Buyer;
  s.margin = margin;
  s.beta = beta;
  s.gamma = gamma;
  zip_assign(s, Assignment{Role::Buyer, limit, 0});
  return s;
}

}  // namespace

TEST_CASE("init with draws forced to their lower bounds") {
  ConstantSource low(0.0);
  const auto s = zip_init(Role::Seller, low);
  CHECK(s.beta == 0.1);
  CHECK(s.gamma == 0.0);
  CHECK(s.margin == doctest::Approx(0.05));
  CHECK(s.momentum == 0.0);
}

TEST_CASE("buyer margins start negative") {
  Rng rng(1);
  for (int i = 0; i < 500; ++i) {
    const auto s = zip_init(Role::Buyer, rng);
    CHECK(s.margin <= -0.05);
    CHECK(s.margin >= -0.35);
    CHECK(s.beta >= 0.1);
    CHECK(s.beta < 0.5);
    CHECK(s.gamma >= 0.0);
    CHECK(s.gamma < 0.1);
  }
}

TEST_CASE("init is deterministic per seed") {
  Rng a(77);
  Rng b(77);
  const auto x = zip_init(Role::Seller, a);
  const auto y = zip_init(Role::Seller, b);
  CHECK(x.beta == y.beta);
  CHECK(x.gamma == y.gamma);
  CHECK(x.margin == y.margin);
}

TEST_CASE("quote formula") {
  auto s = seller_at(100, 0.05, 0.1, 0.0);
  CHECK(zip_quote(s, {1, 500}) == 105);
  auto b = buyer_at(100, -0.05, 0.1, 0.0);
  CHECK(zip_quote(b, {1, 500}) == 95);
  auto flat = seller_at(100, 0.0, 0.1, 0.0);
  CHECK(zip_quote(flat, {1, 500}) == 100);
  CHECK(flat.last_quote == 100);
  ZipState idle;
  CHECK_FALSE(zip_quote(idle, {1, 500}));
}

TEST_CASE("quotes round half away from zero and respect the range") {
  auto s = seller_at(10, 0.05, 0.1, 0.0);  // 10.5
  CHECK(zip_quote(s, {1, 500}) == 11);
  auto b = buyer_at(10, -0.05, 0.1, 0.0);  // 9.5
  CHECK(zip_quote(b, {1, 500}) == 10);
  auto high = seller_at(490, 0.5, 0.1, 0.0);
  CHECK(zip_quote(high, {1, 500}) == 500);
}

TEST_CASE("Widrow-Hoff step without momentum") {
  auto s = seller_at(100, 0.0, 0.5, 0.0);
  zip_adapt(s, 110.0);
  CHECK(s.momentum == doctest::Approx(5.0));
  CHECK(s.price == doctest::Approx(105.0));
  CHECK(s.margin == doctest::Approx(105.0 / 100.0 - 1.0));
}

TEST_CASE("momentum blends the previous change") {
  auto s = seller_at(100, 0.0, 0.5, 0.5);
  s.momentum = 2.0;
  zip_adapt(s, 108.0);  // delta = 0.5 * 8 = 4
  CHECK(s.momentum == doctest::Approx(3.0));
  CHECK(s.price == doctest::Approx(103.0));
}

TEST_CASE("an accepted trade above a seller's price raises its margin") {
  auto s = seller_at(100, 0.0, 0.3, 0.05);
  ConstantSource mid(0.5);
  const ZipEvent trade{105, Side::Bid, true};
  CHECK(zip_decide(s, trade) == MarginMove::Raise);
  auto next = zip_update(s, trade, mid);
  CHECK(*zip_quote(next, {1, 500}) > 100);
  CHECK(next.margin > 0.0);
}

TEST_CASE("rule table, seller side") {
  const auto s = seller_at(100, 0.1, 0.3, 0.0);  // p = 110
  CHECK(zip_decide(s, {115, Side::Ask, true}) == MarginMove::Raise);
  CHECK(zip_decide(s, {105, Side::Bid, true}) == MarginMove::Lower);
  CHECK(zip_decide(s, {105, Side::Ask, true}) == MarginMove::Hold);
  CHECK(zip_decide(s, {105, Side::Ask, false}) == MarginMove::Lower);
  CHECK(zip_decide(s, {115, Side::Ask, false}) == MarginMove::Hold);
  CHECK(zip_decide(s, {105, Side::Bid, false}) == MarginMove::Hold);
}

TEST_CASE("rule table, buyer side") {
  const auto b = buyer_at(100, -0.1, 0.3, 0.0);  // p = 90
  CHECK(zip_decide(b, {85, Side::Bid, true}) == MarginMove::Raise);
  CHECK(zip_decide(b, {95, Side::Ask, true}) == MarginMove::Lower);
  CHECK(zip_decide(b, {95, Side::Bid, true}) == MarginMove::Hold);
  CHECK(zip_decide(b, {95, Side::Bid, false}) == MarginMove::Lower);
  CHECK(zip_decide(b, {85, Side::Bid, false}) == MarginMove::Hold);
  CHECK(zip_decide(b, {95, Side::Ask, false}) == MarginMove::Hold);
  ZipState idle;
  idle.role = Role::Buyer;
  CHECK(zip_decide(idle, {95, Side::Bid, false}) == MarginMove::Hold);
}

TEST_CASE("rules compare the shown integer quote") {
  // Real price 162.3 shows as 162, so a rejected bid at 162 still prompts it
  // to outbid.
  const auto b = buyer_at(200, 162.3 / 200.0 - 1.0, 0.3, 0.0);
  CHECK(zip_decide(b, {162, Side::Bid, false}) == MarginMove::Lower);
  const auto s = seller_at(100, 1.637, 0.3, 0.0);  // 163.7 shows as 164
  CHECK(zip_decide(s, {164, Side::Ask, false}) == MarginMove::Lower);
}

TEST_CASE("targets move away from or toward q in the right direction") {
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    CHECK(zip_target(Role::Seller, MarginMove::Raise, 100.0, rng) >= 100.0);
    CHECK(zip_target(Role::Seller, MarginMove::Lower, 100.0, rng) <= 100.0);
    CHECK(zip_target(Role::Buyer, MarginMove::Raise, 100.0, rng) <= 100.0);
    CHECK(zip_target(Role::Buyer, MarginMove::Lower, 100.0, rng) >= 100.0);
  }
  ConstantSource top(1.0);
  CHECK(zip_target(Role::Seller, MarginMove::Raise, 100.0, top) == doctest::Approx(105.05));
  CHECK(zip_target(Role::Seller, MarginMove::Lower, 100.0, top) == doctest::Approx(94.95));
}

TEST_CASE("geometric convergence toward a fixed target") {
  auto s = seller_at(100, 0.5, 0.2, 0.0);  // p0 = 150
  const double target = 120.0;
  const double p0 = s.price;
  for (int k = 0; k < 200; ++k) zip_adapt(s, target);
  const double expected = target + std::pow(1.0 - 0.2, 200) * (p0 - target);
  CHECK(std::abs(s.price - expected) < 1e-9);
  CHECK(std::abs(s.price - target) < 1e-9);
}

TEST_CASE("margins are clamped to the non-loss side") {
  auto s = seller_at(100, 0.02, 0.9, 0.0);
  zip_adapt(s, 50.0);
  CHECK(s.margin == 0.0);
  CHECK(zip_quote(s, {1, 500}) == 100);

  auto b = buyer_at(100, -0.02, 0.9, 0.0);
  zip_adapt(b, 150.0);
  CHECK(b.margin == 0.0);
  auto deep = buyer_at(100, -0.9, 1.0, 0.0);
  zip_adapt(deep, -500.0);
  CHECK(deep.margin == -1.0);
  CHECK(zip_quote(deep, {1, 500}) == 1);
}

TEST_CASE("quotes are never loss-making across random event streams") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    for (Role role : {Role::Buyer, Role::Seller}) {
      ZipState s = zip_init(role, rng);
      zip_assign(s, {role, uniform_int(rng, 50, 200), 0});
      for (int step = 0; step < 200; ++step) {
        if (step % 37 == 0) zip_assign(s, {role, uniform_int(rng, 50, 200), step});
        const ZipEvent e{uniform_int(rng, 1, 300), uniform_int(rng, 0, 1) ? Side::Bid : Side::Ask,
                         uniform_int(rng, 0, 1) == 1};
        s = zip_update(s, e, rng);
        const Price q = *zip_quote(s, {1, 500});
        const Price limit = s.assignment->limit_price;
        if (role == Role::Seller) {
          REQUIRE(q >= limit);
          REQUIRE(s.margin >= 0.0);
        } else {
          REQUIRE(q <= limit);
          REQUIRE(s.margin <= 0.0);
          REQUIRE(s.margin >= -1.0);
        }
      }
    }
  }
}

TEST_CASE("raise moves the quote away from q's competitive side, lower toward it") {
  // Pinned rng: the perturbation is fixed, only the direction matters.
  ConstantSource pinned(0.3);
  for (double margin : {0.05, 0.2}) {
    auto s = seller_at(100, margin, 0.4, 0.0);
    const double p = s.price;
    const auto up = zip_update(s, {static_cast<Price>(p) + 5, Side::Bid, true}, pinned);
    CHECK(up.price > p);
    const auto down = zip_update(s, {static_cast<Price>(p) - 2, Side::Ask, false}, pinned);
    CHECK(down.price < p);
  }
  auto b = buyer_at(100, -0.2, 0.4, 0.0);  // p = 80
  const auto up = zip_update(b, {70, Side::Ask, true}, pinned);
  CHECK(up.price < 80.0);
  const auto down = zip_update(b, {85, Side::Bid, false}, pinned);
  CHECK(down.price > 80.0);
}

TEST_CASE("ZIP trader keeps its margin across assignments") {
  ZipTrader t(Role::Seller);
  ConstantSource low(0.0);
  t.start(low);
  t.assign({Role::Seller, 100, 0});
  Rng rng(1);
  CHECK(t.quote({}, 0, {1, 500}, rng) == 105);
  t.complete();
  CHECK_FALSE(t.active());
  t.assign({Role::Seller, 200, 5});
  CHECK(t.quote({}, 5, {1, 500}, rng) == 210);
}
