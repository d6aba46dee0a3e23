#include <catch2/catch_amalgamated.hpp>

#include "gridforge/formulas.hpp"

#include <random>

using namespace gridforge;

TEST_CASE("coordinate bound for fundamental surfaces") {
  CHECK(hass_lagarias_coord_bound(1).materialize(100).value == 512);
  CHECK(hass_lagarias_coord_bound(2).materialize(100).value == 131072);
  // t = 10: 10 * 2^72, checked against an independent exact computation
  Int expect = 10 * int_pow(Int(2), 72);
  auto m = hass_lagarias_coord_bound(10).materialize(100);
  REQUIRE(m.ok);
  CHECK(m.value == expect);
  CHECK(m.digits == decimal_digits(expect));
}

TEST_CASE("weight bounds") {
  CHECK(fundamental_weight_bound(1).materialize(100).value == 8192);
  CHECK(weakly_fundamental_weight_bound(1, 1, 0, 1).materialize(100).value == 8192);
  CHECK(weakly_fundamental_weight_bound(1, 2, 0, 1).is_zero());
  CHECK_THROWS_AS(weakly_fundamental_weight_bound(1, 5, 0, 1), NegativeMultiplier);
}

TEST_CASE("counting catalog values") {
  CHECK(counting_catalog("tetrahedra", {{"w", 2}, {"sum_chi", 0}}).materialize(100).value == 64);
  CHECK(counting_catalog("event_pages", {{"w", 1}, {"sum_chi", 1}}).is_zero());
  CHECK(counting_catalog("euclid_distance", {{"e", 1}}).materialize(100).value == 4784);
  CHECK(counting_catalog("euclid_annulus_weight", {{"e", 1}}).materialize(100).value == 23552);
  CHECK(counting_catalog("slide_tile", {{"d", 3}, {"w", 2}}).materialize(100).value ==
        2 * 9 + 4 * 2 * 3);
  CHECK(counting_catalog("slide_2handle_cubic", {{"w", 3}}).materialize(100).value == 24 * 27);
  CHECK_THROWS_AS(counting_catalog("no_such_bound", {}), UnknownBound);
  CHECK_THROWS_AS(counting_catalog("event_pages", {{"w", 1}, {"sum_chi", 2}}), InvalidParams);
}

TEST_CASE("geometric sums of 22 by direct summation") {
  // independent oracle: plain loop
  auto direct = [](int l) {
    Int s = 0;
    for (int i = 0; i <= l; ++i) s += int_pow(Int(22), i);
    return s;
  };
  for (int l = 0; l <= 7; ++l) CHECK(geometric_sum_22(l) == direct(l));
  CHECK(geometric_sum_22(3) == 11155);
  CHECK(geometric_sum_22(5) == 5399043);
}

TEST_CASE("hierarchy polynomial q") {
  // torus (2,3) hierarchy: l = 3, lambda = 6 + 12*6 + 24*2 + 24*3 = 198
  auto h = HierarchyParams::with_lambda(3, 198);
  Bound q1 = hierarchy_q(h, 1);
  Bound expect = Bound::power(10, Int(80) * 11155) * Bound::power(198, Int(8) * 11155);
  CHECK(q1 == expect);

  // q(2)/q(1) = 2^(22^l) exactly
  Bound q2 = hierarchy_q(h, 2);
  CHECK(q2 == q1 * Bound::power(2, int_pow(Int(22), 3)));

  // figure-eight hierarchy: l = 5, lambda = 492; exponent on the constant
  auto h8 = HierarchyParams::with_lambda(5, 492);
  Bound q8 = hierarchy_q(h8, 1);
  Bound expect8 = Bound::power(10, Int(80) * 5399043) * Bound::power(492, Int(8) * 5399043);
  CHECK(q8 == expect8);

  auto [wstep, mstep] = hierarchy_step(h, 3);
  CHECK(wstep == Bound::power(10, 80) * Bound::power(198, 8) * Bound::power(3, 22));
  CHECK(mstep == Bound::power(10, 40) * Bound::power(198, 4) * Bound::power(3, 11));
}

TEST_CASE("lambda from per-surface data") {
  // torus (r,s) hierarchy surfaces: chi 0 / 0 / 2-disc pairs with pattern counts
  std::vector<SurfaceData> surf = {
      {Int(0), Int(1), Int(2 * 2 * 3)},   // annulus, meets pattern 2rs = 12 times
      {Int(2), Int(2), Int(2 * 2)},       // two meridian discs, pattern 2r
      {Int(2), Int(2), Int(2 * 3)},       // two meridian discs, pattern 2s
  };
  auto h = HierarchyParams::from_surfaces(surf);
  CHECK(h.length == 3);
  // -3*0+6+72 thengives 78; -6+12+24=30; -6+12+36=42... direct recomputation:
  Int l = (-3 * 0 + 6 * 1 + 6 * 12) + (-3 * 2 + 6 * 2 + 6 * 4) + (-3 * 2 + 6 * 2 + 6 * 6);
  CHECK(h.lambda == l);
}

TEST_CASE("headline polynomial exact values") {
  Bound pt1 = p_torus(1);
  CHECK(pt1.digit_count() == 3296327);
  auto m = pt1.materialize(10000000);
  REQUIRE(m.ok);
  CHECK(m.value == int_pow(Int(10), 3296326));

  Bound pf1 = p_fig8(1);
  CHECK(pf1.digit_count() == 1669776769);
  CHECK_FALSE(pf1.materialize(10000000).ok);  // refusal above the digit budget

  auto sb = split_bound(2).materialize(100);
  REQUIRE(sb.ok);
  CHECK(sb.value == int_pow(Int(22), 11));
}

TEST_CASE("recognition bound is exactly twice the torus headline") {
  for (int c = 1; c <= 100; ++c) {
    Bound lhs = recognition_torus(c);
    Bound rhs = Bound::from_int(2) * p_torus(c);
    CHECK(lhs.compare(rhs) == 0);
  }
  auto m1 = recognition_torus(1).materialize(10000000);
  auto m2 = p_torus(1).materialize(10000000);
  REQUIRE(m1.ok);
  REQUIRE(m2.ok);
  CHECK(m1.value == 2 * m2.value);
}

TEST_CASE("collapsible polynomial with the figure-eight constants") {
  auto h = HierarchyParams::with_lambda(5, 492);
  h.a = 128;
  h.b = 128;
  h.f = 4;
  Bound pc = p_collapsible(h, 1);
  Bound headline = p_fig8(1);
  CHECK(pc.compare(headline) < 0);
  CHECK(p_collapsible(h, 1000).compare(p_fig8(1000)) < 0);
}

TEST_CASE("torus derivation reproduces the final inequality") {
  auto d = p_torus_derivation(2, 3, 3);
  CHECK(d.lambda == 198);
  CHECK(d.k == 1602 + 24 * 5 * 7);
  CHECK(d.leq_headline);
  CHECK(d.digits < d.headline_digits);
  CHECK_THROWS_AS(p_torus_derivation(3, 2, 3), InvalidParams);
  CHECK_THROWS_AS(p_torus_derivation(2, 3, 2), InvalidParams);
}

TEST_CASE("euler inequality validator") {
  // two-vertex unknotted sphere: 2*2 >= 2*2 with equality
  auto v = euler_inequality({2, 0, 0, 0, 2});
  CHECK(v.holds);
  CHECK(v.equality);
  // square-tiled torus: v_i = x_i, chi = 0, equality
  for (int k = 1; k <= 5; ++k) {
    auto t = euler_inequality({k, 0, k, 0, 0});
    CHECK(t.holds);
    CHECK(t.equality);
  }
  auto bad = euler_inequality({0, 0, 3, 0, 1});
  CHECK_FALSE(bad.holds);
  CHECK_THROWS_AS(euler_inequality({-1, 0, 0, 0, 0}), InvalidParams);
}

TEST_CASE("low valence lower bound interval") {
  // w_beta = 0 collapses to the exact rational part
  auto iv = low_valence_lower_bound(0, 1, 1, 0);
  CHECK(iv.lo == Rat(72, 31));
  CHECK(iv.hi == Rat(72, 31));

  auto iv2 = low_valence_lower_bound(1000000, 2, -3, 5);
  CHECK(iv2.width() <= Rat(1, 1000000));
  CHECK(iv2.lo <= iv2.hi);
  // value is w/(31 pi (4784)^2) - 216/31 - 25/31; sanity-bracket with pi in [3.14, 3.15]
  Rat denom_lo = Rat(31 * 4784) * 4784 * Rat(315, 100);
  Rat denom_hi = Rat(31 * 4784) * 4784 * Rat(314, 100);
  Rat rest = Rat(72 * -3, 31) - Rat(5 * 5, 31);
  CHECK(iv2.lo >= Rat(1000000) / denom_lo + rest - Rat(1, 1000000));
  CHECK(iv2.hi <= Rat(1000000) / denom_hi + rest + Rat(1, 1000000));
}

TEST_CASE("comparison agrees with exact integer comparison (fuzz)") {
  std::mt19937_64 rng(20260811);
  auto random_bound = [&](Int& exact) {
    Bound b;
    exact = 1;
    int nf = int(rng() % 4);
    for (int i = 0; i < nf; ++i) {
      Int base = Int(2 + long(rng() % 120));
      unsigned long e = 1 + rng() % 9;
      b *= Bound::power(base, e);
      exact *= int_pow(base, e);
    }
    Int mult = Int(1 + long(rng() % 10000));
    b *= Bound::from_int(mult);
    exact *= mult;
    return b;
  };
  for (int i = 0; i < 10000; ++i) {
    Int xa, xb;
    Bound a = random_bound(xa), b = random_bound(xb);
    int want = cmp(xa, xb) < 0 ? -1 : (xa == xb ? 0 : 1);
    CHECK(a.compare(b) == want);
    auto m = a.materialize(1000000);
    REQUIRE(m.ok);
    CHECK(m.value == xa);
  }
}

TEST_CASE("catalog formulas are monotone in each parameter") {
  std::mt19937_64 rng(7);
  for (const auto& entry : catalog_entries()) {
    if (entry.params.empty()) continue;
    for (int trial = 0; trial < 40; ++trial) {
      Params p;
      for (const auto& k : entry.params) {
        if (k == "chi" || k == "sum_chi")
          p[k] = -Int(long(rng() % 5));
        else
          p[k] = Int(1 + long(rng() % 8));
      }
      if (entry.name == "torus_slide_constant") {
        p["s"] = p["r"] + 1 + Int(long(rng() % 3));
      }
      Bound base;
      try {
        base = entry.eval(p);
      } catch (const BoundError&) {
        continue;
      }
      for (const auto& k : entry.params) {
        Params q = p;
        // bump in the direction that increases the formula's valid domain
        if (k == "chi" || k == "sum_chi")
          q[k] = p[k] - 1;
        else
          q[k] = p[k] + 1;
        Bound bumped;
        try {
          bumped = entry.eval(q);
        } catch (const BoundError&) {
          continue;
        }
        INFO(entry.name << " param " << k);
        CHECK(base.compare(bumped) <= 0);
      }
    }
  }
}

TEST_CASE("symbolic rendering and rational carriers") {
  Bound b = Bound::power(10, 3) * Bound::from_int(7);
  CHECK(b.str() == "10^3 * 7");
  Bound r = Bound::power(181, 2) * Bound::power(20, -2);
  auto m = r.materialize(100);
  REQUIRE(m.ok);
  CHECK(m.ceiled);
  CHECK(m.value == ceil_div(Int(181 * 181), Int(400)));
  CHECK_FALSE(r.integral());
  CHECK(b.integral());
}
