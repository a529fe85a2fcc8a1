#include "doctest.h"

#include <random>
#include <set>

#include "uhp/cheese.hpp"

using namespace uhp;

namespace {

Mat2 random_gl2o(const Ctx& ctx, std::mt19937_64& rng) {
    std::uniform_int_distribution<i64> d(0, static_cast<i64>(ctx->pk(8)) - 1);
    for (;;) {
        Mat2 g = Mat2::from_int(ctx, d(rng), d(rng), d(rng), d(rng));
        if (g.in_gl2o()) return g;
    }
}

}  // namespace

TEST_CASE("Omega_0 has the expected holes") {
    for (u64 q : {2ull, 3ull, 5ull}) {
        auto ctx = PadicContext::create(q);
        auto tc = tree_cheese(ctx, SubTree::ball(q, 0));
        REQUIRE(tc.region.holes.size() == q + 1);
        std::set<DKey> keys;
        for (const auto& h : tc.region.holes) keys.insert(dkey(h));
        std::set<DKey> expected;
        expected.insert(dkey(Disc{true, ctx->zero(), 0}));  // {|z| > 1}
        for (u64 r = 0; r < q; ++r)
            expected.insert(dkey(Disc{false, ctx->from_int(static_cast<i64>(r)), 0}));
        CHECK(keys == expected);
        tc.region.validate();
    }
}

TEST_CASE("membership: zeta in Omega_0, 0 outside, p zeta moves to Omega_1") {
    for (u64 q : {2ull, 3ull}) {
        auto ctx = PadicContext::create(q);
        auto om0 = tree_cheese(ctx, SubTree::ball(q, 0)).region;
        auto om1 = tree_cheese(ctx, SubTree::ball(q, 1)).region;
        auto zeta = ctx->zeta();
        CHECK(om0.contains(zeta));
        CHECK_FALSE(om0.contains(ctx->zero()));
        CHECK_FALSE(om0.contains(ctx->one()));
        auto pz = ctx->from_int(static_cast<i64>(q)) * zeta;
        CHECK_FALSE(om0.contains(pz));
        CHECK(om1.contains(pz));
        CHECK(om1.contains(zeta));
    }
}

TEST_CASE("mobius_disc: identity, translation, inversion") {
    auto ctx = PadicContext::create(3);
    Disc d{false, ctx->from_int(4), 1};
    CHECK(disc_eq(mobius_disc(Mat2::ident(ctx), d), d));
    // translation shifts the centre, keeps the radius
    auto shifted = mobius_disc(Mat2::from_int(ctx, 1, 1, 0, 1), d);
    CHECK(shifted.m == d.m);
    CHECK(disc_eq(shifted, Disc{false, ctx->from_int(5), 1}));
    // inversion of {|z - [a]| < 1}, |[a]| = 1: disc centred at [a]^{-1}, radius 1
    auto a = ctx->from_int(2).teichmuller();
    Disc unit{false, a, 0};
    auto inv = mobius_disc(Mat2::from_int(ctx, 0, 1, 1, 0), unit);
    CHECK_FALSE(inv.exterior);
    CHECK(inv.m == 0);
    CHECK((inv.center - a.inv()).is_zero());
}

TEST_CASE("mobius_disc agrees with pointwise mapping") {
    for (u64 q : {2ull, 3ull}) {
        auto ctx = PadicContext::create(q);
        std::mt19937_64 rng(q * 101);
        auto zeta = ctx->zeta();
        std::uniform_int_distribution<i64> ci(-20, 20);
        std::uniform_int_distribution<int> cm(-2, 2);
        for (int iter = 0; iter < 40; ++iter) {
            Disc d{iter % 2 == 1, ctx->from_int(ci(rng)), cm(rng)};
            auto g = random_gl2o(ctx, rng);
            if (iter % 5 == 0) g = g.mul(weyl_w(ctx));
            Disc im = mobius_disc(g, d);
            // sample points of d: centre + scaled zeta and teichmuller shifts
            for (int k = 0; k < 6; ++k) {
                PadicScalar z =
                    d.center +
                    ctx->from_rational(1 + k, d.exterior ? -(d.m - 1 - k) : -(d.m + 1 + k)) *
                        (k % 2 ? zeta : ctx->one());
                if (!disc_contains_point(d, z)) continue;
                PadicScalar den = g.c * z + g.d;
                if (den.is_zero()) continue;  // z maps to infinity: must be an exterior image
                CHECK(disc_contains_point(im, g.mobius(z)));
            }
            // points on the bounding sphere stay outside the image
            PadicScalar boundary = d.center + ctx->from_rational(1, -d.m) * zeta;
            CHECK_FALSE(disc_contains_point(d, boundary));
            PadicScalar den = g.c * boundary + g.d;
            if (!den.is_zero()) CHECK_FALSE(disc_contains_point(im, g.mobius(boundary)));
        }
    }
}

TEST_CASE("hole counts |h(C_Tn)| = (q+1)q^n and equivariance on S_0") {
    for (u64 q : {2ull, 3ull}) {
        auto ctx = PadicContext::create(q);
        for (int n = 0; n <= 2; ++n) {
            auto tc = tree_cheese(ctx, SubTree::ball(q, n));
            CHECK(tc.region.holes.size() == (q + 1) * ipow(q, static_cast<unsigned>(n)));
            tc.region.validate();
        }
        // hole(w e) = w . hole(e) on the double ball S_0
        auto s0 = tree_cheese(ctx, SubTree::double_ball(q, 0));
        auto w = weyl_w(ctx);
        for (const auto& e : s0.edges) {
            auto we = act_boundary_edge(w, s0.tree, e);
            CHECK(dkey(hole_of_edge(ctx, we)) == dkey(mobius_disc(w, hole_of_edge(ctx, e))));
        }
    }
}

TEST_CASE("tree iota and cheese iota commute with the hole bijection") {
    for (u64 q : {2ull, 3ull}) {
        auto ctx = PadicContext::create(q);
        auto big = tree_cheese(ctx, SubTree::ball(q, 1));
        auto small = tree_cheese(ctx, SubTree::ball(q, 0));
        for (size_t i = 0; i < big.edges.size(); ++i) {
            auto f = iota(big.tree, small.tree, big.edges[i]);
            int viatree = -1;
            for (size_t j = 0; j < small.edges.size(); ++j)
                if (ekey(small.edges[j]) == ekey(f)) viatree = static_cast<int>(j);
            REQUIRE(viatree >= 0);
            int viacheese =
                iota_cheese(big.region, small.region, Mat2::ident(ctx), static_cast<int>(i));
            CHECK(viacheese == viatree);
        }
    }
}

TEST_CASE("holes of a union are the nonempty pairwise intersections") {
    for (u64 q : {2ull, 3ull}) {
        auto ctx = PadicContext::create(q);
        auto w = weyl_w(ctx);
        auto t1 = SubTree::ball(q, 1);
        auto x = tree_cheese(ctx, t1);
        // Y = w . X, union = C_{S_1}
        std::vector<Disc> yholes;
        for (const auto& h : x.region.holes) yholes.push_back(mobius_disc(w, h));
        auto uni = tree_cheese(ctx, SubTree::double_ball(q, 1));
        std::set<DKey> expected;
        for (const auto& a : x.region.holes)
            for (const auto& b : yholes) {
                if (discs_disjoint(a, b)) continue;
                // overlapping discs are nested; the intersection is the smaller
                if (disc_subset(a, b))
                    expected.insert(dkey(a));
                else if (disc_subset(b, a))
                    expected.insert(dkey(b));
                else
                    FAIL("overlapping discs must be nested");
            }
        std::set<DKey> actual;
        for (const auto& h : uni.region.holes) actual.insert(dkey(h));
        CHECK(actual == expected);
    }
}

TEST_CASE("contains is invariant under the group action") {
    for (u64 q : {2ull, 3ull}) {
        auto ctx = PadicContext::create(q);
        std::mt19937_64 rng(q * 7);
        auto om1 = tree_cheese(ctx, SubTree::ball(q, 1)).region;
        auto zeta = ctx->zeta();
        std::vector<PadicScalar> pts{zeta, zeta + ctx->one(),
                                     ctx->from_int(static_cast<i64>(q)) * zeta,
                                     zeta.inv(), ctx->from_int(3) * zeta + ctx->from_int(2)};
        for (int iter = 0; iter < 15; ++iter) {
            auto g = random_gl2o(ctx, rng);
            CheeseRegion gx;
            for (const auto& h : om1.holes) gx.holes.push_back(mobius_disc(g, h));
            for (const auto& z : pts) {
                PadicScalar den = g.c * z + g.d;
                if (den.is_zero()) continue;
                CHECK(gx.contains(g.mobius(z)) == om1.contains(z));
            }
        }
    }
}

TEST_CASE("iota_cheese: identity on X = Y, rejection when phi(Y) leaves X") {
    auto ctx = PadicContext::create(3);
    auto om0 = tree_cheese(ctx, SubTree::ball(3, 0)).region;
    auto om1 = tree_cheese(ctx, SubTree::ball(3, 1)).region;
    for (int i = 0; i < static_cast<int>(om1.holes.size()); ++i)
        CHECK(iota_cheese(om1, om1, Mat2::ident(ctx), i) == i);
    // Omega_1 is larger than Omega_0, so id(Omega_1) is not inside Omega_0
    CHECK_THROWS_AS(iota_cheese(om0, om1, Mat2::ident(ctx), 0), DomainError);
}
