#include "uhp/cheese.hpp"

#include <algorithm>

namespace uhp {

DKey dkey(const Disc& d) {
    int window = d.exterior ? d.m : d.m + 1;
    PRat c = truncate_below(d.center, window);
    return {d.exterior ? 1 : 0, d.m, c.e, c.num};
}

bool disc_eq(const Disc& a, const Disc& b) { return dkey(a) == dkey(b); }

namespace {
// valuation of z - c; INT32_MAX when the difference vanishes at precision
int diff_val(const PadicScalar& z, const PadicScalar& c) {
    PadicScalar d = z - c;
    return d.is_zero() ? INT32_MAX : d.valuation();
}
}  // namespace

bool disc_contains_point(const Disc& d, const PadicScalar& z) {
    int v = diff_val(z, d.center);
    return d.exterior ? v < d.m : v > d.m;
}

bool disc_subset(const Disc& a, const Disc& b) {
    int v = diff_val(a.center, b.center);
    if (!a.exterior && !b.exterior)
        return a.m >= b.m && v > b.m;
    if (!a.exterior && b.exterior)  // open ball inside the complement of a closed ball
        return v <= std::min(a.m, b.m - 1) && v != INT32_MAX;
    if (a.exterior && b.exterior)  // closed ball of b contains closed ball of a
        return b.m >= a.m && v >= a.m;
    return false;  // an exterior disc contains infinity, an interior one does not
}

bool discs_disjoint(const Disc& a, const Disc& b) {
    if (a.exterior && b.exterior) return false;
    if (a.exterior != b.exterior) {
        const Disc& in = a.exterior ? b : a;
        const Disc& ex = a.exterior ? a : b;
        return disc_subset(in, Disc{false, ex.center, ex.m - 1});  // inside the closed ball
    }
    int v = diff_val(a.center, b.center);
    return v <= std::min(a.m, b.m) && v != INT32_MAX;
}

namespace {

Disc affine_image(const PadicScalar& alpha, const PadicScalar& beta, Disc d) {
    if (alpha.is_zero()) throw DomainError("degenerate affine map");
    d.center = alpha * d.center + beta;
    d.m += alpha.valuation();
    return d;
}

Disc invert_disc(const Ctx& ctx, const Disc& d) {
    int vc = d.center.is_zero() ? INT32_MAX : d.center.valuation();
    if (!d.exterior) {
        if (vc < d.m) return Disc{false, d.center.inv(), d.m - 2 * vc};
        if (vc == d.m) return Disc{false, d.center.inv(), -d.m};
        return Disc{true, ctx->zero(), -d.m};  // the ball contains 0
    }
    if (vc < d.m) return Disc{true, d.center.inv(), d.m - 2 * vc};
    return Disc{false, ctx->zero(), -d.m};  // the closed ball is centred at 0
}

}  // namespace

Disc mobius_disc(const Mat2& g, const Disc& d) {
    PadicScalar dt = g.det();
    if (dt.is_zero()) throw DomainError("mobius_disc: singular matrix");
    if (g.c.is_zero()) return affine_image(g.a / g.d, g.b / g.d, d);
    const Ctx& ctx = g.c.ctx();
    Disc e = affine_image(g.c, g.d, d);
    e = invert_disc(ctx, e);
    return affine_image(-dt / g.c, g.a / g.c, e);
}

void CheeseRegion::validate() const {
    int ext = 0;
    for (const auto& h : holes) ext += h.exterior ? 1 : 0;
    if (ext != 1) throw DomainError("cheese must have exactly one exterior hole");
    for (size_t i = 0; i < holes.size(); ++i)
        for (size_t j = i + 1; j < holes.size(); ++j)
            if (!discs_disjoint(holes[i], holes[j]))
                throw DomainError("cheese holes overlap");
}

int CheeseRegion::exterior_index() const {
    for (size_t i = 0; i < holes.size(); ++i)
        if (holes[i].exterior) return static_cast<int>(i);
    throw DomainError("no exterior hole");
}

bool CheeseRegion::contains(const PadicScalar& z) const {
    return hole_containing(z) < 0;
}

int CheeseRegion::hole_containing(const PadicScalar& z) const {
    for (size_t i = 0; i < holes.size(); ++i)
        if (disc_contains_point(holes[i], z)) return static_cast<int>(i);
    return -1;
}

Disc hole_of_edge(const Ctx& ctx, const BoundaryEdge& e) {
    if (e.t.m == e.s.m + 1)
        return Disc{false, e.t.b.to_padic(ctx), e.s.m};
    if (e.t.m == e.s.m - 1)
        return Disc{true, e.s.b.to_padic(ctx), e.s.m};
    throw DomainError("not a tree edge");
}

TreeCheese tree_cheese(const Ctx& ctx, SubTree t) {
    TreeCheese tc;
    tc.edges = t.boundary();
    tc.tree = std::move(t);
    for (const auto& e : tc.edges) tc.region.holes.push_back(hole_of_edge(ctx, e));
    tc.region.validate();
    return tc;
}

int iota_cheese(const CheeseRegion& x, const CheeseRegion& y, const Mat2& phi, int hole_x) {
    // phi(Y) inside X at hole level: every hole of X lies inside some phi(hole of Y)
    std::vector<Disc> images;
    images.reserve(y.holes.size());
    for (const auto& h : y.holes) images.push_back(mobius_disc(phi, h));
    for (const auto& hx : x.holes) {
        bool covered = false;
        for (const auto& im : images) covered = covered || disc_subset(hx, im);
        if (!covered) throw DomainError("iota_cheese: phi(Y) is not contained in X");
    }
    // holes are pairwise disjoint, so the containing hole is unique
    Disc pre = mobius_disc(phi.inverse(), x.holes[static_cast<size_t>(hole_x)]);
    for (size_t i = 0; i < y.holes.size(); ++i)
        if (disc_subset(pre, y.holes[i])) return static_cast<int>(i);
    throw DomainError("iota_cheese: preimage not inside any hole");
}

}  // namespace uhp
