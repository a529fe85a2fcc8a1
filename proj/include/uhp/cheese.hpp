#pragma once

#include <tuple>
#include <vector>

#include "uhp/bttree.hpp"
#include "uhp/padic.hpp"

namespace uhp {

// Open disc in P^1: interior {|z - c| < |p|^m} or exterior
// {|z - c| > |p|^m} together with infinity.
struct Disc {
    bool exterior = false;
    PadicScalar center;
    int m = 0;
};

// Canonical key: the centre only matters modulo the radius window.
using DKey = std::tuple<int, int, int, i64>;
DKey dkey(const Disc& d);
bool disc_eq(const Disc& a, const Disc& b);

bool disc_contains_point(const Disc& d, const PadicScalar& z);
bool disc_subset(const Disc& a, const Disc& b);
bool discs_disjoint(const Disc& a, const Disc& b);

// Exact image of an open P^1-disc under a Mobius transformation.
Disc mobius_disc(const Mat2& g, const Disc& d);

// Cheese: the affinoid cut out of P^1 by removing finitely many pairwise
// disjoint open discs, exactly one of which contains infinity.
struct CheeseRegion {
    std::vector<Disc> holes;

    void validate() const;
    int exterior_index() const;
    bool contains(const PadicScalar& z) const;
    // index of the hole containing z, or -1
    int hole_containing(const PadicScalar& z) const;
};

// The hole of C_T cut out by a boundary edge: going deeper removes the open
// ball around the outside centre, going shallower removes the complement of
// the subtree's root ball.
Disc hole_of_edge(const Ctx& ctx, const BoundaryEdge& e);

// Subtree with its cheese; hole i corresponds to edges[i].
struct TreeCheese {
    SubTree tree;
    std::vector<BoundaryEdge> edges;
    CheeseRegion region;
};
TreeCheese tree_cheese(const Ctx& ctx, SubTree t);

// The hole of Y containing phi^{-1}(D), for phi with phi(Y) inside X.
// Containment is verified on hole data; with phi = id this is iota^X_Y.
int iota_cheese(const CheeseRegion& x, const CheeseRegion& y, const Mat2& phi, int hole_x);

}  // namespace uhp
