#pragma once

#include <set>
#include <tuple>
#include <vector>

#include "uhp/padic.hpp"

namespace uhp {

// Vertex of the Bruhat-Tits tree of PGL_2(F): the homothety class of the
// lattice with column basis [[p^m, b],[0,1]], equivalently the closed ball
// B(b, |p|^m) in F. The centre b is an exact rational num/p^e reduced
// mod p^m, so equal classes have identical encodings.
struct Vertex {
    int m = 0;
    PRat b{};
};

using VKey = std::tuple<int, int, i64>;  // (m, e, num)

Vertex make_vertex(u64 p, int m, PRat b);
Vertex base_vertex();  // s0, the vertex fixed by GL_2(O)
VKey vkey(const Vertex& v);
bool vertex_eq(const Vertex& a, const Vertex& b);

Vertex vertex_parent(u64 p, const Vertex& v);
std::vector<Vertex> vertex_children(u64 p, const Vertex& v);
std::vector<Vertex> vertex_neighbors(u64 p, const Vertex& v);

// Tree metric from the elementary divisors of the transition matrix.
int tree_distance(u64 p, const Vertex& u, const Vertex& v);
// Geodesic from u to v, inclusive of both ends.
std::vector<Vertex> tree_path(u64 p, const Vertex& u, const Vertex& v);

// Edge with exactly one endpoint in a subtree: s inside, t outside.
struct BoundaryEdge {
    Vertex s, t;
};

using EKey = std::pair<VKey, VKey>;
EKey ekey(const BoundaryEdge& e);

struct SubTree {
    u64 p = 2;
    std::vector<Vertex> verts;
    std::set<VKey> keys;

    bool contains(const Vertex& v) const { return keys.count(vkey(v)) > 0; }
    std::vector<BoundaryEdge> boundary() const;  // N(T), deterministic order

    static SubTree ball(u64 p, int n);         // T_n: distance <= n from s0
    static SubTree double_ball(u64 p, int n);  // S_n: <= n from s0 or w s0
    static SubTree of(u64 p, std::vector<Vertex> verts);  // validated connected
};

// 2x2 matrix over F at working precision.
struct Mat2 {
    PadicScalar a, b, c, d;

    static Mat2 from_int(const Ctx& ctx, i64 a, i64 b, i64 c, i64 d);
    static Mat2 ident(const Ctx& ctx);
    Mat2 mul(const Mat2& o) const;
    Mat2 inverse() const;
    PadicScalar det() const;
    // (az + b) / (cz + d)
    PadicScalar mobius(const PadicScalar& z) const;

    bool entries_integral() const;  // all in O
    bool in_gl2o() const;           // integral with unit determinant
    bool in_iwahori() const;        // in GL_2(O) with c = 0 mod p
    bool in_g0() const;             // det of valuation 0
};

Mat2 weyl_w(const Ctx& ctx);  // [[0,1],[p,0]]

// Class of g * (lattice of v), by column reduction over O and homothety
// normalization.
Vertex act_vertex(const Mat2& g, const Vertex& v);

// Image of a boundary edge, re-oriented so s stays inside T. Throws if the
// image leaves T x complement(T).
BoundaryEdge act_boundary_edge(const Mat2& g, const SubTree& tree, const BoundaryEdge& e);

// iota^T_{T'}: the unique boundary edge of T' whose outside path from e
// avoids T' (Definition of the neighbourhood maps).
BoundaryEdge iota(const SubTree& big, const SubTree& small, const BoundaryEdge& e);

// Orbit partition of the given boundary edges under the generator closure.
std::vector<std::vector<int>> edge_orbits(const std::vector<Mat2>& gens, const SubTree& tree,
                                          const std::vector<BoundaryEdge>& edges);

// The permutation i -> index of g.e_i, for transporting group actions to
// measure modules on boundary/hole sets.
std::vector<int> edge_permutation(const Mat2& g, const SubTree& tree,
                                  const std::vector<BoundaryEdge>& edges);

std::vector<Mat2> gl2o_generators(const Ctx& ctx);
std::vector<Mat2> iwahori_generators(const Ctx& ctx);

}  // namespace uhp
