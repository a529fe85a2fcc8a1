#include "uhp/bttree.hpp"

#include <algorithm>
#include <map>

namespace uhp {

Vertex make_vertex(u64 p, int m, PRat b) {
    if (b.num == 0) return Vertex{m, PRat{0, 0}};
    int window = m + b.e;  // b is determined by num mod p^window
    if (window <= 0) return Vertex{m, PRat{0, 0}};
    if (window > 40) throw DomainError("vertex window too deep");
    i64 mod = static_cast<i64>(ipow(p, static_cast<unsigned>(window)));
    i64 num = ((b.num % mod) + mod) % mod;
    return Vertex{m, PRat::of(num, b.e, p)};
}

Vertex base_vertex() { return Vertex{0, PRat{0, 0}}; }

VKey vkey(const Vertex& v) { return {v.m, v.b.e, v.b.num}; }

bool vertex_eq(const Vertex& a, const Vertex& b) { return vkey(a) == vkey(b); }

Vertex vertex_parent(u64 p, const Vertex& v) { return make_vertex(p, v.m - 1, v.b); }

std::vector<Vertex> vertex_children(u64 p, const Vertex& v) {
    std::vector<Vertex> out;
    out.reserve(p);
    // child centres b + p^m r
    for (u64 r = 0; r < p; ++r) {
        PRat shift;
        if (v.m >= 0)
            shift = PRat::of(static_cast<i64>(r * ipow(p, static_cast<unsigned>(v.m))), 0, p);
        else
            shift = PRat::of(static_cast<i64>(r), -v.m, p);
        out.push_back(make_vertex(p, v.m + 1, prat_add(v.b, shift, p)));
    }
    return out;
}

std::vector<Vertex> vertex_neighbors(u64 p, const Vertex& v) {
    auto out = vertex_children(p, v);
    out.push_back(vertex_parent(p, v));
    return out;
}

int tree_distance(u64 p, const Vertex& u, const Vertex& v) {
    // transition matrix valuations: d = dm - 2 min(dm, vp(b_v - b_u) - m_u, 0)
    PRat diff = prat_sub(v.b, u.b, p);
    int dm = v.m - u.m;
    int vb = diff.is_zero() ? INT32_MAX : diff.valuation(p) - u.m;
    int mn = std::min({dm, vb, 0});
    return dm - 2 * mn;
}

std::vector<Vertex> tree_path(u64 p, const Vertex& u, const Vertex& v) {
    PRat diff = prat_sub(v.b, u.b, p);
    int meet = std::min(u.m, v.m);
    if (!diff.is_zero()) meet = std::min(meet, diff.valuation(p));
    std::vector<Vertex> up;
    Vertex cur = u;
    up.push_back(cur);
    while (cur.m > meet) {
        cur = vertex_parent(p, cur);
        up.push_back(cur);
    }
    std::vector<Vertex> down;
    Vertex curv = v;
    while (curv.m > meet) {
        down.push_back(curv);
        curv = vertex_parent(p, curv);
    }
    std::reverse(down.begin(), down.end());
    up.insert(up.end(), down.begin(), down.end());
    return up;
}

EKey ekey(const BoundaryEdge& e) { return {vkey(e.s), vkey(e.t)}; }

std::vector<BoundaryEdge> SubTree::boundary() const {
    std::vector<BoundaryEdge> out;
    for (const auto& v : verts)
        for (const auto& nb : vertex_neighbors(p, v))
            if (!contains(nb)) out.push_back(BoundaryEdge{v, nb});
    std::sort(out.begin(), out.end(),
              [](const BoundaryEdge& a, const BoundaryEdge& b) { return ekey(a) < ekey(b); });
    return out;
}

SubTree SubTree::ball(u64 p, int n) {
    SubTree t;
    t.p = p;
    std::vector<Vertex> frontier{base_vertex()};
    t.verts.push_back(base_vertex());
    t.keys.insert(vkey(base_vertex()));
    for (int depth = 0; depth < n; ++depth) {
        std::vector<Vertex> next;
        for (const auto& v : frontier)
            for (const auto& nb : vertex_neighbors(p, v))
                if (!t.keys.count(vkey(nb))) {
                    t.keys.insert(vkey(nb));
                    t.verts.push_back(nb);
                    next.push_back(nb);
                }
        frontier = std::move(next);
    }
    return t;
}

SubTree SubTree::double_ball(u64 p, int n) {
    SubTree t;
    t.p = p;
    Vertex s0 = base_vertex();
    Vertex ws0 = vertex_parent(p, s0);  // w s0 = (-1, 0)
    std::vector<Vertex> frontier{s0, ws0};
    for (const auto& v : frontier) {
        t.verts.push_back(v);
        t.keys.insert(vkey(v));
    }
    for (int depth = 0; depth < n; ++depth) {
        std::vector<Vertex> next;
        for (const auto& v : frontier)
            for (const auto& nb : vertex_neighbors(p, v))
                if (!t.keys.count(vkey(nb))) {
                    t.keys.insert(vkey(nb));
                    t.verts.push_back(nb);
                    next.push_back(nb);
                }
        frontier = std::move(next);
    }
    return t;
}

SubTree SubTree::of(u64 p, std::vector<Vertex> verts) {
    SubTree t;
    t.p = p;
    if (verts.empty()) throw DomainError("empty subtree");
    for (const auto& v : verts) {
        if (t.keys.count(vkey(v))) continue;
        t.keys.insert(vkey(v));
        t.verts.push_back(v);
    }
    std::set<VKey> seen{vkey(t.verts[0])};
    std::vector<Vertex> stack{t.verts[0]};
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (const auto& nb : vertex_neighbors(p, v))
            if (t.keys.count(vkey(nb)) && !seen.count(vkey(nb))) {
                seen.insert(vkey(nb));
                stack.push_back(nb);
            }
    }
    if (seen.size() != t.keys.size()) throw DomainError("subtree is not connected");
    return t;
}

Mat2 Mat2::from_int(const Ctx& ctx, i64 a, i64 b, i64 c, i64 d) {
    return Mat2{ctx->from_int(a), ctx->from_int(b), ctx->from_int(c), ctx->from_int(d)};
}

Mat2 Mat2::ident(const Ctx& ctx) { return from_int(ctx, 1, 0, 0, 1); }

Mat2 Mat2::mul(const Mat2& o) const {
    return Mat2{a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

PadicScalar Mat2::det() const { return a * d - b * c; }

Mat2 Mat2::inverse() const {
    PadicScalar dt = det();
    if (dt.is_zero()) throw DomainError("singular matrix");
    PadicScalar di = dt.inv();
    return Mat2{d * di, -b * di, -c * di, a * di};
}

PadicScalar Mat2::mobius(const PadicScalar& z) const {
    PadicScalar den = c * z + d;
    if (den.is_zero()) throw DomainError("Mobius pole");
    return (a * z + b) / den;
}

bool Mat2::entries_integral() const {
    for (const PadicScalar* x : {&a, &b, &c, &d})
        if (!x->is_zero() && x->valuation() < 0) return false;
    return true;
}

bool Mat2::in_gl2o() const {
    return entries_integral() && !det().is_zero() && det().valuation() == 0;
}

bool Mat2::in_iwahori() const {
    return in_gl2o() && (c.is_zero() || c.valuation() >= 1);
}

bool Mat2::in_g0() const { return !det().is_zero() && det().valuation() == 0; }

Mat2 weyl_w(const Ctx& ctx) { return Mat2::from_int(ctx, 0, 1, static_cast<i64>(ctx->p()), 0); }

Vertex act_vertex(const Mat2& g, const Vertex& v) {
    const Ctx& ctx = g.a.is_zero() ? (g.b.is_zero() ? g.c.ctx() : g.b.ctx()) : g.a.ctx();
    if (g.det().is_zero()) throw DomainError("act_vertex: singular matrix");
    u64 p = ctx->p();
    PadicScalar pm = ctx->from_rational(1, -v.m);
    PadicScalar bv = v.b.to_padic(ctx);
    // columns of g [[p^m, b],[0,1]]
    PadicScalar x1 = g.a * pm, y1 = g.c * pm;
    PadicScalar x2 = g.a * bv + g.b, y2 = g.c * bv + g.d;
    if (!y1.is_zero() && (y2.is_zero() || y1.valuation() <= y2.valuation())) {
        PadicScalar q = y2 / y1;
        x2 = x2 - q * x1;
        y2 = y2 - q * y1;  // cancels at the available precision
        std::swap(x1, x2);
        std::swap(y1, y2);
    } else if (!y1.is_zero()) {
        PadicScalar q = y1 / y2;
        x1 = x1 - q * x2;
        y1 = y1 - q * y2;
    }
    if (y1.is_zero() == y2.is_zero())
        throw PrecisionError("act_vertex: could not normalize lattice basis");
    if (!y1.is_zero()) {
        std::swap(x1, x2);
        std::swap(y1, y2);
    }
    if (x1.is_zero()) throw PrecisionError("act_vertex: degenerate column");
    PadicScalar top = x1 / y2;  // p^{m'} up to a unit
    PadicScalar bnew = x2 / y2;
    int mnew = top.valuation();
    return make_vertex(p, mnew, truncate_below(bnew, mnew));
}

BoundaryEdge act_boundary_edge(const Mat2& g, const SubTree& tree, const BoundaryEdge& e) {
    Vertex s2 = act_vertex(g, e.s);
    Vertex t2 = act_vertex(g, e.t);
    bool sin = tree.contains(s2), tin = tree.contains(t2);
    if (sin && !tin) return BoundaryEdge{s2, t2};
    if (tin && !sin) return BoundaryEdge{t2, s2};
    throw DomainError("edge image leaves the boundary of the subtree");
}

BoundaryEdge iota(const SubTree& big, const SubTree& small, const BoundaryEdge& e) {
    for (const auto& v : small.verts)
        if (!big.contains(v)) throw DomainError("iota: smaller subtree not contained");
    if (small.contains(e.t)) throw DomainError("iota: edge endpoint inside the smaller subtree");
    // walk from t toward the subtree; the first crossing is the image
    const Vertex target = small.verts.front();
    auto path = tree_path(big.p, e.t, target);
    for (size_t i = 0; i < path.size(); ++i) {
        if (small.contains(path[i])) {
            if (i == 0) throw DomainError("iota: path starts inside the subtree");
            return BoundaryEdge{path[i], path[i - 1]};
        }
    }
    throw Error("iota: path never reached the subtree");
}

std::vector<std::vector<int>> edge_orbits(const std::vector<Mat2>& gens, const SubTree& tree,
                                          const std::vector<BoundaryEdge>& edges) {
    std::map<EKey, int> index;
    for (size_t i = 0; i < edges.size(); ++i) index[ekey(edges[i])] = static_cast<int>(i);
    std::vector<int> owner(edges.size(), -1);
    std::vector<std::vector<int>> orbits;
    for (size_t start = 0; start < edges.size(); ++start) {
        if (owner[start] >= 0) continue;
        int id = static_cast<int>(orbits.size());
        std::vector<int> orb{static_cast<int>(start)};
        owner[start] = id;
        for (size_t head = 0; head < orb.size(); ++head) {
            for (const auto& g : gens) {
                BoundaryEdge img =
                    act_boundary_edge(g, tree, edges[static_cast<size_t>(orb[head])]);
                auto it = index.find(ekey(img));
                if (it == index.end())
                    throw DomainError("generator maps an edge outside the given edge set");
                if (owner[static_cast<size_t>(it->second)] < 0) {
                    owner[static_cast<size_t>(it->second)] = id;
                    orb.push_back(it->second);
                }
            }
        }
        std::sort(orb.begin(), orb.end());
        orbits.push_back(std::move(orb));
    }
    return orbits;
}

std::vector<int> edge_permutation(const Mat2& g, const SubTree& tree,
                                  const std::vector<BoundaryEdge>& edges) {
    std::map<EKey, int> index;
    for (size_t i = 0; i < edges.size(); ++i) index[ekey(edges[i])] = static_cast<int>(i);
    std::vector<int> perm(edges.size());
    for (size_t i = 0; i < edges.size(); ++i) {
        BoundaryEdge img = act_boundary_edge(g, tree, edges[i]);
        auto it = index.find(ekey(img));
        if (it == index.end()) throw DomainError("edge image not in the edge list");
        perm[i] = it->second;
    }
    return perm;
}

std::vector<Mat2> gl2o_generators(const Ctx& ctx) {
    std::vector<Mat2> gens;
    gens.push_back(Mat2::from_int(ctx, 0, 1, 1, 0));  // Weyl reflection
    gens.push_back(Mat2::from_int(ctx, 1, 1, 0, 1));
    gens.push_back(Mat2::from_int(ctx, 1, 0, 1, 1));
    i64 p = static_cast<i64>(ctx->p());
    gens.push_back(Mat2::from_int(ctx, 1 + p, 0, 0, 1));
    gens.push_back(Mat2::from_int(ctx, 1, 0, 0, 1 + p));
    if (ctx->p() > 2) {
        PadicScalar zf = ctx->zeta_f();
        gens.push_back(Mat2{zf, ctx->zero(), ctx->zero(), ctx->one()});
        gens.push_back(Mat2{ctx->one(), ctx->zero(), ctx->zero(), zf});
    }
    return gens;
}

std::vector<Mat2> iwahori_generators(const Ctx& ctx) {
    std::vector<Mat2> gens;
    i64 p = static_cast<i64>(ctx->p());
    gens.push_back(Mat2::from_int(ctx, 1, 1, 0, 1));
    gens.push_back(Mat2::from_int(ctx, 1, 0, p, 1));
    gens.push_back(Mat2::from_int(ctx, 1 + p, 0, 0, 1));
    gens.push_back(Mat2::from_int(ctx, 1, 0, 0, 1 + p));
    if (ctx->p() > 2) {
        PadicScalar zf = ctx->zeta_f();
        gens.push_back(Mat2{zf, ctx->zero(), ctx->zero(), ctx->one()});
        gens.push_back(Mat2{ctx->one(), ctx->zero(), ctx->zero(), zf});
    }
    return gens;
}

}  // namespace uhp
