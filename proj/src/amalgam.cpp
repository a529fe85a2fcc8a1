#include "uhp/amalgam.hpp"

#include <algorithm>

namespace uhp {

AmalgamContext amalgam_context(const Ctx& ctx) {
    AmalgamContext ac;
    ac.ctx = ctx;
    ac.w = weyl_w(ctx);
    // lower unipotents over nonzero Teichmuller lifts, in power order,
    // then the Weyl reflection
    PadicScalar zf = ctx->zeta_f();
    PadicScalar tau = ctx->one();
    for (u64 i = 0; i + 1 < ctx->q(); ++i) {
        ac.reps_a.push_back(Mat2{ctx->one(), ctx->zero(), tau, ctx->one()});
        tau = tau * zf;
    }
    ac.reps_a.push_back(Mat2::from_int(ctx, 0, 1, 1, 0));
    Mat2 winv = ac.w.inverse();
    for (const auto& r : ac.reps_a) ac.reps_b.push_back(ac.w.mul(r).mul(winv));
    return ac;
}

int edge_displacement(const Ctx& ctx, const Mat2& g) {
    u64 p = ctx->p();
    Vertex s0 = base_vertex();
    Vertex ws0 = vertex_parent(p, s0);
    int d1 = tree_distance(p, act_vertex(g, s0), s0);
    int d2 = tree_distance(p, act_vertex(g, ws0), ws0);
    if ((d1 + d2) % 2 != 0) throw Error("odd edge displacement");
    return (d1 + d2) / 2;
}

AmalgamWord amalgam_decompose(const AmalgamContext& ac, const Mat2& g, int max_len) {
    if (!g.in_g0()) throw DomainError("decompose needs det of valuation 0");
    AmalgamWord word;
    Mat2 cur = g;
    int dist = edge_displacement(ac.ctx, cur);
    int last_side = -1;  // 0 = A, 1 = B, -1 = start
    while (dist > 0) {
        if (static_cast<int>(word.factors.size()) >= max_len)
            throw PrecisionError("decompose: word length exceeds the budget");
        bool progressed = false;
        for (int side = 0; side < 2 && !progressed; ++side) {
            if (last_side == side) continue;  // factors alternate
            const auto& reps = side == 0 ? ac.reps_a : ac.reps_b;
            for (size_t i = 0; i < reps.size(); ++i) {
                Mat2 nxt = reps[i].inverse().mul(cur);
                int nd = edge_displacement(ac.ctx, nxt);
                if (nd < dist) {
                    word.factors.push_back({side == 0, static_cast<int>(i)});
                    cur = nxt;
                    dist = nd;
                    last_side = side;
                    progressed = true;
                    break;
                }
            }
        }
        if (!progressed) throw Error("decompose: no factor reduces the displacement");
    }
    if (!cur.in_iwahori()) throw Error("decompose: trailing element is not Iwahori");
    word.tail = cur;
    return word;
}

Mat2 amalgam_multiply(const AmalgamContext& ac, const AmalgamWord& word) {
    Mat2 g = word.tail;
    for (auto it = word.factors.rbegin(); it != word.factors.rend(); ++it) {
        const auto& reps = it->a_side ? ac.reps_a : ac.reps_b;
        g = reps[static_cast<size_t>(it->rep)].mul(g);
    }
    return g;
}

bool mat_eq(const Mat2& a, const Mat2& b) {
    auto eq = [](const PadicScalar& x, const PadicScalar& y) {
        if (x.is_zero() || y.is_zero()) return x.is_zero() == y.is_zero();
        return x.same_class(y);
    };
    return eq(a.a, b.a) && eq(a.b, b.b) && eq(a.c, b.c) && eq(a.d, b.d);
}

PadicScalar extend_cocycle_eval(const AmalgamContext& ac, const CocycleEval& c_a,
                                const CocycleEval& c_b, const Mat2& g, const PadicScalar& z) {
    AmalgamWord word = amalgam_decompose(ac, g);
    PadicScalar val = ac.ctx->one();
    PadicScalar zz = z;
    for (const auto& f : word.factors) {
        const Mat2& r = (f.a_side ? ac.reps_a : ac.reps_b)[static_cast<size_t>(f.rep)];
        val = val * (f.a_side ? c_a : c_b)(r, zz);
        zz = r.inverse().mobius(zz);
    }
    val = val * c_a(word.tail, zz);
    return val;
}

void check_i_agreement(const AmalgamContext& ac, const CocycleEval& c_a, const CocycleEval& c_b,
                       const std::vector<Mat2>& i_samples, const std::vector<PadicScalar>& grid,
                       int digits) {
    (void)ac;
    for (size_t gi = 0; gi < i_samples.size(); ++gi) {
        if (!i_samples[gi].in_iwahori()) throw DomainError("I-agreement sample is not Iwahori");
        for (size_t zi = 0; zi < grid.size(); ++zi) {
            PadicScalar va = c_a(i_samples[gi], grid[zi]);
            PadicScalar vb = c_b(i_samples[gi], grid[zi]);
            if (!agree_to(va, vb, digits))
                throw DomainError("cocycle data disagree on I at sample (g " +
                                  std::to_string(gi) + ", z " + std::to_string(zi) + ")");
        }
    }
}

PadicScalar norm_solve(const Ctx& ctx, const PadicScalar& t) {
    if (t.is_zero() || t.valuation() != 0 || !t.in_base_field())
        throw DomainError("norm_solve needs a unit of O_F");
    // Teichmuller part: t-hat = zeta_F^j = N(zeta^j)
    PadicScalar that = t.teichmuller();
    PadicScalar zf = ctx->zeta_f();
    i64 j = -1;
    PadicScalar cur = ctx->one();
    for (u64 k = 0; k < ctx->q() - 1 || k == 0; ++k) {
        if (cur.same_class(that)) {
            j = static_cast<i64>(k);
            break;
        }
        cur = cur * zf;
    }
    if (j < 0) throw Error("norm_solve: Teichmuller discrete log failed");
    PadicScalar x = ctx->zeta().pow(j);
    // principal part by trace-guided iteration: theta with tr(theta) = 1
    PadicScalar tg = ctx->t_gen();
    PadicScalar theta = tg / tg.trace();
    PadicScalar target = t / x.norm();
    PadicScalar y = ctx->one();
    for (int i = 0; i < ctx->precision() + 2; ++i) {
        PadicScalar s = target / y.norm() - ctx->one();
        if (s.is_zero()) break;
        y = y * (ctx->one() + s * theta);
    }
    return x * y;
}

}  // namespace uhp
