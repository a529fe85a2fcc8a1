#include "uhp/cocycle.hpp"

#include <algorithm>
#include <random>

namespace uhp {

CocycleData CocycleData::times(const CocycleData& o) const {
    CocycleData r = *this;
    r.atoms.insert(r.atoms.end(), o.atoms.begin(), o.atoms.end());
    return r;
}

CocycleData CocycleData::powered(i64 k) const {
    if (k == 0) return CocycleData{};
    CocycleData r = *this;
    for (auto& a : r.atoms) a.exp *= k;
    return r;
}

CocycleData trivial_cocycle() { return CocycleData{}; }

CocycleData j_cocycle(i64 k) {
    CocycleAtom a;
    a.type = CocycleAtom::J;
    a.exp = k;
    return CocycleData{{a}};
}

CocycleData coboundary_cocycle(const UnitClass& u) {
    CocycleAtom a;
    a.type = CocycleAtom::COB;
    a.exp = 1;
    a.u = u;
    return CocycleData{{a}};
}

CocycleData character_twist(i64 k) {
    CocycleAtom a;
    a.type = CocycleAtom::CHI;
    a.exp = 1;
    a.chi_k = k;
    return CocycleData{{a}};
}

CocycleData root_cocycle(const UnitClass& u, i64 d, i64 e, i64 qn) {
    CocycleAtom a;
    a.type = CocycleAtom::ROOT;
    a.exp = 1;
    a.u = u;
    a.d = d;
    a.e = e;
    a.qn = qn;
    return CocycleData{{a}};
}

UnitClass j_unit(const Mat2& g) {
    if (!g.in_gl2o()) throw DomainError("j is defined on GL_2(O)");
    const Ctx& ctx = g.a.ctx();
    if (g.c.is_zero()) return UnitClass::constant(g.a);
    // a - c x = (-c)(x - a/c)
    return UnitClass::constant(-g.c).times(UnitClass::monomial(g.a / g.c, 1));
}

namespace {

PadicScalar eta_point_eval(const CocycleAtom& atom, const Mat2& g, const PadicScalar& z) {
    // eta = delta(u) j^{-qn d}
    PadicScalar jz = g.a - g.c * z;
    PadicScalar num = unit_eval(atom.u, g.inverse().mobius(z));
    PadicScalar den = unit_eval(atom.u, z);
    return num / den * jz.pow(-atom.qn * atom.d);
}

}  // namespace

UnitClass cocycle_class_eval(const CocycleData& c, const Mat2& g) {
    const Ctx& ctx = g.a.is_zero() ? g.b.ctx() : g.a.ctx();
    UnitClass r = UnitClass::one(ctx);
    for (const auto& atom : c.atoms) {
        switch (atom.type) {
            case CocycleAtom::J:
                r = r.times(j_unit(g).powered(atom.exp));
                break;
            case CocycleAtom::COB:
                r = r.times(unit_pullback(g, atom.u).times(atom.u.inverse()).powered(atom.exp));
                break;
            case CocycleAtom::CHI:
                r = r.times(UnitClass::constant(g.det().teichmuller().pow(atom.chi_k)).powered(atom.exp));
                break;
            case CocycleAtom::ROOT:
                // small-unit valued: trivial at class level
                break;
        }
    }
    return r;
}

PadicScalar cocycle_point_eval(const CocycleData& c, const Mat2& g, const PadicScalar& z) {
    const Ctx& ctx = g.a.is_zero() ? g.b.ctx() : g.a.ctx();
    PadicScalar r = ctx->one();
    for (const auto& atom : c.atoms) {
        switch (atom.type) {
            case CocycleAtom::J: {
                if (!g.in_gl2o()) throw DomainError("j is defined on GL_2(O)");
                r = r * (g.a - g.c * z).pow(atom.exp);
                break;
            }
            case CocycleAtom::COB: {
                PadicScalar num = unit_eval(atom.u, g.inverse().mobius(z));
                PadicScalar den = unit_eval(atom.u, z);
                r = r * (num / den).pow(atom.exp);
                break;
            }
            case CocycleAtom::CHI:
                r = r * g.det().teichmuller().pow(atom.chi_k * atom.exp);
                break;
            case CocycleAtom::ROOT: {
                PadicScalar eta = eta_point_eval(atom, g, z);
                PadicScalar gamma = eta.pow(atom.e).root_small_unit(
                    static_cast<u64>(atom.d) * static_cast<u64>(atom.e));
                r = r * gamma.pow(atom.exp);
                break;
            }
        }
    }
    return r;
}

Mat2 stabilizer_matrix(const PadicScalar& z, const PadicScalar& a, const PadicScalar& c) {
    PadicScalar n = z.norm(), tr = z.trace();
    return Mat2{a, -(c * n), c, a - c * tr};
}

PadicScalar phi_z_eval(const CocycleData& alpha, const Mat2& g, const PadicScalar& z) {
    PadicScalar moved = g.mobius(z) - z;
    if (!moved.is_zero()) throw DomainError("phi_z: the element does not stabilize z");
    return cocycle_point_eval(alpha, g, z).teichmuller();
}

namespace {

std::vector<Mat2> sample_elements(const Ctx& ctx, int count, u64 seed, bool iwahori) {
    std::vector<Mat2> out;
    i64 p = static_cast<i64>(ctx->p());
    out.push_back(Mat2::from_int(ctx, 1, 1, 0, 1));
    out.push_back(Mat2::from_int(ctx, 1, 0, iwahori ? p : 1, 1));
    if (ctx->p() > 2) {
        PadicScalar zf = ctx->zeta_f();
        out.push_back(Mat2{zf, ctx->zero(), ctx->zero(), ctx->one()});
        out.push_back(Mat2{ctx->one(), ctx->zero(), ctx->zero(), zf});
    }
    if (!iwahori) {
        out.push_back(Mat2::from_int(ctx, 0, 1, 1, 0));
        // a w-conjugate of an upper unipotent that stays integral
        out.push_back(Mat2::from_int(ctx, 1, 0, p, 1));
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<i64> d(0, static_cast<i64>(ctx->modulus() - 1));
    while (static_cast<int>(out.size()) < count) {
        i64 c = d(rng);
        if (iwahori) c -= c % p;
        Mat2 g = Mat2::from_int(ctx, d(rng), d(rng), c, d(rng));
        if (iwahori ? g.in_iwahori() : g.in_gl2o()) out.push_back(g);
    }
    out.resize(static_cast<size_t>(count));
    return out;
}

}  // namespace

std::vector<Mat2> sample_elements_gl2o(const Ctx& ctx, int count, u64 seed) {
    return sample_elements(ctx, count, seed, false);
}
std::vector<Mat2> sample_elements_iwahori(const Ctx& ctx, int count, u64 seed) {
    return sample_elements(ctx, count, seed, true);
}

AlphaBuild build_alpha(const Ctx& ctx, int n, int sample_points, int sample_elements_n,
                       u64 seed) {
    i64 q = static_cast<i64>(ctx->q());
    AlphaBuild b;
    b.n = n;
    b.d = q + 1;
    b.e = q - 1;
    b.qn = 1;
    for (int i = 0; i < n; ++i) b.qn *= q;
    b.cheese = tree_cheese(ctx, SubTree::ball(ctx->p(), n));
    int nh = static_cast<int>(b.cheese.region.holes.size());
    int ext = b.cheese.region.exterior_index();
    // nu = |h(Omega_n)| delta_infty - Sigma
    FiniteMeasure nu =
        FiniteMeasure::delta(nh, ext).scaled(nh) - FiniteMeasure::counting(nh);
    b.u = unit_from_measure(ctx, b.cheese.region, nu);
    b.eta = coboundary_cocycle(b.u).times(j_cocycle(-b.qn * b.d));
    b.alpha = j_cocycle(b.qn).times(root_cocycle(b.u, b.d, b.e, b.qn));
    b.grid = sample_grid(ctx, b.cheese.region, sample_points);

    // smallness hypothesis: eta(g)/eta(g)(z0) is a small unit and the
    // Teichmuller part of eta(g)(z0) has order dividing e
    b.eta_deviation_floor = INT32_MAX;
    auto gens = sample_elements_gl2o(ctx, sample_elements_n, seed);
    for (const auto& g : gens) {
        PadicScalar base = cocycle_point_eval(b.eta, g, b.grid[0]);
        if (base.valuation() != 0)
            throw DomainError("build_alpha: eta value is not a unit at the base point");
        if (b.e > 0 && !base.teichmuller().pow(b.e).same_class(ctx->one()))
            throw DomainError("build_alpha: eta Teichmuller part has order not dividing e");
        for (const auto& z : b.grid) {
            PadicScalar dev = cocycle_point_eval(b.eta, g, z) / base - ctx->one();
            int v = dev.is_zero() ? INT32_MAX : dev.valuation();
            if (v < 1)
                throw DomainError("build_alpha: eta deviates from a scalar at a sample point");
            b.eta_deviation_floor = std::min(b.eta_deviation_floor, v);
        }
    }
    return b;
}

std::string to_string(Triviality t) {
    switch (t) {
        case Triviality::trivial: return "trivial";
        case Triviality::nontrivial: return "nontrivial";
        default: return "inconclusive";
    }
}

Triviality triviality_decision(const Ctx& ctx, const CheeseRegion& x, const CocycleData& alpha,
                               const UnitClass& u, i64 d, i64 e, const std::vector<Mat2>& gens,
                               const std::vector<PadicScalar>& grid) {
    if (d <= 0 || e <= 0 || (d * e) % static_cast<i64>(ctx->p()) == 0)
        throw DomainError("triviality_decision needs de coprime to p");
    FiniteMeasure nu = unit_mu(x, u);
    for (i64 v : nu.val)
        if (v % d != 0) return Triviality::nontrivial;
    FiniteMeasure base = nu.scaled(1);
    for (auto& v : base.val) v /= d;
    UnitClass vcand = unit_from_measure(ctx, x, base);
    CocycleData dv = coboundary_cocycle(vcand);
    // measure-level comparison of alpha with delta(v) on the generators
    for (const auto& g : gens) {
        FiniteMeasure ma = unit_mu(x, cocycle_class_eval(alpha, g));
        FiniteMeasure mv = unit_mu(x, cocycle_class_eval(dv, g));
        if (!(ma == mv)) return Triviality::nontrivial;
    }
    // pointwise confirmation: alpha(g)/delta(v)(g) stays a small unit
    for (const auto& g : gens)
        for (const auto& z : grid) {
            PadicScalar r =
                cocycle_point_eval(alpha, g, z) / cocycle_point_eval(dv, g, z) - ctx->one();
            if (!r.is_zero() && r.valuation() < 1) return Triviality::inconclusive;
        }
    return Triviality::trivial;
}

}  // namespace uhp
