#include "uhp/quaternion.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace uhp {

ResRingL ResRingL::make(const Ctx& ctx, int n) {
    if (n < 1 || n > ctx->precision()) throw DomainError("residue level out of range");
    ResRingL r;
    r.ctx = ctx;
    r.n = n;
    r.pn = ctx->pk(n);
    return r;
}

u64 ResRingL::add(u64 a, u64 b) const {
    return encode((c0(a) + c0(b)) % pn, (c1(a) + c1(b)) % pn);
}
u64 ResRingL::neg(u64 a) const {
    return encode((pn - c0(a)) % pn, (pn - c1(a)) % pn);
}
u64 ResRingL::mul(u64 a, u64 b) const {
    u64 a1 = ctx->quad_a1() % pn, a0 = ctx->quad_a0() % pn;
    u64 e0 = mulmod(c0(a), c0(b), pn);
    u64 e1 = addmod(mulmod(c0(a), c1(b), pn), mulmod(c1(a), c0(b), pn), pn);
    u64 e2 = mulmod(c1(a), c1(b), pn);
    u64 r0 = submod(e0, mulmod(e2, a0, pn), pn);
    u64 r1 = submod(e1, mulmod(e2, a1, pn), pn);
    return encode(r0, r1);
}
u64 ResRingL::pow(u64 a, i64 e) const {
    if (e < 0) throw DomainError("ResRingL::pow needs e >= 0");
    u64 r = one(), base = a;
    u64 k = static_cast<u64>(e);
    while (k) {
        if (k & 1) r = mul(r, base);
        base = mul(base, base);
        k >>= 1;
    }
    return r;
}
u64 ResRingL::frob(u64 a) const {
    u64 a1 = ctx->quad_a1() % pn;
    return encode(submod(c0(a), mulmod(a1, c1(a), pn), pn), (pn - c1(a)) % pn);
}
u64 ResRingL::norm(u64 a) const {
    u64 v = mul(a, frob(a));
    if (c1(v) != 0) throw Error("norm did not land in Z/p^n");
    return v;
}
bool ResRingL::is_unit(u64 a) const {
    u64 p = ctx->p();
    return c0(a) % p != 0 || c1(a) % p != 0;
}
std::vector<u64> ResRingL::units() const {
    std::vector<u64> out;
    for (u64 c1v = 0; c1v < pn; ++c1v)
        for (u64 c0v = 0; c0v < pn; ++c0v) {
            u64 x = encode(c0v, c1v);
            if (is_unit(x)) out.push_back(x);
        }
    return out;
}
u64 ResRingL::from_scalar(const PadicScalar& x) const {
    if (x.is_zero()) return 0;
    if (x.valuation() < 0) throw DomainError("from_scalar needs an integral value");
    if (x.valuation() + x.prec() < n) throw PrecisionError("scalar too coarse for the level");
    u64 shift = ipow(ctx->p(), static_cast<unsigned>(x.valuation()));
    return encode(mulmod(x.c0() % pn, shift % pn, pn), mulmod(x.c1() % pn, shift % pn, pn));
}
PadicScalar ResRingL::lift(u64 a) const {
    return PadicScalar::make(ctx, 0, c0(a), c1(a), ctx->precision());
}

i64 mu_torsion_order(const Ctx& ctx) {
    i64 q = static_cast<i64>(ctx->q());
    return ctx->p() == 2 ? 2 * (q * q - 1) : q * q - 1;
}

PadicScalar mu_generator(const Ctx& ctx) {
    return ctx->p() == 2 ? -ctx->zeta() : ctx->zeta();
}

i64 root_of_unity_dlog(const Ctx& ctx, const PadicScalar& value) {
    i64 m = mu_torsion_order(ctx);
    PadicScalar om = mu_generator(ctx);
    PadicScalar cur = ctx->one();
    for (i64 t = 0; t < m; ++t) {
        if (cur.same_class(value)) return t;
        cur = cur * om;
    }
    throw DomainError("value is not a root of unity available in L");
}

UnitGroupLevel unit_group_structure(const Ctx& ctx, int n) {
    if (n > 3 && ctx->p() > 2) throw DomainError("unit group level beyond the enumeration budget");
    UnitGroupLevel lvl;
    lvl.ring = ResRingL::make(ctx, n);
    const ResRingL& R = lvl.ring;
    // generators: the Teichmuller generator plus the principal filtration
    lvl.gens.push_back(R.from_scalar(ctx->zeta()));
    for (int i = 1; i < n; ++i) {
        u64 pi = ctx->pk(i) % R.pn;
        lvl.gens.push_back(R.encode((1 + pi) % R.pn, 0));
        lvl.gens.push_back(R.encode(1, pi));
    }
    lvl.dlog = abelian_dlog(R.one(), lvl.gens, [&R](u64 a, u64 b) { return R.mul(a, b); });
    if (lvl.dlog.elements.size() != R.units().size())
        throw Error("unit group generators do not generate");
    lvl.full = abelian_structure(static_cast<int>(lvl.gens.size()), lvl.dlog.relations);
    if (lvl.full.size() != static_cast<i64>(lvl.dlog.elements.size()))
        throw Error("unit group normal form size mismatch");
    // image of P^1_L: principal units of norm one at this level
    for (u64 x : lvl.dlog.elements) {
        u64 p = ctx->p();
        if (R.c0(x) % p == 1 % p && R.c1(x) % p == 0 && x != 0 && R.norm(x) == R.one())
            lvl.p1_image.push_back(x);
    }
    auto rels = lvl.dlog.relations;
    for (u64 s : lvl.p1_image) rels.push_back(lvl.dlog.dlog.at(s));
    lvl.quotient = abelian_structure(static_cast<int>(lvl.gens.size()), rels);
    // sigma on the quotient's normal generators
    for (const auto& expr : lvl.quotient.new_in_old) {
        u64 x = lvl.elem_from_new(expr);
        lvl.sigma_endo.push_back(lvl.q_coords(R.frob(x)));
    }
    return lvl;
}

std::vector<i64> UnitGroupLevel::q_coords(u64 unit) const {
    auto it = dlog.dlog.find(unit);
    if (it == dlog.dlog.end()) throw DomainError("not a unit at this level");
    std::vector<i64> coords(quotient.orders.size(), 0);
    for (size_t j = 0; j < it->second.size(); ++j)
        for (size_t i = 0; i < coords.size(); ++i)
            coords[i] += it->second[j] * quotient.old_in_new[j][i];
    return quotient.reduce(coords);
}

u64 UnitGroupLevel::elem_from_new(const std::vector<i64>& e) const {
    if (e.size() != gens.size()) throw DomainError("exponent vector size mismatch");
    i64 M = full.size();
    u64 x = ring.one();
    for (size_t j = 0; j < gens.size(); ++j) {
        i64 k = ((e[j] % M) + M) % M;
        x = ring.mul(x, ring.pow(gens[j], k));
    }
    return x;
}

RiehmReport quaternion_finite_check(const Ctx& ctx, int m) {
    u64 q = ctx->q();
    if (m < 1 || m > 3 || (q > 3 && m > 2)) throw DomainError("level beyond enumeration budget");
    auto D = QuatLevel::make(ctx, m);
    auto units = D.units();
    RiehmReport rep;
    rep.m = m;
    rep.group_order = static_cast<i64>(units.size());

    // commutator subgroup by closure (conjugation closure included)
    std::set<u64> comm;
    std::vector<u64> frontier;
    auto push = [&](u64 x) {
        if (comm.insert(x).second) frontier.push_back(x);
    };
    push(D.one());
    for (u64 x : units)
        for (u64 y : units) {
            u64 c = D.mul(D.mul(x, y), D.inverse(D.mul(y, x)));
            push(c);
        }
    while (!frontier.empty()) {
        u64 x = frontier.back();
        frontier.pop_back();
        for (u64 s : std::vector<u64>(comm.begin(), comm.end())) {
            u64 v = D.mul(x, s);
            if (!comm.count(v)) push(v);
        }
    }
    rep.commutator_order = static_cast<i64>(comm.size());

    std::set<u64> kernel;
    u64 nrd_one = 1;  // encoded 1 in Z/p^{ceil(m/2)}
    for (u64 x : units)
        if (D.nrd(x) == nrd_one && D.omega_d(x) == 1) kernel.insert(x);
    rep.kernel_order = static_cast<i64>(kernel.size());
    rep.equal = comm == kernel;
    return rep;
}

QuatLevel QuatLevel::make(const Ctx& ctx, int m) {
    if (m < 1) throw DomainError("quaternion level must be >= 1");
    QuatLevel d;
    d.ctx = ctx;
    d.m = m;
    int ka = (m + 1) / 2, kb = m / 2;
    d.ra = ResRingL::make(ctx, ka);
    d.rb = kb > 0 ? ResRingL::make(ctx, kb) : ResRingL{};
    if (kb == 0) {
        d.rb.ctx = ctx;
        d.rb.n = 0;
        d.rb.pn = 1;
    }
    return d;
}

u64 QuatLevel::encode(u64 a, u64 b) const { return a + b * (ra.pn * ra.pn); }
u64 QuatLevel::apart(u64 x) const { return x % (ra.pn * ra.pn); }
u64 QuatLevel::bpart(u64 x) const { return x / (ra.pn * ra.pn); }
u64 QuatLevel::one() const { return encode(ra.one(), 0); }

namespace {
// reduce an element of O_L/p^{ka} to O_L/p^{kb} (kb <= ka)
u64 reduce_ring(const ResRingL& from, const ResRingL& to, u64 x) {
    if (to.pn == 1) return 0;
    return to.encode(from.c0(x) % to.pn, from.c1(x) % to.pn);
}
// lift from O_L/p^{kb} to O_L/p^{ka} multiplied by p (exact)
u64 p_times_lift(const ResRingL& from, const ResRingL& to, u64 x) {
    if (from.pn == 1) return 0;
    u64 p = to.ctx->p();
    return to.encode((from.c0(x) * p) % to.pn, (from.c1(x) * p) % to.pn);
}
}  // namespace

u64 QuatLevel::mul(u64 x, u64 y) const {
    // (a1 + b1 Pi)(a2 + b2 Pi) = (a1 a2 + p b1 sigma(b2)) + (a1 b2 + b1 sigma(a2)) Pi
    u64 a1 = apart(x), a2 = apart(y);
    u64 b1 = bpart(x), b2 = bpart(y);
    u64 across = ra.mul(a1, a2);
    u64 bterm = rb.pn > 1 ? p_times_lift(rb, ra, rb.mul(b1, rb.frob(b2))) : 0;
    u64 anew = ra.add(across, bterm);
    u64 bnew = 0;
    if (rb.pn > 1) {
        u64 a1r = reduce_ring(ra, rb, a1), a2r = reduce_ring(ra, rb, a2);
        bnew = rb.add(rb.mul(a1r, b2), rb.mul(b1, rb.frob(a2r)));
    }
    return encode(anew, bnew);
}

u64 QuatLevel::nrd(u64 x) const {
    // a sigma(a) - p b sigma(b), in Z/p^{ka}
    u64 a = apart(x), b = bpart(x);
    u64 na = ra.norm(a);
    u64 nb = rb.pn > 1 ? p_times_lift(rb, ra, rb.norm(b)) : 0;
    u64 r = ra.add(na, ra.neg(nb));
    if (ra.c1(r) != 0) throw Error("reduced norm did not land in Z/p^k");
    return r;
}

u64 QuatLevel::omega_d(u64 x) const {
    u64 p = ctx->p();
    u64 a = apart(x);
    return (ra.c0(a) % p) + (ra.c1(a) % p) * p;  // residue in k_L, encoded base p
}

bool QuatLevel::is_unit(u64 x) const { return ra.is_unit(apart(x)); }

u64 QuatLevel::inverse(u64 x) const {
    // (a + b Pi)^{-1} = (sigma-conjugate) / Nrd: (a+bPi)(sigma(a) - bPi) = Nrd
    u64 a = apart(x), b = bpart(x);
    u64 n = nrd(x);
    // invert the scalar n mod p^{ka}
    u64 ninv = 1;
    {
        u64 c = ra.c0(n);
        u64 p = ctx->p();
        u64 mod = ra.pn;
        if (c % p == 0) throw DomainError("inverse of a non-unit quaternion");
        u64 t = powmod(c % p, p - 2, p);
        for (int i = 0; i < 7; ++i) t = mulmod(t, submod(2 % mod, mulmod(c, t, mod), mod), mod);
        ninv = t;
    }
    u64 conj_a = ra.frob(a);
    u64 conj_b = rb.pn > 1 ? rb.neg(b) : 0;
    u64 sa = ra.mul(conj_a, ra.encode(ninv, 0));
    u64 sb = rb.pn > 1 ? rb.mul(conj_b, rb.encode(ninv % rb.pn, 0)) : 0;
    u64 r = encode(sa, sb);
    if (mul(x, r) != one()) throw Error("quaternion inverse failed");
    return r;
}

std::vector<u64> QuatLevel::units() const {
    std::vector<u64> out;
    u64 bmax = rb.pn > 1 ? rb.pn * rb.pn : 1;
    for (u64 b = 0; b < bmax; ++b)
        for (u64 a = 0; a < ra.pn * ra.pn; ++a) {
            u64 x = encode(a, b);
            if (is_unit(x)) out.push_back(x);
        }
    return out;
}

StabJz stabilizer_and_jz(const Ctx& ctx, const PadicScalar& a, const PadicScalar& c) {
    PadicScalar z = ctx->zeta();
    PadicScalar jz = a - c * z;
    if (jz.is_zero() || jz.valuation() != 0)
        throw DomainError("stabilizer parameters give a non-unit j_z value");
    Mat2 g = stabilizer_matrix(z, a, c);
    return StabJz{g, jz};
}

TransportResult theoremA_transport(const AlphaBuild& alpha, const UnitGroupLevel& level) {
    const Ctx& ctx = level.ring.ctx;
    PadicScalar zeta = ctx->zeta();
    // zeta = z0 + z1 t with z1 a unit
    PadicScalar z0 = PadicScalar::make(ctx, 0, zeta.c0(), 0, ctx->precision());
    PadicScalar z1 = PadicScalar::make(ctx, 0, zeta.c1(), 0, ctx->precision());
    TransportResult out;
    out.chi.m = mu_torsion_order(ctx);
    out.chi_sigma.m = out.chi.m;
    for (const auto& expr : level.quotient.new_in_old) {
        u64 xelem = level.elem_from_new(expr);
        PadicScalar xhat = level.ring.lift(xelem);
        // write xhat = A + B zeta and take the stabilizer with j_z = xhat
        PadicScalar x0 = PadicScalar::make(ctx, 0, xhat.c0(), 0, ctx->precision());
        PadicScalar x1 = PadicScalar::make(ctx, 0, xhat.c1(), 0, ctx->precision());
        PadicScalar bcoef = x1 / z1;
        PadicScalar acoef = x0 - bcoef * z0;
        auto st = stabilizer_and_jz(ctx, acoef, -bcoef);
        PadicScalar val = phi_z_eval(alpha.alpha, st.g, zeta);
        out.chi.t.push_back(root_of_unity_dlog(ctx, val));
    }
    out.chi_sigma = char_compose(level.quotient, out.chi, level.sigma_endo);
    out.order = char_order(level.quotient, out.chi);
    out.sigma_fixed = char_eq(out.chi, out.chi_sigma);
    return out;
}

namespace {

// finite matrix groups mod p^2, packed base p^2
struct MatQuot {
    u64 mod = 4;  // p^2
    bool iwahori = false;  // entries (a, b, c', d) meaning [[a, b],[p c', d]]
    u64 p = 2;

    u64 pack(u64 a, u64 b, u64 c, u64 d) const {
        return ((a * mod + b) * mod + c) * mod + d;
    }
    void unpack(u64 x, u64& a, u64& b, u64& c, u64& d) const {
        d = x % mod;
        c = (x / mod) % mod;
        b = (x / (mod * mod)) % mod;
        a = x / (mod * mod * mod);
    }
    u64 id() const { return pack(1, 0, 0, 1); }
    u64 mul(u64 x, u64 y) const {
        u64 a1, b1, c1, d1, a2, b2, c2, d2;
        unpack(x, a1, b1, c1, d1);
        unpack(y, a2, b2, c2, d2);
        if (!iwahori)
            return pack((a1 * a2 + b1 * c2) % mod, (a1 * b2 + b1 * d2) % mod,
                        (c1 * a2 + d1 * c2) % mod, (c1 * b2 + d1 * d2) % mod);
        // [[a1,b1],[p c1,d1]] [[a2,b2],[p c2,d2]]
        return pack((a1 * a2 + p * b1 * c2) % mod, (a1 * b2 + b1 * d2) % mod,
                    (c1 * a2 + d1 * c2) % mod, (p * c1 * b2 + d1 * d2) % mod);
    }
    u64 det(u64 x) const {
        u64 a, b, c, d;
        unpack(x, a, b, c, d);
        u64 bc = iwahori ? (p * b * c) % mod : (b * c) % mod;
        return ((a * d) % mod + mod - bc) % mod;
    }
    u64 inverse(u64 x) const {
        u64 a, b, c, d;
        unpack(x, a, b, c, d);
        u64 dt = det(x);
        if (dt % p == 0) throw DomainError("singular matrix in quotient");
        u64 i = powmod(dt % p, p - 2, p);
        for (int k = 0; k < 6; ++k) i = mulmod(i, submod(2 % mod, mulmod(dt, i, mod), mod), mod);
        auto m = [&](u64 v) { return (v * i) % mod; };
        return pack(m(d), m(mod - b % mod), m(mod - c % mod), m(a));
    }
    std::vector<u64> all_elements() const {
        std::vector<u64> out;
        for (u64 a = 0; a < mod; ++a)
            for (u64 b = 0; b < mod; ++b)
                for (u64 c = 0; c < mod; ++c)
                    for (u64 d = 0; d < mod; ++d) {
                        u64 x = pack(a, b, c, d);
                        if (det(x) % p != 0) out.push_back(x);
                    }
        return out;
    }
};

// [G,G] as the normal closure of the commutators of a generating set.
std::set<u64> commutator_subgroup(const MatQuot& g, const std::vector<u64>& gens) {
    std::set<u64> comm{g.id()};
    std::vector<u64> frontier;
    auto push = [&](u64 x) {
        if (comm.insert(x).second) frontier.push_back(x);
    };
    for (u64 x : gens)
        for (u64 y : gens)
            push(g.mul(g.mul(x, y), g.inverse(g.mul(y, x))));
    while (!frontier.empty()) {
        u64 x = frontier.back();
        frontier.pop_back();
        for (u64 s : std::vector<u64>(comm.begin(), comm.end())) {
            u64 v = g.mul(x, s);
            if (!comm.count(v)) push(v);
        }
        for (u64 h : gens) {
            push(g.mul(g.mul(h, x), g.inverse(h)));
            u64 hi = g.inverse(h);
            push(g.mul(g.mul(hi, x), h));
        }
    }
    return comm;
}

// generating set of the full quotient group, certified by BFS closure
std::vector<u64> quotient_generators(const MatQuot& g, size_t expected) {
    std::vector<u64> gens;
    u64 p = g.p;
    gens.push_back(g.pack(1, 1, 0, 1));
    gens.push_back(g.pack(1, 0, 1, 1));  // lower-left p c' in the Iwahori pattern
    // a generator of (Z/p^2)^x on each diagonal slot
    u64 root = 0;
    for (u64 r = 2; r < g.mod && root == 0; ++r) {
        if (r % p == 0) continue;
        u64 ord = 1, cur = r;
        while (cur != 1) { cur = (cur * r) % g.mod; ++ord; }
        if (ord == p * (p - 1)) root = r;
    }
    if (root == 0 && p == 2) root = 3;  // (Z/4)^x is generated by 3, of order 2
    gens.push_back(g.pack(root, 0, 0, 1));
    gens.push_back(g.pack(1, 0, 0, root));
    if (!g.iwahori) gens.push_back(g.pack(0, 1, 1, 0));
    std::set<u64> seen{g.id()};
    std::vector<u64> stack{g.id()};
    while (!stack.empty()) {
        u64 x = stack.back();
        stack.pop_back();
        for (u64 h : gens) {
            u64 v = g.mul(x, h);
            if (seen.insert(v).second) stack.push_back(v);
        }
    }
    if (seen.size() != expected) throw Error("quotient generators do not generate");
    return gens;
}

MatrixQuotientChars quotient_characters(const Ctx& ctx, bool iwahori) {
    MatQuot g;
    g.p = ctx->p();
    g.mod = ctx->p() * ctx->p();
    g.iwahori = iwahori;
    auto elems = g.all_elements();
    auto gens0 = quotient_generators(g, elems.size());
    auto comm = commutator_subgroup(g, gens0);
    // canonical coset representative: minimum of x [G,G]
    std::map<u64, u64> rep;
    for (u64 x : elems) {
        u64 best = UINT64_MAX;
        for (u64 k : comm) best = std::min(best, g.mul(x, k));
        rep[x] = best;
    }
    // abelianization generated by the images of a generating set; use all
    // coset representatives as generators (small)
    std::set<u64> repset;
    for (const auto& [x, r] : rep) repset.insert(r);
    std::vector<u64> gens(repset.begin(), repset.end());
    auto mulrep = [&](u64 a, u64 b) { return rep.at(g.mul(a, b)); };
    auto dl = abelian_dlog(rep.at(g.id()), gens, mulrep);
    auto ab = abelian_structure(static_cast<int>(gens.size()), dl.relations);

    MatrixQuotientChars out;
    out.group_order = static_cast<i64>(elems.size());
    out.abelian_order = ab.size();
    i64 q = static_cast<i64>(ctx->q());
    i64 mu = q * q - 1;
    auto chars = enumerate_characters(ab, mu);
    out.pprime_count = static_cast<i64>(chars.size());
    if (iwahori) {
        // conjugation by w: (a, b, c', d) -> (d, c', b, a)
        std::vector<std::vector<i64>> endo;
        for (const auto& expr : ab.new_in_old) {
            // compute the coset of w x w^{-1} where x = prod gens^expr
            u64 x = rep.at(g.id());
            for (size_t j = 0; j < expr.size(); ++j) {
                i64 e = ((expr[j] % ab.size()) + ab.size()) % ab.size();
                for (i64 k = 0; k < e; ++k) x = mulrep(x, gens[j]);
            }
            u64 a, b, c, d;
            g.unpack(x, a, b, c, d);
            u64 wx = g.pack(d, c, b, a);
            // coordinates of the conjugate in the abelianization
            auto it = dl.dlog.find(rep.at(wx));
            if (it == dl.dlog.end()) throw Error("conjugate left the abelianization");
            std::vector<i64> coords(ab.orders.size(), 0);
            for (size_t j = 0; j < it->second.size(); ++j)
                for (size_t i = 0; i < coords.size(); ++i)
                    coords[i] += it->second[j] * ab.old_in_new[j][i];
            endo.push_back(ab.reduce(coords));
        }
        i64 fixed = 0;
        for (const auto& chi : chars)
            if (char_eq(chi, char_compose(ab, chi, endo))) ++fixed;
        out.w_fixed_count = fixed;
    }
    return out;
}

}  // namespace

MatrixQuotientChars gl2_quotient_characters(const Ctx& ctx) {
    return quotient_characters(ctx, false);
}
MatrixQuotientChars iwahori_quotient_characters(const Ctx& ctx) {
    return quotient_characters(ctx, true);
}

}  // namespace uhp
