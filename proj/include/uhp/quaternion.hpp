#pragma once

#include "uhp/abelian.hpp"
#include "uhp/cocycle.hpp"

namespace uhp {

// Residue ring O_L / p^n: elements c0 + c1 t with both coefficients mod
// p^n, encoded as c0 + c1 p^n.
struct ResRingL {
    Ctx ctx;
    int n = 1;
    u64 pn = 1;

    static ResRingL make(const Ctx& ctx, int n);
    u64 encode(u64 c0, u64 c1) const { return c0 + c1 * pn; }
    u64 c0(u64 x) const { return x % pn; }
    u64 c1(u64 x) const { return x / pn; }
    u64 one() const { return 1; }
    u64 add(u64 a, u64 b) const;
    u64 neg(u64 a) const;
    u64 mul(u64 a, u64 b) const;
    u64 pow(u64 a, i64 e) const;  // e >= 0
    u64 frob(u64 a) const;
    u64 norm(u64 a) const;  // a sigma(a), lands in Z/p^n
    bool is_unit(u64 a) const;
    std::vector<u64> units() const;
    u64 from_scalar(const PadicScalar& x) const;
    PadicScalar lift(u64 a) const;
};

// (O_L/p^n)^x with the image of P^1_L and the quotient Q_n, everything in
// normal form; sigma_endo is the Galois action on the normal generators of
// the quotient.
struct UnitGroupLevel {
    ResRingL ring;
    std::vector<u64> gens;
    AbelianDlog dlog;
    FiniteAbelianGroup full;
    std::vector<u64> p1_image;
    FiniteAbelianGroup quotient;
    std::vector<std::vector<i64>> sigma_endo;

    std::vector<i64> q_coords(u64 unit) const;  // Q_n normal coordinates
    u64 elem_from_new(const std::vector<i64>& e) const;  // representative unit
};

UnitGroupLevel unit_group_structure(const Ctx& ctx, int n);

// Torsion of L^x: mu_{q^2-1} times mu_2 when p = 2.
i64 mu_torsion_order(const Ctx& ctx);
PadicScalar mu_generator(const Ctx& ctx);
i64 root_of_unity_dlog(const Ctx& ctx, const PadicScalar& value);  // value = omega^t

// O_D / Pi^m, Pi^2 = p, Pi a = sigma(a) Pi: pairs (a, b) with
// a mod p^{ceil(m/2)}, b mod p^{floor(m/2)}.
struct QuatLevel {
    Ctx ctx;
    int m = 1;
    ResRingL ra, rb;

    static QuatLevel make(const Ctx& ctx, int m);
    u64 encode(u64 a, u64 b) const;
    u64 apart(u64 x) const;
    u64 bpart(u64 x) const;
    u64 one() const;
    u64 mul(u64 x, u64 y) const;
    u64 inverse(u64 x) const;
    u64 nrd(u64 x) const;      // reduced norm in Z/p^{ceil(m/2)}
    u64 omega_d(u64 x) const;  // residue of the a-part in k_L
    bool is_unit(u64 x) const;
    std::vector<u64> units() const;
};

struct RiehmReport {
    int m = 1;
    i64 group_order = 0;
    i64 commutator_order = 0;
    i64 kernel_order = 0;
    bool equal = false;
};

// Commutator subgroup of (O_D/Pi^m)^x versus ker(Nrd) intersect ker(omega_D),
// by exhaustive enumeration.
RiehmReport quaternion_finite_check(const Ctx& ctx, int m);

struct StabJz {
    Mat2 g;
    PadicScalar jz;
};
// The stabilizer matrix of z = zeta attached to (a, c), with j_z = a - c z.
StabJz stabilizer_and_jz(const Ctx& ctx, const PadicScalar& a, const PadicScalar& c);

struct TransportResult {
    CharacterData chi;
    CharacterData chi_sigma;
    i64 order = 1;
    bool sigma_fixed = false;
};
// Theorem A data transport: chi(x) = phi_z(alpha)(j_z^{-1}(x)) on the
// normal generators of Q_n.
TransportResult theoremA_transport(const AlphaBuild& alpha, const UnitGroupLevel& level);

// p'-character counts of the finite matrix quotients: GL_2(Z/p^2) and the
// level-p^2 Iwahori quotient (lower-left entry parametrized as p c').
struct MatrixQuotientChars {
    i64 group_order = 0;
    i64 abelian_order = 0;
    i64 pprime_count = 0;
    i64 w_fixed_count = -1;  // Iwahori only
};
MatrixQuotientChars gl2_quotient_characters(const Ctx& ctx);
MatrixQuotientChars iwahori_quotient_characters(const Ctx& ctx);

}  // namespace uhp
