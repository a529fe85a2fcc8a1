#pragma once

#include <string>
#include <vector>

#include "uhp/unitclass.hpp"

namespace uhp {

// Symbolic 1-cocycle valued in unit classes: a product of atoms, each with
// an outer exponent. Convention: alpha(gh) = (g.alpha(h)) alpha(g) and
// (g.u)(z) = u(g^{-1} z).
struct CocycleAtom {
    enum Type { J, COB, CHI, ROOT };
    Type type = J;
    i64 exp = 1;
    UnitClass u;      // COB payload; for ROOT the pipeline unit
    i64 chi_k = 0;    // CHI payload: power of the Teichmuller determinant
    i64 d = 0, e = 0, qn = 0;  // ROOT payload
};

struct CocycleData {
    std::vector<CocycleAtom> atoms;

    CocycleData times(const CocycleData& o) const;
    CocycleData powered(i64 k) const;
    bool is_trivial_expr() const { return atoms.empty(); }
};

CocycleData trivial_cocycle();
CocycleData j_cocycle(i64 k = 1);
CocycleData coboundary_cocycle(const UnitClass& u);
CocycleData character_twist(i64 k);
// gamma(g) = the unique small-unit (de)-th root of eta(g)^e where
// eta = delta(u) j^{-qn d}
CocycleData root_cocycle(const UnitClass& u, i64 d, i64 e, i64 qn);

// The unit class of j(g) = a - c x for g in GL_2(O).
UnitClass j_unit(const Mat2& g);

UnitClass cocycle_class_eval(const CocycleData& c, const Mat2& g);
PadicScalar cocycle_point_eval(const CocycleData& c, const Mat2& g, const PadicScalar& z);

// Stabilizer of z: [[a, -c N(z)],[c, a - c tr(z)]]; fixes z by construction.
Mat2 stabilizer_matrix(const PadicScalar& z, const PadicScalar& a, const PadicScalar& c);

// phi_z: evaluation character of the stabilizer; g must fix z.
PadicScalar phi_z_eval(const CocycleData& alpha, const Mat2& g, const PadicScalar& z);

// Structured plus random elements of GL_2(O) (or of the Iwahori subgroup)
// at working precision, for sampled group-level checks.
std::vector<Mat2> sample_elements_gl2o(const Ctx& ctx, int count, u64 seed);
std::vector<Mat2> sample_elements_iwahori(const Ctx& ctx, int count, u64 seed);

struct AlphaBuild {
    int n = 0;
    i64 d = 0, e = 0, qn = 0;
    TreeCheese cheese;               // Omega_n
    UnitClass u;                     // mu(u) = |h| delta_inf - Sigma
    CocycleData alpha;               // J^{q^n}  ROOT(u, d, e, q^n)
    CocycleData eta;                 // COB(u)  J^{-q^n d}
    std::vector<PadicScalar> grid;   // sample points, grid[0] = z0 = zeta
    int eta_deviation_floor = 0;     // min over checks of v(eta(g)(z)/eta(g)(z0) - 1)
};

// The approximation pipeline: build u from the measure
// |h(Omega_n)| delta_infty - Sigma, certify the smallness hypothesis on
// samples, and assemble alpha with alpha^{de} = delta(u^e).
AlphaBuild build_alpha(const Ctx& ctx, int n, int sample_points = 10, int sample_elements = 8,
                       u64 seed = 1);

enum class Triviality { trivial, nontrivial, inconclusive };
std::string to_string(Triviality t);

// Measure-level criterion with pointwise confirmation: nontrivial is
// certified by mu(u) mod d or by the measure-level cocycle comparison;
// trivial by exhibiting v with alpha = delta(v) on all samples.
Triviality triviality_decision(const Ctx& ctx, const CheeseRegion& x, const CocycleData& alpha,
                               const UnitClass& u, i64 d, i64 e, const std::vector<Mat2>& gens,
                               const std::vector<PadicScalar>& grid);

}  // namespace uhp
