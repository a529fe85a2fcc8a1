#pragma once

#include <vector>

#include "uhp/cheese.hpp"
#include "uhp/measures.hpp"

namespace uhp {

// Unit on a cheese represented by its rational skeleton
// lambda * prod (x - a_i)^{n_i}; the small-unit tail is only ever touched
// through pointwise evaluation. Canonical form merges equal centres and
// drops zero exponents.
struct UnitClass {
    PadicScalar lambda;
    std::vector<std::pair<PadicScalar, i64>> factors;

    static UnitClass one(const Ctx& ctx);
    static UnitClass constant(const PadicScalar& c);
    static UnitClass monomial(const PadicScalar& center, i64 exp);  // (x - a)^n

    UnitClass times(const UnitClass& o) const;
    UnitClass powered(i64 k) const;
    UnitClass inverse() const;

    i64 degree() const;  // sum of exponents
    std::string to_json() const;
};

// lambda prod (z - a_i)^{n_i}
PadicScalar unit_eval(const UnitClass& u, const PadicScalar& z);

// mu_X(u): the divisor measure of u on the holes of X, total zero.
// Every factor centre must lie in a hole of X.
FiniteMeasure unit_mu(const CheeseRegion& x, const UnitClass& u);

// Section of mu: one factor per non-exterior hole, exponent nu(hole).
UnitClass unit_from_measure(const Ctx& ctx, const CheeseRegion& x, const FiniteMeasure& nu);

// (g . u)(z) = u(g^{-1} z): exact pullback of the rational skeleton; the
// pole of g^{-1} enters as an extra factor with the balancing exponent.
UnitClass unit_pullback(const Mat2& g, const UnitClass& u);

// Deterministic sample points of a cheese: hole centres shifted by
// p^k zeta and friends, filtered by membership.
std::vector<PadicScalar> sample_grid(const Ctx& ctx, const CheeseRegion& x, int want);

struct SmallUnitReport {
    bool pass = false;
    int worst = 0;        // min over samples of v(u(z)/u(z0) - 1); INT32_MAX if exact
    int witness = -1;     // sample index attaining the worst deviation
};

// Necessary-condition check of u in K^x O(Y)^{xx}_{|p|^m}: the sampled
// deviation from the value at samples[0].
SmallUnitReport sampled_small_unit_check(const UnitClass& u,
                                         const std::vector<PadicScalar>& samples, int bound_exp);

// The d-torsion line bundle class data [L_{u,d}] with p coprime to d.
struct LineBundleClassData {
    UnitClass u;
    i64 d = 1;
};

LineBundleClassData class_tensor(const LineBundleClassData& a, const LineBundleClassData& b);
LineBundleClassData class_inverse(const LineBundleClassData& a);

// Trivial iff mu(u) = 0 mod d; complete at class level for p coprime to d
// since small units then admit d-th roots.
bool class_trivial(const CheeseRegion& x, const LineBundleClassData& c);

}  // namespace uhp
