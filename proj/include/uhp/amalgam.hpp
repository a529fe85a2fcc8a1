#pragma once

#include <functional>

#include "uhp/cocycle.hpp"

namespace uhp {

// Canonical coset data for G^0 = A *_I B with A = GL_2(O), B = w A w^{-1}:
// representatives of the q nontrivial cosets of I in A (lower unipotent
// Teichmuller lifts and the Weyl reflection) and their w-conjugates.
struct AmalgamContext {
    Ctx ctx;
    Mat2 w;
    std::vector<Mat2> reps_a;
    std::vector<Mat2> reps_b;
};

AmalgamContext amalgam_context(const Ctx& ctx);

// Alternating normal form: factors from reps_a / reps_b with strict
// alternation, then a trailing Iwahori element.
struct AmalgamWord {
    struct Factor {
        bool a_side = true;
        int rep = 0;
    };
    std::vector<Factor> factors;
    Mat2 tail;
};

// Word length equals the displacement of the base edge (s0, w s0).
int edge_displacement(const Ctx& ctx, const Mat2& g);

AmalgamWord amalgam_decompose(const AmalgamContext& ac, const Mat2& g, int max_len = 24);
Mat2 amalgam_multiply(const AmalgamContext& ac, const AmalgamWord& word);
bool mat_eq(const Mat2& a, const Mat2& b);

// Pointwise cocycle evaluators on the two factors.
using CocycleEval = std::function<PadicScalar(const Mat2&, const PadicScalar&)>;

// alpha(g)(z) computed along the normal form by the cocycle relation
// alpha(f r)(z) = alpha(r)(f^{-1} z) alpha(f)(z); the trailing Iwahori
// element is evaluated through the A-side data.
PadicScalar extend_cocycle_eval(const AmalgamContext& ac, const CocycleEval& c_a,
                                const CocycleEval& c_b, const Mat2& g, const PadicScalar& z);

// Agreement of the two evaluators on sampled Iwahori elements; throws with
// a witness description on failure.
void check_i_agreement(const AmalgamContext& ac, const CocycleEval& c_a, const CocycleEval& c_b,
                       const std::vector<Mat2>& i_samples, const std::vector<PadicScalar>& grid,
                       int digits);

// x in O_L^x with N(x) = t, for a unit t of O_F: Teichmuller part by
// discrete log along the norm, principal part by trace-guided iteration.
PadicScalar norm_solve(const Ctx& ctx, const PadicScalar& t);

}  // namespace uhp
