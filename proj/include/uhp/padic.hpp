#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "uhp/common.hpp"

namespace uhp {

class PadicScalar;

// Arithmetic context for F = Q_p and its unramified quadratic extension
// L = F(t), t a root of the fixed irreducible quadratic t^2 + a1*t + a0
// lifted from the residue field. All scalars of one computation share a
// context; coefficients live in Z/p^N with p^N < 2^62.
class PadicContext : public std::enable_shared_from_this<PadicContext> {
public:
    static std::shared_ptr<const PadicContext> create(u64 p, int precision = 24,
                                                      int precision_floor = 1);

    u64 p() const { return p_; }
    u64 q() const { return p_; }  // residue size of F; base field is Q_p
    int precision() const { return n_; }
    int precision_floor() const { return floor_; }
    u64 pk(int k) const { return pow_[static_cast<unsigned>(k)]; }  // p^k, 0 <= k <= N
    u64 modulus() const { return pow_[static_cast<unsigned>(n_)]; }

    // Defining quadratic t^2 + a1*t + a0 (coefficients lifted verbatim).
    u64 quad_a1() const { return a1_; }
    u64 quad_a0() const { return a0_; }

    PadicScalar zero() const;
    PadicScalar one() const;
    PadicScalar from_int(i64 n) const;                   // element of F
    PadicScalar from_rational(i64 num, int e) const;     // num / p^e
    PadicScalar t_gen() const;                           // the class of t
    PadicScalar zeta() const;       // Teichmuller generator of mu_{q^2-1}(L)
    PadicScalar zeta_f() const;     // N(zeta): Teichmuller generator of mu_{q-1}(F)

private:
    PadicContext(u64 p, int n, int floor);

    u64 p_;
    int n_;
    int floor_;
    u64 a1_, a0_;
    std::vector<u64> pow_;
    std::array<u64, 2> zeta_{0, 0};  // filled on create()
    friend class PadicScalar;
};

using Ctx = std::shared_ptr<const PadicContext>;

// Element of F or L at fixed precision: p^v * (c0 + c1 t), the unit part
// (c0, c1) carried modulo p^prec. Exact zero has v = +infinity (is_zero()).
// Values are immutable; all operations return new scalars.
class PadicScalar {
public:
    PadicScalar() = default;

    bool is_zero() const { return zero_; }
    int valuation() const;              // throws on exact zero
    int prec() const { return prec_; }  // guaranteed digits of the unit part
    u64 c0() const { return c_[0]; }
    u64 c1() const { return c_[1]; }
    int ext_degree() const { return c_[1] == 0 ? 1 : 2; }
    bool in_base_field() const { return zero_ || c_[1] == 0; }
    const Ctx& ctx() const { return ctx_; }

    // |x| = p^{-v}; true iff |x| <= p^{-k}.
    bool abs_leq_pk(int k) const { return zero_ || v_ >= k; }

    PadicScalar operator-() const;
    PadicScalar operator+(const PadicScalar& o) const;
    PadicScalar operator-(const PadicScalar& o) const;
    PadicScalar operator*(const PadicScalar& o) const;
    PadicScalar operator/(const PadicScalar& o) const;
    PadicScalar inv() const;
    PadicScalar pow(i64 e) const;

    PadicScalar frobenius() const;  // sigma: t -> -a1 - t
    PadicScalar norm() const;       // x * sigma(x), lands in F
    PadicScalar trace() const;      // x + sigma(x), lands in F

    // Multiplicative projection onto mu_{q^f - 1}: the root of unity
    // congruent to the unit part mod p. Input must be nonzero.
    PadicScalar teichmuller() const;

    // r with r^m = u for a small unit u (v(u-1) >= 1). For p | m the
    // binomial-series domain bound v(u-1) > p/(p-1) is enforced per
    // p-stage; violations raise DomainError with the required valuation.
    PadicScalar root_small_unit(u64 m) const;

    // Base-p digit of the value at position p^i (0 when below precision
    // window is requested -> throws if unknown). Only for f = 1 values.
    int digit(int i) const;

    bool same_class(const PadicScalar& o) const;  // identical (v, unit) at shared prec

    std::string to_string() const;
    static PadicScalar parse(const Ctx& ctx, const std::string& s);

    static PadicScalar make(const Ctx& ctx, int v, u64 c0, u64 c1, int prec);

private:
    PadicScalar(Ctx ctx, int v, std::array<u64, 2> c, int prec, bool zero)
        : ctx_(std::move(ctx)), v_(v), c_(c), prec_(prec), zero_(zero) {}

    static PadicScalar normalize(const Ctx& ctx, int v, u128 c0, u128 c1, int prec);
    std::array<u64, 2> unit_mul(const std::array<u64, 2>& a, const std::array<u64, 2>& b,
                                u64 mod) const;

    Ctx ctx_;
    int v_ = 0;
    std::array<u64, 2> c_{0, 0};
    int prec_ = 0;
    bool zero_ = true;
};

// v(a - b) >= min(v(a), v(b)) + digits, or the difference vanishes at the
// available precision. The "equal to k digits" comparison of the toolkit.
bool agree_to(const PadicScalar& a, const PadicScalar& b, int digits);

// Exact rational of the form num / p^e used for tree vertices, disc
// centres and unit-class factor centres that stay in Q.
struct PRat {
    i64 num = 0;
    int e = 0;  // denominator exponent, >= 0; canonical: e == 0 or p does not divide num

    static PRat of(i64 num, int e, u64 p);
    bool is_zero() const { return num == 0; }
    int valuation(u64 p) const;  // throws on zero
    PadicScalar to_padic(const Ctx& ctx) const;
    std::string to_string() const;
};

PRat prat_sub(const PRat& a, const PRat& b, u64 p);
PRat prat_add(const PRat& a, const PRat& b, u64 p);
bool prat_eq(const PRat& a, const PRat& b);

// The class of w modulo p^m O as an exact rational (digits below p^m).
PRat truncate_below(const PadicScalar& w, int m);

}  // namespace uhp
