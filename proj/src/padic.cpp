#include "uhp/padic.hpp"

#include <algorithm>
#include <sstream>

namespace uhp {

namespace {

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Irreducible quadratics t^2 + a1 t + a0 over F_p whose root generates
// F_{p^2}^x, lifted verbatim. Fixed per prime for reproducible encodings.
void quad_lift(u64 p, u64& a1, u64& a0) {
    switch (p) {
        case 2: a1 = 1; a0 = 1; return;
        case 3: a1 = 2; a0 = 2; return;
        case 5: a1 = 4; a0 = 2; return;
        case 7: a1 = 6; a0 = 3; return;
        default: break;
    }
    throw DomainError("unsupported prime " + std::to_string(p) +
                      " (no fixed quadratic lift; supported: 2,3,5,7)");
}

u64 inv_mod_ppow(u64 a, u64 p, u64 mod) {
    a %= mod;
    if (a % p == 0) throw DomainError("inverse of non-unit mod p^N");
    u64 x = powmod(a % p, p - 2, p);  // inverse mod p
    for (int i = 0; i < 7; ++i) {     // Newton doubling: 2^7 > 62 digits
        u64 ax = mulmod(a, x, mod);
        x = mulmod(x, submod(2 % mod, ax, mod), mod);
    }
    return x;
}

}  // namespace

PadicContext::PadicContext(u64 p, int n, int floor) : p_(p), n_(n), floor_(floor) {
    if (!is_prime(p)) throw DomainError("p must be prime");
    if (n < 1) throw DomainError("precision must be >= 1");
    if (floor < 1 || floor > n) throw DomainError("precision floor out of range");
    quad_lift(p, a1_, a0_);
    pow_.resize(static_cast<size_t>(n) + 1);
    pow_[0] = 1;
    for (int k = 1; k <= n; ++k) {
        if (pow_[static_cast<size_t>(k - 1)] > (u64(1) << 62) / p)
            throw DomainError("p^N exceeds 2^62; lower the precision");
        pow_[static_cast<size_t>(k)] = pow_[static_cast<size_t>(k - 1)] * p;
    }
}

std::shared_ptr<const PadicContext> PadicContext::create(u64 p, int precision,
                                                         int precision_floor) {
    auto ctx = std::shared_ptr<PadicContext>(new PadicContext(p, precision, precision_floor));
    const u64 mod = ctx->modulus();
    const u64 a1 = ctx->a1_, a0 = ctx->a0_;
    auto mul2 = [&](std::array<u64, 2> a, std::array<u64, 2> b) {
        u128 e0 = u128(a[0]) * b[0];
        u128 e1 = u128(a[0]) * b[1] + u128(a[1]) * b[0];
        u64 e2 = mulmod(a[1], b[1], mod);
        u128 r0 = e0 + u128(e2) * ((mod - a0 % mod) % mod);
        u128 r1 = e1 + u128(e2) * ((mod - a1 % mod) % mod);
        return std::array<u64, 2>{static_cast<u64>(r0 % mod), static_cast<u64>(r1 % mod)};
    };
    auto pow2 = [&](std::array<u64, 2> a, u64 e) {
        std::array<u64, 2> r{1, 0};
        while (e) {
            if (e & 1) r = mul2(r, a);
            a = mul2(a, a);
            e >>= 1;
        }
        return r;
    };
    // Teichmuller generator: iterate t -> t^{p^2} to the fixed point.
    std::array<u64, 2> w{0, 1};
    for (int i = 0; i <= precision + 2; ++i) {
        auto w2 = pow2(w, p * p);
        if (w2 == w) break;
        w = w2;
    }
    ctx->zeta_ = w;
    return ctx;
}

PadicScalar PadicContext::zero() const {
    return PadicScalar::make(shared_from_this(), 0, 0, 0, n_);
}
PadicScalar PadicContext::one() const {
    return PadicScalar::make(shared_from_this(), 0, 1, 0, n_);
}
PadicScalar PadicContext::from_int(i64 n) const {
    u64 mod = modulus();
    u64 c;
    if (n >= 0)
        c = static_cast<u64>(n) % mod;
    else
        c = (mod - (static_cast<u64>(-(n + 1)) + 1) % mod) % mod;
    return PadicScalar::make(shared_from_this(), 0, c, 0, n_);
}
PadicScalar PadicContext::from_rational(i64 num, int e) const {
    PadicScalar x = from_int(num);
    if (x.is_zero()) return x;
    return PadicScalar::make(shared_from_this(), x.valuation() - e, x.c0(), x.c1(), x.prec());
}
PadicScalar PadicContext::t_gen() const {
    return PadicScalar::make(shared_from_this(), 0, 0, 1, n_);
}
PadicScalar PadicContext::zeta() const {
    return PadicScalar::make(shared_from_this(), 0, zeta_[0], zeta_[1], n_);
}
PadicScalar PadicContext::zeta_f() const { return zeta().norm(); }

PadicScalar PadicScalar::make(const Ctx& ctx, int v, u64 c0, u64 c1, int prec) {
    return normalize(ctx, v, c0, c1, prec);
}

PadicScalar PadicScalar::normalize(const Ctx& ctx, int v, u128 c0, u128 c1, int prec) {
    prec = std::min(prec, ctx->precision());
    if (prec < ctx->precision_floor())
        throw PrecisionError("precision underflow: " + std::to_string(prec) + " digit(s) left");
    u64 m = ctx->pk(prec);
    u64 a = static_cast<u64>(c0 % m), b = static_cast<u64>(c1 % m);
    if (a == 0 && b == 0) return PadicScalar(ctx, 0, {0, 0}, prec, true);
    u64 p = ctx->p();
    int k = 0;
    while (a % p == 0 && b % p == 0) { a /= p; b /= p; ++k; }
    prec -= k;
    if (prec < ctx->precision_floor())
        throw PrecisionError("precision underflow after renormalization");
    u64 mm = ctx->pk(prec);
    return PadicScalar(ctx, v + k, {a % mm, b % mm}, prec, false);
}

int PadicScalar::valuation() const {
    if (zero_) throw DomainError("valuation of exact zero");
    return v_;
}

std::array<u64, 2> PadicScalar::unit_mul(const std::array<u64, 2>& a,
                                         const std::array<u64, 2>& b, u64 mod) const {
    u64 a1 = ctx_->quad_a1() % mod, a0 = ctx_->quad_a0() % mod;
    u128 e0 = u128(a[0]) * b[0];
    u128 e1 = u128(a[0]) * b[1] + u128(a[1]) * b[0];
    u64 e2 = mulmod(a[1], b[1], mod);
    u128 r0 = e0 + u128(e2) * ((mod - a0) % mod);
    u128 r1 = e1 + u128(e2) * ((mod - a1) % mod);
    return {static_cast<u64>(r0 % mod), static_cast<u64>(r1 % mod)};
}

PadicScalar PadicScalar::operator-() const {
    if (zero_) return *this;
    u64 m = ctx_->pk(prec_);
    return PadicScalar(ctx_, v_, {c_[0] ? m - c_[0] : 0, c_[1] ? m - c_[1] : 0}, prec_, false);
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
    if (zero_) return o;
    if (o.zero_) return *this;
    const PadicScalar& x = v_ <= o.v_ ? *this : o;
    const PadicScalar& y = v_ <= o.v_ ? o : *this;
    int shift = y.v_ - x.v_;
    int abs_prec = std::min(x.v_ + x.prec_, y.v_ + y.prec_);
    int rel = abs_prec - x.v_;  // digits of the sum at valuation x.v_
    u64 m = x.ctx_->pk(rel);
    if (shift >= rel) return normalize(x.ctx_, x.v_, x.c_[0] % m, x.c_[1] % m, rel);
    u64 sh = x.ctx_->pk(shift);
    u128 c0 = u128(x.c_[0] % m) + u128(y.c_[0]) * sh;
    u128 c1 = u128(x.c_[1] % m) + u128(y.c_[1]) * sh;
    return normalize(x.ctx_, x.v_, c0, c1, rel);
}

PadicScalar PadicScalar::operator-(const PadicScalar& o) const { return *this + (-o); }

PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
    if (zero_) return ctx_ ? *this : o.ctx_->zero();
    if (o.zero_) return o;
    int prec = std::min(prec_, o.prec_);
    u64 m = ctx_->pk(prec);
    auto c = unit_mul({c_[0] % m, c_[1] % m}, {o.c_[0] % m, o.c_[1] % m}, m);
    return PadicScalar(ctx_, v_ + o.v_, c, prec, false);
}

PadicScalar PadicScalar::inv() const {
    if (zero_) throw DomainError("division by exact zero");
    u64 m = ctx_->pk(prec_);
    if (c_[1] == 0)
        return PadicScalar(ctx_, -v_, {inv_mod_ppow(c_[0], ctx_->p(), m), 0}, prec_, false);
    // (c0 + c1 t)^{-1} = sigma(x) / N(x) at unit level
    u64 a1 = ctx_->quad_a1() % m, a0 = ctx_->quad_a0() % m;
    u64 s0 = submod(c_[0], mulmod(a1, c_[1], m), m);
    u64 s1 = m - c_[1];
    u64 n = submod(mulmod(c_[0], c_[0], m), mulmod(a1, mulmod(c_[0], c_[1], m), m), m);
    n = addmod(n, mulmod(a0, mulmod(c_[1], c_[1], m), m), m);
    u64 ninv = inv_mod_ppow(n, ctx_->p(), m);
    return PadicScalar(ctx_, -v_, {mulmod(s0, ninv, m), mulmod(s1, ninv, m)}, prec_, false);
}

PadicScalar PadicScalar::operator/(const PadicScalar& o) const { return *this * o.inv(); }

PadicScalar PadicScalar::pow(i64 e) const {
    if (zero_) {
        if (e <= 0) throw DomainError("0^e for e <= 0");
        return *this;
    }
    PadicScalar base = e < 0 ? inv() : *this;
    u64 k = e < 0 ? static_cast<u64>(-(e + 1)) + 1 : static_cast<u64>(e);
    PadicScalar r(ctx_, 0, {1, 0}, prec_, false);
    while (k) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

PadicScalar PadicScalar::frobenius() const {
    if (zero_) return *this;
    u64 m = ctx_->pk(prec_);
    u64 s0 = submod(c_[0], mulmod(ctx_->quad_a1() % m, c_[1], m), m);
    u64 s1 = c_[1] ? m - c_[1] : 0;
    return PadicScalar(ctx_, v_, {s0, s1}, prec_, false);
}

PadicScalar PadicScalar::norm() const {
    if (zero_) return *this;
    PadicScalar n = *this * frobenius();
    if (n.c_[1] != 0) throw Error("norm did not land in the base field");
    return n;
}

PadicScalar PadicScalar::trace() const {
    if (zero_) return ctx_->zero();
    PadicScalar t = *this + frobenius();
    if (!t.is_zero() && t.c_[1] != 0) throw Error("trace did not land in the base field");
    return t;
}

PadicScalar PadicScalar::teichmuller() const {
    if (zero_) throw DomainError("teichmuller of zero");
    u64 p = ctx_->p();
    i64 qf = static_cast<i64>(c_[1] == 0 ? p : p * p);
    PadicScalar w(ctx_, 0, c_, prec_, false);
    for (int i = 0; i <= prec_ + 2; ++i) {
        PadicScalar w2 = w.pow(qf);
        if (w2.c_ == w.c_) break;
        w = w2;
    }
    return w;
}

PadicScalar PadicScalar::root_small_unit(u64 m) const {
    if (zero_) throw DomainError("root of zero");
    if (m == 0) throw DomainError("0th root");
    if (v_ != 0) throw DomainError("root_small_unit requires a unit");
    {
        PadicScalar dif = *this - PadicScalar(ctx_, 0, {1, 0}, prec_, false);
        if (!dif.is_zero() && dif.valuation() < 1)
            throw DomainError("root_small_unit requires v(u-1) >= 1");
    }
    u64 p = ctx_->p();
    u64 mp = 1, mu = m;
    while (mu % p == 0) { mu /= p; mp *= p; }

    PadicScalar u = *this;
    if (mu > 1) {
        // prime-to-p part: Newton iteration, quadratic convergence, no loss
        PadicScalar minv = ctx_->from_int(static_cast<i64>(mu)).inv();
        PadicScalar one(ctx_, 0, {1, 0}, u.prec(), false);
        PadicScalar r = one;
        for (int i = 0; i < u.prec() + 4; ++i) {
            PadicScalar eps = u * r.pow(-static_cast<i64>(mu)) - one;
            if (eps.is_zero()) break;
            r = r * (one + eps * minv);
        }
        u = r;
    }
    // p-part: one Newton stage per factor of p; dividing by p costs a digit
    for (u64 s = mp; s > 1; s /= p) {
        PadicScalar one(ctx_, 0, {1, 0}, u.prec(), false);
        PadicScalar dw = u - one;
        int vd = dw.is_zero() ? u.prec() : dw.valuation();
        int need = (p == 2) ? 3 : 2;  // v(u-1) > p/(p-1)
        if (vd < need)
            throw DomainError("p-th root needs v(u-1) >= " + std::to_string(need) +
                              ", have " + std::to_string(vd));
        PadicScalar r = one;
        for (int i = 0; i < u.prec() + 4; ++i) {
            PadicScalar eps = u * r.pow(-static_cast<i64>(p)) - one;
            if (eps.is_zero()) break;
            PadicScalar step =
                make(ctx_, eps.valuation() - 1, eps.c0(), eps.c1(), eps.prec() - 1);
            r = r * (PadicScalar(ctx_, 0, {1, 0}, step.prec(), false) + step);
        }
        u = r;
    }
    return u;
}

int PadicScalar::digit(int i) const {
    if (c_[1] != 0) throw DomainError("digit() needs a base-field value");
    if (zero_) return 0;
    if (i < v_) return 0;
    if (i >= v_ + prec_) throw PrecisionError("digit beyond known precision");
    return static_cast<int>((c_[0] / ctx_->pk(i - v_)) % ctx_->p());
}

bool PadicScalar::same_class(const PadicScalar& o) const {
    if (zero_ || o.zero_) return zero_ == o.zero_;
    if (v_ != o.v_) return false;
    int prec = std::min(prec_, o.prec_);
    u64 m = ctx_->pk(prec);
    return c_[0] % m == o.c_[0] % m && c_[1] % m == o.c_[1] % m;
}

bool agree_to(const PadicScalar& a, const PadicScalar& b, int digits) {
    PadicScalar d = a - b;
    if (d.is_zero()) return true;
    if (a.is_zero() || b.is_zero()) {
        const PadicScalar& nz = a.is_zero() ? b : a;
        return d.valuation() >= nz.valuation() + digits;
    }
    return d.valuation() >= std::min(a.valuation(), b.valuation()) + digits;
}

namespace {
std::string digits_le(u64 c, u64 p, int n) {
    std::string s;
    s.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        s.push_back(static_cast<char>('0' + c % p));
        c /= p;
    }
    return s;
}
u64 digits_parse(const std::string& s, u64 p) {
    u64 c = 0, mult = 1;
    for (char ch : s) {
        if (ch < '0' || ch >= static_cast<char>('0' + static_cast<char>(p)))
            throw Error("bad base-p digit in '" + s + "'");
        c += mult * static_cast<u64>(ch - '0');
        mult *= p;
    }
    return c;
}
}  // namespace

std::string PadicScalar::to_string() const {
    if (zero_) return "0";
    std::ostringstream os;
    os << ctx_->p() << "^" << v_ << " * (" << digits_le(c_[0], ctx_->p(), prec_) << " + "
       << digits_le(c_[1], ctx_->p(), prec_) << " t) mod " << ctx_->p() << "^" << prec_;
    return os.str();
}

PadicScalar PadicScalar::parse(const Ctx& ctx, const std::string& s) {
    if (s == "0") return ctx->zero();
    size_t star = s.find(" * (");
    size_t plus = s.find(" + ", star);
    size_t tpos = s.find(" t) mod ", plus);
    if (star == std::string::npos || plus == std::string::npos || tpos == std::string::npos)
        throw Error("malformed scalar string");
    std::string head = s.substr(0, star);
    size_t caret = head.find('^');
    if (caret == std::string::npos) throw Error("malformed scalar string");
    u64 p = std::stoull(head.substr(0, caret));
    if (p != ctx->p()) throw Error("prime mismatch in scalar string");
    int v = std::stoi(head.substr(caret + 1));
    std::string d0 = s.substr(star + 4, plus - (star + 4));
    std::string d1 = s.substr(plus + 3, tpos - (plus + 3));
    std::string tail = s.substr(tpos + 8);
    size_t caret2 = tail.find('^');
    if (caret2 == std::string::npos) throw Error("malformed scalar string");
    int prec = std::stoi(tail.substr(caret2 + 1));
    if (static_cast<int>(d0.size()) != prec || static_cast<int>(d1.size()) != prec)
        throw Error("digit string length does not match precision");
    return make(ctx, v, digits_parse(d0, p), digits_parse(d1, p), prec);
}

PRat PRat::of(i64 num, int e, u64 p) {
    PRat r{num, e};
    if (r.num == 0) { r.e = 0; return r; }
    while (r.e > 0 && r.num % static_cast<i64>(p) == 0) {
        r.num /= static_cast<i64>(p);
        --r.e;
    }
    return r;
}

int PRat::valuation(u64 p) const {
    if (num == 0) throw DomainError("valuation of zero rational");
    i64 n = num < 0 ? -num : num;
    return vp_of(static_cast<u64>(n), p) - e;
}

PadicScalar PRat::to_padic(const Ctx& ctx) const { return ctx->from_rational(num, e); }

std::string PRat::to_string() const {
    return e == 0 ? std::to_string(num) : std::to_string(num) + "/p^" + std::to_string(e);
}

PRat prat_sub(const PRat& a, const PRat& b, u64 p) {
    int e = std::max(a.e, b.e);
    i64 pa = static_cast<i64>(ipow(p, static_cast<unsigned>(e - a.e)));
    i64 pb = static_cast<i64>(ipow(p, static_cast<unsigned>(e - b.e)));
    return PRat::of(a.num * pa - b.num * pb, e, p);
}

PRat prat_add(const PRat& a, const PRat& b, u64 p) {
    PRat nb{-b.num, b.e};
    return prat_sub(a, nb, p);
}

bool prat_eq(const PRat& a, const PRat& b) { return a.num == b.num && a.e == b.e; }

PRat truncate_below(const PadicScalar& w, int m) {
    if (w.is_zero()) return PRat{0, 0};
    u64 p = w.ctx()->p();
    int v = w.valuation();
    if (v >= m) return PRat{0, 0};
    if (m - v > w.prec()) throw PrecisionError("truncation beyond known digits");
    i64 num = 0;
    for (int i = m - 1; i >= v; --i)
        num = num * static_cast<i64>(p) + w.digit(i);
    if (v > 0) num *= static_cast<i64>(ipow(p, static_cast<unsigned>(v)));
    return PRat::of(num, std::max(0, -v), p);
}

}  // namespace uhp
