#include "uhp/unitclass.hpp"

#include <algorithm>
#include <sstream>

namespace uhp {

namespace {
void push_factor(std::vector<std::pair<PadicScalar, i64>>& fs, const PadicScalar& c, i64 n) {
    if (n == 0) return;
    for (auto& [a, k] : fs)
        if ((a - c).is_zero()) {
            k += n;
            return;
        }
    fs.emplace_back(c, n);
}
std::vector<std::pair<PadicScalar, i64>> canonical(std::vector<std::pair<PadicScalar, i64>> fs) {
    std::vector<std::pair<PadicScalar, i64>> out;
    for (const auto& [a, n] : fs) push_factor(out, a, n);
    out.erase(std::remove_if(out.begin(), out.end(), [](const auto& f) { return f.second == 0; }),
              out.end());
    return out;
}
}  // namespace

UnitClass UnitClass::one(const Ctx& ctx) { return UnitClass{ctx->one(), {}}; }

UnitClass UnitClass::constant(const PadicScalar& c) {
    if (c.is_zero()) throw DomainError("unit scalar must be nonzero");
    return UnitClass{c, {}};
}

UnitClass UnitClass::monomial(const PadicScalar& center, i64 exp) {
    UnitClass u{center.ctx()->one(), {}};
    push_factor(u.factors, center, exp);
    return u;
}

UnitClass UnitClass::times(const UnitClass& o) const {
    UnitClass r{lambda * o.lambda, factors};
    for (const auto& [a, n] : o.factors) push_factor(r.factors, a, n);
    r.factors = canonical(r.factors);
    return r;
}

UnitClass UnitClass::powered(i64 k) const {
    UnitClass r{lambda.pow(k), factors};
    for (auto& [a, n] : r.factors) n *= k;
    r.factors = canonical(r.factors);
    return r;
}

UnitClass UnitClass::inverse() const { return powered(-1); }

i64 UnitClass::degree() const {
    i64 s = 0;
    for (const auto& [a, n] : factors) s += n;
    return s;
}

std::string UnitClass::to_json() const {
    std::ostringstream os;
    os << "{\"lambda\":\"" << lambda.to_string() << "\",\"factors\":[";
    for (size_t i = 0; i < factors.size(); ++i)
        os << (i ? "," : "") << "{\"center\":\"" << factors[i].first.to_string()
           << "\",\"exp\":" << factors[i].second << "}";
    os << "]}";
    return os.str();
}

PadicScalar unit_eval(const UnitClass& u, const PadicScalar& z) {
    PadicScalar r = u.lambda;
    for (const auto& [a, n] : u.factors) {
        PadicScalar d = z - a;
        if (d.is_zero() && n < 0) throw DomainError("evaluation at a pole");
        r = r * d.pow(n);
    }
    return r;
}

FiniteMeasure unit_mu(const CheeseRegion& x, const UnitClass& u) {
    int nh = static_cast<int>(x.holes.size());
    int ext = x.exterior_index();
    FiniteMeasure nu = FiniteMeasure::zero(nh);
    for (const auto& [a, n] : u.factors) {
        int h = x.hole_containing(a);
        if (h < 0) throw DomainError("factor centre lies in the cheese, not in a hole");
        nu.val[static_cast<size_t>(h)] += n;
        nu.val[static_cast<size_t>(ext)] -= n;
    }
    return nu;
}

UnitClass unit_from_measure(const Ctx& ctx, const CheeseRegion& x, const FiniteMeasure& nu) {
    if (nu.ring_d != 0) throw DomainError("unit_from_measure needs an integer measure");
    if (nu.n != static_cast<int>(x.holes.size())) throw DomainError("measure/hole size mismatch");
    if (!nu.is_m0()) throw DomainError("measure must have total zero");
    UnitClass u = UnitClass::one(ctx);
    int ext = x.exterior_index();
    for (int i = 0; i < nu.n; ++i) {
        if (i == ext || nu.val[static_cast<size_t>(i)] == 0) continue;
        push_factor(u.factors, x.holes[static_cast<size_t>(i)].center,
                    nu.val[static_cast<size_t>(i)]);
    }
    return u;
}

UnitClass unit_pullback(const Mat2& g, const UnitClass& u) {
    const Ctx& ctx = u.lambda.ctx();
    PadicScalar al = g.a, be = g.b, ga = g.c, de = g.d;
    if (g.det().is_zero()) throw DomainError("pullback along a singular matrix");
    UnitClass r{u.lambda, {}};
    if (ga.is_zero()) {
        // adj(z) - a = (de/al)(z - (be + a al)/de)
        for (const auto& [a, n] : u.factors) {
            r.lambda = r.lambda * (de / al).pow(n);
            push_factor(r.factors, (al * a + be) / de, n);
        }
        r.factors = canonical(r.factors);
        return r;
    }
    i64 pole_exp = 0;
    for (const auto& [a, n] : u.factors) {
        PadicScalar w = de + a * ga;
        if (w.is_zero()) {
            // g(a) is infinity: constant numerator
            r.lambda = r.lambda * (-(be + a * al)).pow(n);
        } else {
            r.lambda = r.lambda * w.pow(n);
            push_factor(r.factors, (al * a + be) / w, n);
        }
        pole_exp += n;
    }
    if (pole_exp != 0) {
        r.lambda = r.lambda * (-ga).pow(-pole_exp);
        push_factor(r.factors, al / ga, -pole_exp);
    }
    r.factors = canonical(r.factors);
    return r;
}

std::vector<PadicScalar> sample_grid(const Ctx& ctx, const CheeseRegion& x, int want) {
    std::vector<PadicScalar> pts;
    auto consider = [&](const PadicScalar& z) {
        if (static_cast<int>(pts.size()) >= want) return;
        if (!x.contains(z)) return;
        for (const auto& w : pts)
            if ((w - z).is_zero()) return;
        pts.push_back(z);
    };
    PadicScalar zeta = ctx->zeta();
    consider(zeta);
    for (int k = -2; k <= 4 && static_cast<int>(pts.size()) < want; ++k) {
        PadicScalar pk = ctx->from_rational(1, -k);
        for (const auto& h : x.holes) {
            consider(h.center + pk * zeta);
            consider(h.center + pk * (zeta + ctx->one()));
            consider(h.center - pk * zeta);
            consider(h.center + pk * zeta * zeta);
        }
        consider(pk * zeta);
        consider(pk * zeta.inv());
    }
    if (pts.empty()) throw DomainError("sample grid is empty");
    return pts;
}

SmallUnitReport sampled_small_unit_check(const UnitClass& u,
                                         const std::vector<PadicScalar>& samples, int bound_exp) {
    if (samples.empty()) throw DomainError("empty sample set");
    SmallUnitReport rep;
    rep.worst = INT32_MAX;
    PadicScalar base = unit_eval(u, samples[0]);
    for (size_t i = 0; i < samples.size(); ++i) {
        PadicScalar dev = unit_eval(u, samples[i]) / base - u.lambda.ctx()->one();
        int v = dev.is_zero() ? INT32_MAX : dev.valuation();
        if (v < rep.worst) {
            rep.worst = v;
            rep.witness = static_cast<int>(i);
        }
    }
    rep.pass = rep.worst >= bound_exp;
    return rep;
}

LineBundleClassData class_tensor(const LineBundleClassData& a, const LineBundleClassData& b) {
    if (a.d != b.d) throw DomainError("class tensor with different torsion orders");
    return LineBundleClassData{a.u.times(b.u), a.d};
}

LineBundleClassData class_inverse(const LineBundleClassData& a) {
    return LineBundleClassData{a.u.inverse(), a.d};
}

bool class_trivial(const CheeseRegion& x, const LineBundleClassData& c) {
    if (c.d <= 0) throw DomainError("torsion order must be positive");
    u64 p = c.u.lambda.ctx()->p();
    if (static_cast<u64>(c.d) % p == 0) throw DomainError("torsion order divisible by p");
    FiniteMeasure nu = unit_mu(x, c.u);
    for (i64 v : nu.val)
        if (v % c.d != 0) return false;
    return true;
}

}  // namespace uhp
