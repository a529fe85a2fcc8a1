#include "uhp/measures.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace uhp {

namespace {
i64 norm_mod(i64 x, i64 d) {
    if (d == 0) return x;
    i64 r = x % d;
    return r < 0 ? r + d : r;
}
}  // namespace

FiniteMeasure FiniteMeasure::zero(int n, i64 d) {
    return FiniteMeasure{n, d, std::vector<i64>(static_cast<size_t>(n), 0)};
}

FiniteMeasure FiniteMeasure::delta(int n, int z, i64 d) {
    FiniteMeasure m = zero(n, d);
    if (z < 0 || z >= n) throw DomainError("delta: point outside domain");
    m.val[static_cast<size_t>(z)] = norm_mod(1, d);
    return m;
}

FiniteMeasure FiniteMeasure::counting(int n, i64 d) {
    FiniteMeasure m = zero(n, d);
    for (auto& v : m.val) v = norm_mod(1, d);
    return m;
}

i64 FiniteMeasure::total() const {
    i64 t = 0;
    for (i64 v : val) t = norm_mod(t + v, ring_d);
    return t;
}

bool FiniteMeasure::is_m0() const { return total() == 0; }

i64 FiniteMeasure::operator()(const std::vector<int>& subset) const {
    i64 t = 0;
    for (int z : subset) {
        if (z < 0 || z >= n) throw DomainError("subset point outside domain");
        t = norm_mod(t + val[static_cast<size_t>(z)], ring_d);
    }
    return t;
}

FiniteMeasure FiniteMeasure::operator+(const FiniteMeasure& o) const {
    if (n != o.n || ring_d != o.ring_d) throw DomainError("measure ring/domain mismatch");
    FiniteMeasure r = *this;
    for (int i = 0; i < n; ++i)
        r.val[static_cast<size_t>(i)] =
            norm_mod(r.val[static_cast<size_t>(i)] + o.val[static_cast<size_t>(i)], ring_d);
    return r;
}

FiniteMeasure FiniteMeasure::operator-(const FiniteMeasure& o) const {
    return *this + o.scaled(-1);
}

FiniteMeasure FiniteMeasure::scaled(i64 k) const {
    FiniteMeasure r = *this;
    for (auto& v : r.val) v = norm_mod(v * k, ring_d);
    return r;
}

bool FiniteMeasure::operator==(const FiniteMeasure& o) const {
    return n == o.n && ring_d == o.ring_d && val == o.val;
}

FiniteMeasure FiniteMeasure::reduced_mod(i64 d) const {
    if (d <= 0) throw DomainError("reduced_mod needs d > 0");
    if (ring_d != 0 && ring_d % d != 0) throw DomainError("no reduction map Z/" +
                                                          std::to_string(ring_d) + " -> Z/" +
                                                          std::to_string(d));
    FiniteMeasure r = *this;
    r.ring_d = d;
    for (auto& v : r.val) v = norm_mod(v, d);
    return r;
}

std::string FiniteMeasure::to_json() const {
    std::ostringstream os;
    os << "{\"ring\":\"" << (ring_d == 0 ? std::string("Z") : "Z/" + std::to_string(ring_d))
       << "\",\"values\":[";
    for (int i = 0; i < n; ++i)
        os << (i ? "," : "") << "[" << i << "," << val[static_cast<size_t>(i)] << "]";
    os << "]}";
    return os.str();
}

FiniteMeasure lift_mod_d(const FiniteMeasure& nubar) {
    if (nubar.ring_d <= 0) throw DomainError("lift_mod_d input must be mod-d");
    if (!nubar.is_m0()) throw DomainError("lift_mod_d input not in M0");
    FiniteMeasure nu = nubar;
    i64 d = nu.ring_d;
    nu.ring_d = 0;
    for (auto& v : nu.val) {
        v = ((v % d) + d) % d;
        if (2 * v > d) v -= d;  // balanced representative
    }
    i64 t = std::accumulate(nu.val.begin(), nu.val.end(), i64(0));
    if (nu.n > 0) nu.val[0] -= t;  // t is a multiple of d
    return nu;
}

FiniteMeasure pushforward(const std::vector<int>& f, int m, const FiniteMeasure& nu) {
    if (static_cast<int>(f.size()) != nu.n) throw DomainError("pushforward: map size mismatch");
    FiniteMeasure r = FiniteMeasure::zero(m, nu.ring_d);
    for (int i = 0; i < nu.n; ++i) {
        int y = f[static_cast<size_t>(i)];
        if (y < 0 || y >= m) throw DomainError("pushforward: image outside codomain");
        r.val[static_cast<size_t>(y)] =
            r.val[static_cast<size_t>(y)] + nu.val[static_cast<size_t>(i)];
        if (nu.ring_d) r.val[static_cast<size_t>(y)] %= nu.ring_d;
    }
    return r;
}

void PermAction::validate() const {
    for (const auto& g : gens) {
        if (static_cast<int>(g.size()) != n) throw DomainError("generator size mismatch");
        std::vector<bool> seen(static_cast<size_t>(n), false);
        for (int x : g) {
            if (x < 0 || x >= n || seen[static_cast<size_t>(x)])
                throw DomainError("generator is not a bijection");
            seen[static_cast<size_t>(x)] = true;
        }
    }
}

std::vector<int> PermAction::orbit_of(int x) const {
    std::vector<int> orb{x};
    std::vector<bool> seen(static_cast<size_t>(n), false);
    seen[static_cast<size_t>(x)] = true;
    for (size_t head = 0; head < orb.size(); ++head)
        for (const auto& g : gens) {
            int y = g[static_cast<size_t>(orb[head])];
            if (!seen[static_cast<size_t>(y)]) {
                seen[static_cast<size_t>(y)] = true;
                orb.push_back(y);
            }
        }
    std::sort(orb.begin(), orb.end());
    return orb;
}

std::vector<std::vector<int>> PermAction::orbits() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(static_cast<size_t>(n), false);
    for (int x = 0; x < n; ++x) {
        if (seen[static_cast<size_t>(x)]) continue;
        auto orb = orbit_of(x);
        for (int y : orb) seen[static_cast<size_t>(y)] = true;
        out.push_back(std::move(orb));
    }
    return out;
}

bool PermAction::transitive() const { return orbits().size() == 1; }

FiniteMeasure act(const std::vector<int>& g, const FiniteMeasure& nu) {
    FiniteMeasure r = nu;
    for (int i = 0; i < nu.n; ++i)
        r.val[static_cast<size_t>(g[static_cast<size_t>(i)])] = nu.val[static_cast<size_t>(i)];
    return r;
}

i64 InvariantModule::size() const {
    i64 s = 1;
    for (const auto& [g, o] : generators) {
        if (o == 0) return 0;
        s *= o;
    }
    return s;
}

InvariantModule invariant_submodule(const PermAction& action, i64 ring_d, bool restrict_to_m0) {
    action.validate();
    const int n = action.n;
    // fixedness: nu(g^{-1} x) = nu(x) for all generators g and points x
    int m = static_cast<int>(action.gens.size()) * n + (restrict_to_m0 ? 1 : 0);
    ZMat a(std::max(m, 1), n);
    int row = 0;
    for (const auto& g : action.gens) {
        std::vector<int> ginv(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) ginv[static_cast<size_t>(g[static_cast<size_t>(i)])] = i;
        for (int x = 0; x < n; ++x, ++row) {
            a.at(row, ginv[static_cast<size_t>(x)]) += 1;
            a.at(row, x) -= 1;
        }
    }
    if (restrict_to_m0) {
        for (int j = 0; j < n; ++j) a.at(row, j) = 1;
        ++row;
    }
    auto snf = smith_normal_form(a);

    InvariantModule mod;
    mod.domain_n = n;
    mod.ring_d = ring_d;
    mod.m0 = restrict_to_m0;
    for (int i = 0; i < n; ++i) {
        i64 si = i < static_cast<int>(snf.diag.size()) ? snf.diag[static_cast<size_t>(i)] : 0;
        i64 order;
        i64 coeff;  // generator = coeff * (column i of V)
        if (ring_d == 0) {
            if (si != 0) continue;  // torsion cannot fix over Z beyond the lattice
            order = 0;
            coeff = 1;
        } else {
            i64 g = igcd(si, ring_d);
            if (g == 0) g = ring_d;
            if (g <= 1) continue;
            order = g;
            coeff = ring_d / g;
        }
        FiniteMeasure gen = FiniteMeasure::zero(n, ring_d);
        for (int j = 0; j < n; ++j) {
            zint x = zint(coeff) * snf.v.at(j, i);
            if (ring_d) x = ((x % ring_d) + ring_d) % ring_d;
            gen.val[static_cast<size_t>(j)] = static_cast<i64>(x);
        }
        mod.generators.emplace_back(std::move(gen), order);
    }
    return mod;
}

std::vector<FiniteMeasure> span_elements(const InvariantModule& mod) {
    if (mod.size() == 0) throw DomainError("span_elements on an infinite module");
    std::vector<FiniteMeasure> out;
    size_t k = mod.generators.size();
    std::vector<i64> e(k, 0);
    for (;;) {
        FiniteMeasure cur = FiniteMeasure::zero(mod.domain_n, mod.ring_d);
        for (size_t i = 0; i < k; ++i)
            cur = cur + mod.generators[i].first.scaled(e[i]);
        out.push_back(std::move(cur));
        size_t i = 0;
        for (; i < k; ++i) {
            if (++e[i] < mod.generators[i].second) break;
            e[i] = 0;
        }
        if (i == k) break;
    }
    return out;
}

}  // namespace uhp
