#include "uhp/abelian.hpp"

#include <algorithm>
#include <numeric>

namespace uhp {

i64 FiniteAbelianGroup::size() const {
    i64 s = 1;
    for (i64 o : orders) s *= o;
    return s;
}

std::vector<i64> FiniteAbelianGroup::reduce(std::vector<i64> coords) const {
    if (coords.size() != orders.size()) throw DomainError("coordinate size mismatch");
    for (size_t i = 0; i < coords.size(); ++i) {
        i64 o = orders[i];
        coords[i] = ((coords[i] % o) + o) % o;
    }
    return coords;
}

FiniteAbelianGroup abelian_structure(int k, const std::vector<std::vector<i64>>& relations) {
    ZMat r(std::max<int>(1, static_cast<int>(relations.size())), k);
    for (size_t i = 0; i < relations.size(); ++i) {
        if (static_cast<int>(relations[i].size()) != k) throw DomainError("relation size mismatch");
        for (int j = 0; j < k; ++j) r.at(static_cast<int>(i), j) = relations[i][static_cast<size_t>(j)];
    }
    auto snf = smith_normal_form(r);
    FiniteAbelianGroup g;
    for (int i = 0; i < k; ++i) {
        i64 s = i < static_cast<int>(snf.diag.size()) ? snf.diag[static_cast<size_t>(i)] : 0;
        if (s == 0) throw DomainError("relations do not present a finite group");
        if (s == 1) continue;
        g.orders.push_back(s);
        // normal generator i is e_i V^{-1} over the input generators
        std::vector<i64> expr(static_cast<size_t>(k));
        for (int j = 0; j < k; ++j) expr[static_cast<size_t>(j)] = snf.vinv.at64(i, j);
        g.new_in_old.push_back(std::move(expr));
    }
    // input generator j has normal coordinates (row j of V) at the kept columns
    for (int j = 0; j < k; ++j) {
        std::vector<i64> coords;
        int kept = 0;
        for (int i = 0; i < k; ++i) {
            i64 s = i < static_cast<int>(snf.diag.size()) ? snf.diag[static_cast<size_t>(i)] : 0;
            if (s == 1) continue;
            i64 o = g.orders[static_cast<size_t>(kept)];
            coords.push_back(((snf.v.at64(j, i) % o) + o) % o);
            ++kept;
        }
        g.old_in_new.push_back(std::move(coords));
    }
    return g;
}

AbelianDlog abelian_dlog(u64 identity, const std::vector<u64>& gens,
                         const std::function<u64(u64, u64)>& mul) {
    AbelianDlog out;
    out.elements.push_back(identity);
    out.dlog[identity] = std::vector<i64>(gens.size(), 0);
    for (size_t head = 0; head < out.elements.size(); ++head) {
        u64 x = out.elements[head];
        std::vector<i64> vx = out.dlog[x];
        for (size_t j = 0; j < gens.size(); ++j) {
            u64 y = mul(x, gens[j]);
            std::vector<i64> vy = vx;
            vy[j] += 1;
            auto it = out.dlog.find(y);
            if (it == out.dlog.end()) {
                out.dlog[y] = vy;
                out.elements.push_back(y);
            } else {
                // edge relation: vy - dlog(y) kills the identity
                std::vector<i64> rel(gens.size());
                bool nonzero = false;
                for (size_t i = 0; i < gens.size(); ++i) {
                    rel[i] = vy[i] - it->second[i];
                    nonzero = nonzero || rel[i] != 0;
                }
                if (nonzero) out.relations.push_back(std::move(rel));
            }
        }
    }
    std::sort(out.relations.begin(), out.relations.end());
    out.relations.erase(std::unique(out.relations.begin(), out.relations.end()),
                        out.relations.end());
    return out;
}

bool char_eq(const CharacterData& a, const CharacterData& b) {
    return a.m == b.m && a.t == b.t;
}

CharacterData char_mul(const CharacterData& a, const CharacterData& b) {
    if (a.m != b.m || a.t.size() != b.t.size()) throw DomainError("character mismatch");
    CharacterData r = a;
    for (size_t i = 0; i < r.t.size(); ++i) r.t[i] = (r.t[i] + b.t[i]) % r.m;
    return r;
}

i64 char_order(const FiniteAbelianGroup& g, const CharacterData& chi) {
    (void)g;
    i64 o = 1;
    for (i64 t : chi.t) {
        if (t == 0) continue;
        i64 ord = chi.m / igcd(t, chi.m);
        o = o / igcd(o, ord) * ord;
    }
    return o;
}

i64 char_eval(const CharacterData& chi, const std::vector<i64>& coords) {
    if (coords.size() != chi.t.size()) throw DomainError("character eval size mismatch");
    i64 s = 0;
    for (size_t i = 0; i < coords.size(); ++i)
        s = (s + (chi.t[i] % chi.m) * (coords[i] % chi.m)) % chi.m;
    return ((s % chi.m) + chi.m) % chi.m;
}

std::vector<CharacterData> enumerate_characters(const FiniteAbelianGroup& g, i64 m) {
    // chi(gen_i) = omega^{t_i} needs t_i s_i = 0 mod m: t_i in (m/gcd) Z/m
    std::vector<i64> step(g.orders.size()), count(g.orders.size());
    for (size_t i = 0; i < g.orders.size(); ++i) {
        i64 gc = igcd(g.orders[i], m);
        step[i] = m / gc;
        count[i] = gc;
    }
    std::vector<CharacterData> out;
    std::vector<i64> idx(g.orders.size(), 0);
    for (;;) {
        CharacterData chi;
        chi.m = m;
        chi.t.resize(g.orders.size());
        for (size_t i = 0; i < idx.size(); ++i) chi.t[i] = idx[i] * step[i];
        out.push_back(std::move(chi));
        size_t i = 0;
        for (; i < idx.size(); ++i) {
            if (++idx[i] < count[i]) break;
            idx[i] = 0;
        }
        if (i == idx.size()) break;
    }
    return out;
}

CharacterData char_compose(const FiniteAbelianGroup& g, const CharacterData& chi,
                           const std::vector<std::vector<i64>>& endo) {
    if (endo.size() != g.orders.size()) throw DomainError("endomorphism size mismatch");
    CharacterData r;
    r.m = chi.m;
    r.t.resize(chi.t.size());
    for (size_t i = 0; i < g.orders.size(); ++i) r.t[i] = char_eval(chi, g.reduce(endo[i]));
    return r;
}

std::vector<std::vector<int>> char_orbits(
    const std::vector<CharacterData>& chars,
    const std::function<CharacterData(const CharacterData&)>& act) {
    std::vector<std::vector<int>> orbits;
    std::vector<bool> seen(chars.size(), false);
    for (size_t i = 0; i < chars.size(); ++i) {
        if (seen[i]) continue;
        std::vector<int> orb{static_cast<int>(i)};
        seen[i] = true;
        CharacterData img = act(chars[i]);
        for (size_t j = 0; j < chars.size(); ++j)
            if (!seen[j] && char_eq(img, chars[j])) {
                seen[j] = true;
                orb.push_back(static_cast<int>(j));
            }
        orbits.push_back(std::move(orb));
    }
    return orbits;
}

}  // namespace uhp
