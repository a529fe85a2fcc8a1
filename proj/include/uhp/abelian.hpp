#pragma once

#include <functional>
#include <map>
#include <vector>

#include "uhp/zlinalg.hpp"

namespace uhp {

// Finite abelian group in normal form, from generators and a relation
// lattice: orders form a divisor chain, trivial factors dropped.
struct FiniteAbelianGroup {
    std::vector<i64> orders;
    // normal generator i as an exponent vector over the input generators
    std::vector<std::vector<i64>> new_in_old;
    // input generator j in normal coordinates
    std::vector<std::vector<i64>> old_in_new;

    i64 size() const;
    size_t rank() const { return orders.size(); }
    std::vector<i64> reduce(std::vector<i64> coords) const;  // mod orders
};

// Z^k modulo the row span of the relations; throws if the quotient is
// infinite.
FiniteAbelianGroup abelian_structure(int k, const std::vector<std::vector<i64>>& relations);

// Discrete-log table of a concrete finite abelian group generated by gens:
// one exponent vector per element plus the edge relations that present the
// kernel lattice.
struct AbelianDlog {
    std::vector<u64> elements;
    std::map<u64, std::vector<i64>> dlog;
    std::vector<std::vector<i64>> relations;
};

AbelianDlog abelian_dlog(u64 identity, const std::vector<u64>& gens,
                         const std::function<u64(u64, u64)>& mul);

// Character into the cyclic group of order m: chi(normal generator i) =
// omega^{t_i} for a fixed generator omega of mu_m.
struct CharacterData {
    std::vector<i64> t;
    i64 m = 1;
};

bool char_eq(const CharacterData& a, const CharacterData& b);
CharacterData char_mul(const CharacterData& a, const CharacterData& b);
i64 char_order(const FiniteAbelianGroup& g, const CharacterData& chi);
// chi evaluated at the class with the given normal coordinates: exponent of omega
i64 char_eval(const CharacterData& chi, const std::vector<i64>& coords);

// All characters of g with values in mu_m; count is prod gcd(order_i, m).
std::vector<CharacterData> enumerate_characters(const FiniteAbelianGroup& g, i64 m);

// chi composed with an endomorphism given by its matrix on normal
// coordinates (row i = image of normal generator i).
CharacterData char_compose(const FiniteAbelianGroup& g, const CharacterData& chi,
                           const std::vector<std::vector<i64>>& endo);

// Orbit partition of a character list under an involution chi -> chi'.
std::vector<std::vector<int>> char_orbits(const std::vector<CharacterData>& chars,
                                          const std::function<CharacterData(const CharacterData&)>& act);

}  // namespace uhp
