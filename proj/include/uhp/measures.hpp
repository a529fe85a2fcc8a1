#pragma once

#include <string>
#include <vector>

#include "uhp/common.hpp"
#include "uhp/zlinalg.hpp"

namespace uhp {

// Z- or Z/d-valued measure on a finite indexed set {0,..,n-1}, determined by
// its values on singletons. ring_d == 0 means Z; values are reduced to
// [0, d) when ring_d = d > 0.
struct FiniteMeasure {
    int n = 0;
    i64 ring_d = 0;
    std::vector<i64> val;

    static FiniteMeasure zero(int n, i64 d = 0);
    static FiniteMeasure delta(int n, int z, i64 d = 0);
    static FiniteMeasure counting(int n, i64 d = 0);

    i64 total() const;
    bool is_m0() const;  // total vanishes (in the ring)
    i64 operator()(const std::vector<int>& subset) const;

    FiniteMeasure operator+(const FiniteMeasure& o) const;
    FiniteMeasure operator-(const FiniteMeasure& o) const;
    FiniteMeasure scaled(i64 k) const;
    bool operator==(const FiniteMeasure& o) const;

    FiniteMeasure reduced_mod(i64 d) const;
    std::string to_json() const;  // [[point, value], ...] with ring tag
};

// nu with reduction nu_bar: integer lift of an M0 measure mod d, total
// exactly zero (one coordinate adjusted by a multiple of d).
FiniteMeasure lift_mod_d(const FiniteMeasure& nubar);

// f_*(nu)(U) = nu(f^{-1} U); f maps {0..n-1} into {0..m-1}.
FiniteMeasure pushforward(const std::vector<int>& f, int m, const FiniteMeasure& nu);

// Finitely many permutation generators of a group acting on {0..n-1};
// g.nu = g_*(nu).
struct PermAction {
    int n = 0;
    std::vector<std::vector<int>> gens;

    void validate() const;  // each generator a bijection
    std::vector<int> orbit_of(int x) const;
    std::vector<std::vector<int>> orbits() const;
    bool transitive() const;
};

FiniteMeasure act(const std::vector<int>& g, const FiniteMeasure& nu);

// Invariant submodule M(X, ring)^G (or M0(X, ring)^G) as an abelian group:
// generators with their orders, order 0 meaning infinite (ring Z only).
// Orders form a divisor chain; trivial factors are dropped.
struct InvariantModule {
    int domain_n = 0;
    i64 ring_d = 0;
    bool m0 = false;
    std::vector<std::pair<FiniteMeasure, i64>> generators;

    i64 size() const;  // number of elements; 0 when infinite
    bool is_trivial() const { return generators.empty(); }
    bool is_cyclic() const { return generators.size() == 1; }
};

InvariantModule invariant_submodule(const PermAction& action, i64 ring_d, bool restrict_to_m0);

// Every element of a finite invariant module, by spanning the generators.
std::vector<FiniteMeasure> span_elements(const InvariantModule& mod);

}  // namespace uhp
