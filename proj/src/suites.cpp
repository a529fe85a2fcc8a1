#include "uhp/suites.hpp"

#include <json.hpp>

#include <map>
#include <random>
#include <set>

#include "uhp/amalgam.hpp"
#include "uhp/quaternion.hpp"

namespace uhp {

using json = nlohmann::ordered_json;

void validate_config(const RunConfig& cfg) {
    if (cfg.precision < 8) throw DomainError("precision must be at least 8");
    if (cfg.depth < 0 || cfg.depth > 4) throw DomainError("depth budget is 0..4");
    if (cfg.samples < 1) throw DomainError("need at least one sample");
    bool prime = cfg.p >= 2;
    for (u64 k = 2; k * k <= cfg.p; ++k)
        if (cfg.p % k == 0) prime = false;
    if (!prime) throw DomainError("p must be prime");
}

bool SuiteReport::pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string SuiteReport::to_json(const RunConfig& cfg) const {
    json j;
    j["suite"] = suite;
    j["config"] = {{"p", cfg.p},       {"precision", cfg.precision}, {"depth", cfg.depth},
                   {"d", cfg.d},       {"e", cfg.e},                 {"level", cfg.level},
                   {"samples", cfg.samples}, {"seed", cfg.seed}};
    j["checks"] = json::array();
    for (const auto& c : checks)
        j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    if (!tables_json.empty()) j["tables"] = json::parse(tables_json);
    j["pass"] = pass();
    return j.dump();
}

std::string SuiteReport::to_summary() const {
    std::string out;
    for (const auto& c : checks)
        out += std::string(c.pass ? "PASS " : "FAIL ") + suite + "/" + c.name +
               (c.detail.empty() ? "" : " : " + c.detail) + "\n";
    return out;
}

namespace {

void add(SuiteReport& r, const std::string& name, bool pass, const std::string& detail = "") {
    r.checks.push_back({name, pass, detail});
}

SuiteReport suite_tree(const RunConfig& cfg) {
    SuiteReport r;
    r.suite = "tree";
    auto ctx = PadicContext::create(cfg.p, cfg.precision);
    u64 q = ctx->q();
    json counts = json::array();
    for (int n = 0; n <= cfg.depth; ++n) {
        auto t = SubTree::ball(q, n);
        u64 expect = (q + 1) * ipow(q, static_cast<unsigned>(n));
        counts.push_back({{"n", n},
                          {"vertices", t.verts.size()},
                          {"boundary", t.boundary().size()},
                          {"expected_boundary", expect}});
        add(r, "boundary_count_n" + std::to_string(n), t.boundary().size() == expect,
            std::to_string(t.boundary().size()) + " = (q+1)q^n");
        if (n > 0) {
            auto small = SubTree::ball(q, n - 1);
            std::map<EKey, int> fibre;
            for (const auto& e : t.boundary()) fibre[ekey(iota(t, small, e))]++;
            bool ok = fibre.size() == small.boundary().size();
            for (const auto& [k, c] : fibre) ok = ok && c == static_cast<int>(q);
            add(r, "iota_fibres_n" + std::to_string(n), ok, "all fibres of size q");
        }
    }
    json orbit_table = json::array();
    auto gens = gl2o_generators(ctx);
    for (int n = 0; n <= std::min(cfg.depth, 2); ++n) {
        auto t = SubTree::ball(q, n);
        auto orbs = edge_orbits(gens, t, t.boundary());
        json sizes = json::array();
        for (const auto& o : orbs) sizes.push_back(o.size());
        orbit_table.push_back({{"tree", "T_" + std::to_string(n)},
                               {"group", "GL2(O)"},
                               {"orbit_sizes", sizes}});
        add(r, "gl2o_single_orbit_n" + std::to_string(n), orbs.size() == 1);
    }
    auto igens = iwahori_generators(ctx);
    for (int n = 0; n <= std::min(cfg.depth, 1); ++n) {
        auto s = SubTree::double_ball(q, n);
        auto orbs = edge_orbits(igens, s, s.boundary());
        u64 expect = ipow(q, static_cast<unsigned>(n + 1));
        bool ok = orbs.size() == 2 && orbs[0].size() == expect && orbs[1].size() == expect;
        // w swaps the two orbits
        if (ok) {
            auto perm = edge_permutation(weyl_w(ctx), s, s.boundary());
            std::set<int> o1(orbs[1].begin(), orbs[1].end());
            for (int i : orbs[0]) ok = ok && o1.count(perm[static_cast<size_t>(i)]) == 1;
        }
        json sizes = json::array();
        for (const auto& o : orbs) sizes.push_back(o.size());
        orbit_table.push_back({{"tree", "S_" + std::to_string(n)},
                               {"group", "Iwahori"},
                               {"orbit_sizes", sizes}});
        add(r, "iwahori_two_orbits_S" + std::to_string(n), ok,
            "2 orbits of size q^{n+1}, swapped by w");
    }
    r.tables_json = json({{"boundary_counts", counts}, {"orbits", orbit_table}}).dump();
    return r;
}

SuiteReport suite_measures(const RunConfig& cfg) {
    SuiteReport r;
    r.suite = "measures";
    std::mt19937_64 rng(cfg.seed);
    // transitive catalogue vs the invariant-module formula
    for (int n = 2; n <= 8; ++n) {
        std::vector<int> cyc(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) cyc[static_cast<size_t>(i)] = (i + 1) % n;
        PermAction act{n, {cyc}};
        bool ok = true;
        for (i64 d = 2; d <= 12; ++d) {
            auto mod = invariant_submodule(act, d, true);
            ok = ok && mod.size() == igcd(d, n);
        }
        add(r, "cyclic_" + std::to_string(n), ok, "M0^G = Z/gcd(d,n) for d <= 12");
    }
    // trivial action: the full module
    {
        PermAction triv{5, {}};
        auto mod = invariant_submodule(triv, 6, false);
        add(r, "trivial_action_full_module", mod.size() == 6 * 6 * 6 * 6 * 6,
            "M(X, Z/6)^{1} = (Z/6)^5");
        add(r, "trivial_action_m0_over_Z",
            invariant_submodule(triv, 0, true).generators.size() == 4,
            "M0(X, Z)^{1} is free of rank |X|-1");
    }
    // pushforward functoriality on random M0 measures
    bool functorial = true;
    std::uniform_int_distribution<i64> dv(-9, 9);
    std::uniform_int_distribution<int> dt(0, 3);
    for (int iter = 0; iter < cfg.samples; ++iter) {
        FiniteMeasure nu = FiniteMeasure::zero(8);
        for (auto& v : nu.val) v = dv(rng);
        nu.val[7] -= nu.total();
        std::vector<int> f1(8), g1(4);
        for (auto& x : f1) x = dt(rng);
        for (auto& x : g1) x = dt(rng) % 2;
        auto comp = f1;
        for (auto& x : comp) x = g1[static_cast<size_t>(x)];
        functorial = functorial &&
                     pushforward(comp, 2, nu) == pushforward(g1, 2, pushforward(f1, 4, nu)) &&
                     pushforward(f1, 4, nu).is_m0();
    }
    add(r, "pushforward_functorial", functorial);
    return r;
}

SuiteReport suite_cheese(const RunConfig& cfg) {
    SuiteReport r;
    r.suite = "cheese";
    auto ctx = PadicContext::create(cfg.p, cfg.precision);
    u64 q = ctx->q();
    json holes = json::array();
    for (int n = 0; n <= cfg.depth; ++n) {
        auto tc = tree_cheese(ctx, SubTree::ball(q, n));
        u64 expect = (q + 1) * ipow(q, static_cast<unsigned>(n));
        add(r, "hole_count_n" + std::to_string(n), tc.region.holes.size() == expect);
        json hs = json::array();
        for (size_t i = 0; i < tc.region.holes.size() && i < 32; ++i) {
            const auto& h = tc.region.holes[i];
            const auto& e = tc.edges[i];
            hs.push_back({{"kind", h.exterior ? "exterior" : "interior"},
                          {"m", h.m},
                          {"center", truncate_below(h.center, h.m + (h.exterior ? 0 : 1)).to_string()},
                          {"edge_s", "(" + std::to_string(e.s.m) + ", " + e.s.b.to_string() + ")"},
                          {"edge_t", "(" + std::to_string(e.t.m) + ", " + e.t.b.to_string() + ")"}});
        }
        holes.push_back({{"n", n}, {"holes", hs}});
    }
    // equivariance on the double ball
    auto s0 = tree_cheese(ctx, SubTree::double_ball(q, 0));
    auto w = weyl_w(ctx);
    bool equi = true;
    for (const auto& e : s0.edges) {
        auto we = act_boundary_edge(w, s0.tree, e);
        equi = equi && dkey(hole_of_edge(ctx, we)) == dkey(mobius_disc(w, hole_of_edge(ctx, e)));
    }
    add(r, "w_equivariance_S0", equi);
    // the hole bijection commutes with iota on (T_1, T_0)
    auto big = tree_cheese(ctx, SubTree::ball(q, 1));
    auto small = tree_cheese(ctx, SubTree::ball(q, 0));
    bool commutes = true;
    for (size_t i = 0; i < big.edges.size(); ++i) {
        auto f = iota(big.tree, small.tree, big.edges[i]);
        int viatree = -1;
        for (size_t j = 0; j < small.edges.size(); ++j)
            if (ekey(small.edges[j]) == ekey(f)) viatree = static_cast<int>(j);
        commutes = commutes &&
                   iota_cheese(big.region, small.region, Mat2::ident(ctx),
                               static_cast<int>(i)) == viatree;
    }
    add(r, "iota_commutes_T1_T0", commutes);
    r.tables_json = json({{"holes", holes}}).dump();
    return r;
}

SuiteReport suite_units(const RunConfig& cfg) {
    SuiteReport r;
    r.suite = "units";
    auto ctx = PadicContext::create(cfg.p, cfg.precision);
    u64 q = ctx->q();
    auto tc = tree_cheese(ctx, SubTree::ball(q, std::max(1, std::min(cfg.depth, 2))));
    int nh = static_cast<int>(tc.region.holes.size());
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<i64> dv(-5, 5);
    bool section = true;
    for (int iter = 0; iter < cfg.samples; ++iter) {
        FiniteMeasure nu = FiniteMeasure::zero(nh);
        for (auto& v : nu.val) v = dv(rng);
        nu.val[static_cast<size_t>(nh - 1)] -= nu.total();
        auto u = unit_from_measure(ctx, tc.region, nu);
        section = section && unit_mu(tc.region, u) == nu;
    }
    add(r, "mu_section_roundtrip", section,
        std::to_string(cfg.samples) + " random M0 measures");
    // sampled small-unit filtration of a deep factor
    auto om0 = tree_cheese(ctx, SubTree::ball(q, 0)).region;
    auto om1 = tree_cheese(ctx, SubTree::ball(q, 1)).region;
    auto om2 = tree_cheese(ctx, SubTree::ball(q, 2)).region;
    PadicScalar deep = ctx->zero();
    for (const auto& h : om2.holes)
        if (!h.exterior && h.m == 2) deep = h.center;
    auto f = UnitClass::monomial(deep, 1);
    auto supv = [&](const CheeseRegion& x) {
        int best = INT32_MAX;
        for (const auto& z : sample_grid(ctx, x, 4 * cfg.samples))
            best = std::min(best, unit_eval(f, z).valuation());
        return best;
    };
    add(r, "subtree_filtration", supv(om0) >= supv(om1) + 1,
        "sampled sup drops by |p| per level");
    return r;
}

SuiteReport suite_cocycle(const RunConfig& cfg) {
    SuiteReport r;
    r.suite = "cocycle";
    auto ctx = PadicContext::create(cfg.p, cfg.precision);
    int n = std::min(cfg.depth, 1);
    auto b = build_alpha(ctx, n, cfg.samples, std::max(4, cfg.samples / 2), cfg.seed);
    add(r, "eta_smallness", b.eta_deviation_floor >= 1,
        "deviation floor p^-" + std::to_string(b.eta_deviation_floor));
    auto gens = sample_elements_gl2o(ctx, 6, cfg.seed + 1);
    auto due = coboundary_cocycle(b.u.powered(b.e));
    int digits = ctx->precision() - 6;
    bool zmem = true, cid = true;
    for (const auto& g : gens)
        for (const auto& z : b.grid) {
            zmem = zmem && agree_to(cocycle_point_eval(b.alpha, g, z).pow(b.d * b.e),
                                    cocycle_point_eval(due, g, z), digits);
        }
    for (size_t i = 0; i + 1 < gens.size(); ++i)
        for (const auto& z : b.grid) {
            auto lhs = cocycle_point_eval(b.alpha, gens[i].mul(gens[i + 1]), z);
            auto rhs = cocycle_point_eval(b.alpha, gens[i + 1], gens[i].inverse().mobius(z)) *
                       cocycle_point_eval(b.alpha, gens[i], z);
            cid = cid && agree_to(lhs, rhs, digits);
        }
    add(r, "alpha_de_eq_delta_ue", zmem, "alpha^{de} = delta(u^e) at samples");
    add(r, "cocycle_identity", cid);
    auto dec = triviality_decision(ctx, b.cheese.region, b.alpha, b.u, b.d, b.e, gens, b.grid);
    add(r, "main_class_nontrivial", dec == Triviality::nontrivial, to_string(dec));
    // phi_z table
    json table = json::array();
    std::mt19937_64 rng(cfg.seed + 2);
    std::uniform_int_distribution<i64> dd(0, static_cast<i64>(ctx->modulus() - 1));
    auto zeta = ctx->zeta();
    bool phimatch = true;
    int rows = 0;
    while (rows < cfg.samples) {
        auto a = ctx->from_int(dd(rng));
        auto c = ctx->from_int(dd(rng));
        auto jz = a - c * zeta;
        if (jz.is_zero() || jz.valuation() != 0) continue;
        auto g = stabilizer_matrix(zeta, a, c);
        auto val = phi_z_eval(b.alpha, g, zeta);
        auto expect = jz.teichmuller().pow(b.qn);
        phimatch = phimatch && val.same_class(expect);
        json row;
        row["a"] = a.to_string();
        row["c"] = c.to_string();
        row["phi"] = val.to_string();
        row["expected"] = expect.to_string();
        table.push_back(row);
        ++rows;
    }
    add(r, "phi_z_matches_jz_hat_qn", phimatch);
    r.tables_json =
        json({{"u", json::parse(b.u.to_json())}, {"phi_z_table", table}}).dump();
    return r;
}

SuiteReport suite_chars(const RunConfig& cfg) {
    SuiteReport r;
    r.suite = "chars";
    auto ctx = PadicContext::create(cfg.p, cfg.precision);
    i64 q = static_cast<i64>(ctx->q());
    auto lvl = unit_group_structure(ctx, cfg.level);
    json qn = json::array();
    for (size_t i = 0; i < lvl.quotient.orders.size(); ++i)
        qn.push_back(lvl.quotient.orders[i]);
    auto chars = enumerate_characters(lvl.quotient, mu_torsion_order(ctx));
    i64 fullhom = lvl.quotient.size();
    add(r, "q1_character_count",
        cfg.level > 1 || static_cast<i64>(chars.size()) == q * q - 1,
        std::to_string(chars.size()) + " characters over K = L");
    add(r, "missing_characters_reported", true,
        std::to_string(fullhom - static_cast<i64>(chars.size())) +
            " characters need a larger K");
    i64 fixed = 0;
    auto orbits = char_orbits(chars, [&](const CharacterData& c) {
        return char_compose(lvl.quotient, c, lvl.sigma_endo);
    });
    for (const auto& o : orbits)
        if (o.size() == 1) ++fixed;
    if (cfg.level == 1)
        add(r, "sigma_fixed_count", fixed == q - 1, std::to_string(fixed) + " sigma-fixed");
    std::vector<int> orbit_label(chars.size(), -1);
    for (size_t oi = 0; oi < orbits.size(); ++oi)
        for (int ci : orbits[oi]) orbit_label[static_cast<size_t>(ci)] = static_cast<int>(oi);
    json table = json::array();
    for (size_t ci = 0; ci < chars.size() && ci < 64; ++ci) {
        json t = json::array();
        for (i64 v : chars[ci].t) t.push_back(v);
        table.push_back({{"t", t},
                         {"order", char_order(lvl.quotient, chars[ci])},
                         {"sigma_orbit", orbit_label[ci]}});
    }
    // Riehm report at levels within budget
    json riehm = json::array();
    for (int m = 1; m <= (ctx->p() == 2 ? 3 : 2); ++m) {
        auto rep = quaternion_finite_check(ctx, m);
        riehm.push_back({{"m", m},
                         {"group_order", rep.group_order},
                         {"commutator_order", rep.commutator_order},
                         {"kernel_order", rep.kernel_order},
                         {"equal", rep.equal}});
        add(r, "riehm_m" + std::to_string(m), rep.equal);
    }
    r.tables_json = json({{"Q_n_orders", qn}, {"characters", table}, {"riehm", riehm}}).dump();
    return r;
}

SuiteReport suite_amalgam(const RunConfig& cfg) {
    SuiteReport r;
    r.suite = "amalgam";
    auto ctx = PadicContext::create(cfg.p, cfg.precision);
    auto ac = amalgam_context(ctx);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> len(0, 6);
    std::uniform_int_distribution<int> side(0, 1), rep(0, static_cast<int>(ac.reps_a.size()) - 1);
    std::uniform_int_distribution<i64> d(0, static_cast<i64>(ctx->modulus() - 1));
    std::vector<int> hist(7, 0);
    bool round = true;
    for (int iter = 0; iter < 100; ++iter) {
        AmalgamWord w;
        int L = len(rng);
        bool aside = side(rng) == 0;
        for (int i = 0; i < L; ++i) {
            w.factors.push_back({aside, rep(rng)});
            aside = !aside;
        }
        for (;;) {
            i64 c = d(rng);
            c -= c % static_cast<i64>(ctx->p());
            Mat2 h = Mat2::from_int(ctx, d(rng), d(rng), c, d(rng));
            if (h.in_iwahori()) {
                w.tail = h;
                break;
            }
        }
        auto g = amalgam_multiply(ac, w);
        auto back = amalgam_decompose(ac, g);
        bool same = back.factors.size() == w.factors.size() && mat_eq(back.tail, w.tail);
        for (size_t i = 0; same && i < w.factors.size(); ++i)
            same = w.factors[i].a_side == back.factors[i].a_side &&
                   w.factors[i].rep == back.factors[i].rep;
        round = round && same && edge_displacement(ctx, g) == L;
        hist[static_cast<size_t>(L)]++;
    }
    add(r, "word_round_trips", round, "100 canonical words, length <= 6");
    bool norm = true;
    int done = 0;
    while (done < 20) {
        auto t = ctx->from_int(d(rng));
        if (t.is_zero() || t.valuation() != 0) continue;
        norm = norm && norm_solve(ctx, t).norm().same_class(t);
        ++done;
    }
    add(r, "norm_surjectivity", norm, "20 random units");
    json h = json::array();
    for (size_t i = 0; i < hist.size(); ++i) h.push_back({{"length", i}, {"count", hist[i]}});
    r.tables_json = json({{"length_histogram", h}}).dump();
    return r;
}

SuiteReport suite_theorem_a(const RunConfig& cfg) {
    SuiteReport r;
    r.suite = "theorem-a";
    auto ctx = PadicContext::create(cfg.p, cfg.precision);
    i64 q = static_cast<i64>(ctx->q());
    int n = std::min(cfg.depth, 1);
    auto b = build_alpha(ctx, n, cfg.samples, std::max(4, cfg.samples / 2), cfg.seed);
    auto lvl = unit_group_structure(ctx, cfg.level);
    auto tr = theoremA_transport(b, lvl);
    add(r, "transport_order", tr.order == q * q - 1,
        "character of order " + std::to_string(tr.order));
    add(r, "not_sigma_fixed", !tr.sigma_fixed);
    // phi_z table on sampled stabilizer elements, against teich(a - c z)^{q^n}
    json table = json::array();
    auto zeta = ctx->zeta();
    std::mt19937_64 rng(cfg.seed + 5);
    std::uniform_int_distribution<i64> dd(0, static_cast<i64>(ctx->modulus() - 1));
    bool phimatch = true;
    int rows = 0;
    while (rows < cfg.samples) {
        auto a = ctx->from_int(dd(rng));
        auto c = ctx->from_int(dd(rng));
        auto jz = a - c * zeta;
        if (jz.is_zero() || jz.valuation() != 0) continue;
        auto g = stabilizer_matrix(zeta, a, c);
        auto val = phi_z_eval(b.alpha, g, zeta);
        phimatch = phimatch && val.same_class(jz.teichmuller().pow(b.qn));
        json row;
        row["a"] = a.to_string();
        row["c"] = c.to_string();
        row["phi"] = val.to_string();
        table.push_back(row);
        ++rows;
    }
    add(r, "phi_z_matches_jz_hat_qn", phimatch);
    json chi = json::array(), chis = json::array();
    for (i64 t : tr.chi.t) chi.push_back(t);
    for (i64 t : tr.chi_sigma.t) chis.push_back(t);
    r.tables_json = json({{"phi_z_table", table},
                          {"chi", chi},
                          {"chi_sigma", chis},
                          {"omega_order", tr.chi.m}})
                        .dump();
    return r;
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"tree", "measures", "cheese", "units", "cocycle", "chars", "amalgam", "theorem-a"};
}

SuiteReport run_suite(const std::string& name, const RunConfig& cfg) {
    validate_config(cfg);
    if (name == "tree") return suite_tree(cfg);
    if (name == "measures") return suite_measures(cfg);
    if (name == "cheese") return suite_cheese(cfg);
    if (name == "units") return suite_units(cfg);
    if (name == "cocycle") return suite_cocycle(cfg);
    if (name == "chars") return suite_chars(cfg);
    if (name == "amalgam") return suite_amalgam(cfg);
    if (name == "theorem-a") return suite_theorem_a(cfg);
    throw DomainError("unknown suite '" + name + "'");
}

}  // namespace uhp
