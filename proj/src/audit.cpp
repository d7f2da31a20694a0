#include "fairdiv/audit.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <exception>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <thread>

namespace fairdiv::audit {

namespace {

std::string vec_str(const SizeVector& v) {
    std::string s = "(";
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(v[k]);
    }
    return s + ")";
}

std::string rvec_str(const std::vector<Rat>& v) {
    std::string s = "(";
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) s += ",";
        s += rat_str(v[k]);
    }
    return s + ")";
}

std::string agent_tag(int i) { return "a" + std::to_string(i); }

bool enumerable(const Profile& p, const EnumBudget& budget) {
    return allocation_count(p.n(), p.m(), false, budget.max_allocations) >= 0;
}

AuditReport skipped(std::string property, const Profile& p, std::string why) {
    AuditReport r;
    r.property = std::move(property);
    r.instance = profile_descriptor(p);
    r.verdict = Verdict::skipped_too_large;
    r.detail = std::move(why);
    return r;
}

} // namespace

std::string verdict_str(Verdict v) {
    switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::skipped_too_large: return "skipped-too-large";
    }
    return "?";
}

std::string profile_descriptor(const Profile& p) {
    std::string s = "n=" + std::to_string(p.n()) + " m=" + std::to_string(p.m()) + " [";
    for (int i = 0; i < p.n(); ++i) {
        if (i) s += ",";
        s += val_class_str(p[i].cls());
    }
    return s + "]";
}

std::vector<Allocation> enumerate_allocations(const Profile& p, bool complete_only,
                                              const EnumBudget& budget) {
    std::vector<Allocation> out;
    for_each_allocation(p.n(), p.m(), complete_only, budget,
                        [&](const Allocation& a) { out.push_back(a); });
    return out;
}

void for_each_clean(
    const Profile& p, const EnumBudget& budget,
    const std::function<void(const std::vector<ItemSet>&, const SizeVector&)>& fn) {
    const int n = p.n(), m = p.m();
    if (allocation_count(n, m, false, budget.max_allocations) < 0)
        throw EnumerationLimitError(
            "clean-allocation walk over " + std::to_string(n) + " agents and " +
            std::to_string(m) +
            " items exceeds the enumeration budget (raise --max-enum / FAIRDIV_MAX_ENUM)");
    if (!p.all_matroidal()) {
        for_each_allocation(n, m, false, budget, [&](const Allocation& a) {
            if (is_clean(p, a)) fn(a.bundles(), sizes(a));
        });
        return;
    }
    // Matroidal: independence is prefix-closed, so a depth-first walk over
    // items can prune the moment a bundle would go dependent.
    struct Walker {
        const Profile& q;
        int n, m;
        const std::function<void(const std::vector<ItemSet>&, const SizeVector&)>& fn;
        std::vector<ItemSet> bund;
        SizeVector sz;
        void rec(int e) {
            if (e == m) {
                fn(bund, sz);
                return;
            }
            rec(e + 1); // leave e in the pool
            for (int i = 0; i < n; ++i) {
                ItemSet nb = bund[i].with(e);
                if (!q[i].is_independent(nb)) continue;
                bund[i] = nb;
                ++sz[i];
                rec(e + 1);
                bund[i] = bund[i].without(e);
                --sz[i];
            }
        }
    };
    const Profile q = p.tabulated();
    Walker w{q, n, m, fn, std::vector<ItemSet>(n), SizeVector(n, 0)};
    w.rec(0);
}

std::vector<Allocation> brute_clean_allocations(const Profile& p, const EnumBudget& budget) {
    std::vector<Allocation> out;
    const int m = p.m();
    for_each_clean(p, budget, [&](const std::vector<ItemSet>& bund, const SizeVector&) {
        out.emplace_back(m, bund);
    });
    return out;
}

std::vector<Allocation> brute_cld(const Profile& p, const EnumBudget& budget) {
    require(p.all_matroidal(), "the Lorenz dominating set is defined for matroid-rank profiles");
    std::set<SizeVector> seen;
    for_each_clean(p, budget, [&](const std::vector<ItemSet>&, const SizeVector& sz) {
        SizeVector s = sz;
        std::sort(s.begin(), s.end());
        seen.insert(std::move(s));
    });
    std::optional<SizeVector> best;
    for (const auto& cand : seen) {
        bool top = true;
        for (const auto& other : seen) {
            LorenzRel rel = lorenz_compare(cand, other);
            if (rel != LorenzRel::dominates && rel != LorenzRel::equal) {
                top = false;
                break;
            }
        }
        if (top) {
            best = cand;
            break;
        }
    }
    std::vector<Allocation> out;
    if (!best) return out;
    const int m = p.m();
    for_each_clean(p, budget, [&](const std::vector<ItemSet>& bund, const SizeVector& sz) {
        SizeVector s = sz;
        std::sort(s.begin(), s.end());
        if (s == *best) out.emplace_back(m, bund);
    });
    return out;
}

// --- moneyless fairness ----------------------------------------------------

AuditReport check_efx(const Profile& p, const Allocation& a) {
    AuditReport r;
    r.property = "efx";
    r.instance = profile_descriptor(p);
    for (int i = 0; i < p.n(); ++i)
        for (int j = 0; j < p.n(); ++j) {
            if (j == i) continue;
            Rat own = p[i](a[i]);
            if (own >= p[i](a[j])) continue;
            for (int e : a[j]) {
                Rat rest = p[i](a[j].without(e));
                if (own < rest) {
                    r.verdict = Verdict::violated;
                    r.witness = agent_tag(i) + " values " + agent_tag(j) + "'s bundle minus e" +
                                std::to_string(e) + " at " + rat_str(rest) + " > own " +
                                rat_str(own) + " in " + a.str();
                    return r;
                }
            }
        }
    r.detail = "all ordered agent pairs on " + a.str();
    return r;
}

AuditReport check_ef1(const Profile& p, const Allocation& a) {
    AuditReport r;
    r.property = "ef1";
    r.instance = profile_descriptor(p);
    for (int i = 0; i < p.n(); ++i)
        for (int j = 0; j < p.n(); ++j) {
            if (j == i) continue;
            Rat own = p[i](a[i]);
            if (own >= p[i](a[j])) continue;
            bool saved = false;
            for (int e : a[j]) {
                if (own >= p[i](a[j].without(e))) {
                    saved = true;
                    break;
                }
            }
            if (!saved) {
                r.verdict = Verdict::violated;
                r.witness = agent_tag(i) + " envies " + agent_tag(j) +
                            " beyond every single item in " + a.str();
                return r;
            }
        }
    r.detail = "all ordered agent pairs on " + a.str();
    return r;
}

AuditReport check_star_condition(const Profile& p, const Allocation& a) {
    require(p.all_matroidal(), "the tight-envy condition applies to matroid-rank profiles");
    AuditReport r;
    r.property = "tight-envy-arcs";
    r.instance = profile_descriptor(p);
    EnvyGraph g = build_envy_graph(p, a);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            if (j == i || g.w[i][j] <= 0) continue;
            int vij = p[i].rank(a[j]);
            int vii = p[i].rank(a[i]);
            if (vij != a[j].count() || vij != vii + 1) {
                r.verdict = Verdict::violated;
                r.witness = "arc " + agent_tag(i) + "->" + agent_tag(j) + ": v_i(A_j)=" +
                            std::to_string(vij) + " |A_j|=" + std::to_string(a[j].count()) +
                            " v_i(A_i)=" + std::to_string(vii) + " in " + a.str();
                return r;
            }
        }
    r.detail = "every positive envy arc is tight on " + a.str();
    return r;
}

// --- misreport families ----------------------------------------------------

MisreportFamily restriction_misreports(const Profile& p) {
    const int m = p.m();
    require(m <= 12, "restriction misreports need m <= 12");
    MisreportFamily out;
    const std::uint64_t masks = std::uint64_t{1} << m;
    for (int i = 0; i < p.n(); ++i)
        for (std::uint64_t x = 0; x < masks; ++x) {
            ItemSet X(x);
            out.push_back({i, p[i].restrict(X).with_label("v|" + X.str()),
                           agent_tag(i) + " reports v|" + X.str()});
        }
    return out;
}

namespace {

// All matroids on a tiny ground set, as independence families over bitmasked
// subsets: nonempty, downward closed, and augmentable. Counts are pinned so a
// silent enumeration bug cannot shrink the family.
std::vector<std::vector<int>> all_matroid_rank_tables(int m) {
    require(m >= 0 && m <= 4, "exhaustive matroid families need m <= 4");
    const int subsets = 1 << m;
    std::vector<std::vector<int>> tables;
    for (std::uint32_t fam = 0; fam < (std::uint32_t{1} << subsets); ++fam) {
        if (!(fam & 1)) continue; // empty set must be independent
        auto indep = [&](int s) { return (fam >> s) & 1u; };
        bool ok = true;
        for (int s = 0; s < subsets && ok; ++s) {
            if (!indep(s)) continue;
            for (int e = 0; e < m && ok; ++e)
                if ((s >> e) & 1)
                    if (!indep(s & ~(1 << e))) ok = false; // downward closure
        }
        for (int x = 0; x < subsets && ok; ++x) {
            if (!indep(x)) continue;
            for (int y = 0; y < subsets && ok; ++y) {
                if (!indep(y) || std::popcount(unsigned(x)) >= std::popcount(unsigned(y)))
                    continue;
                bool grew = false;
                for (int e = 0; e < m && !grew; ++e)
                    if (((y >> e) & 1) && !((x >> e) & 1) && indep(x | (1 << e))) grew = true;
                if (!grew) ok = false; // augmentation
            }
        }
        if (!ok) continue;
        std::vector<int> rank(subsets, 0);
        for (int s = 1; s < subsets; ++s) {
            if (indep(s)) {
                rank[s] = std::popcount(unsigned(s));
                continue;
            }
            int best = 0;
            for (int e = 0; e < m; ++e)
                if ((s >> e) & 1) best = std::max(best, rank[s & ~(1 << e)]);
            rank[s] = best;
        }
        tables.push_back(std::move(rank));
    }
    static constexpr int expected[] = {1, 2, 5, 16, 68};
    check_invariant(static_cast<int>(tables.size()) == expected[m],
                    "matroid enumeration count mismatch");
    return tables;
}

} // namespace

MisreportFamily matroid_misreports(const Profile& p) {
    const int m = p.m();
    auto tables = all_matroid_rank_tables(m);
    MisreportFamily out;
    for (int i = 0; i < p.n(); ++i)
        for (std::size_t k = 0; k < tables.size(); ++k) {
            auto v = Valuation::matroidal(Matroid::from_rank_table(m, tables[k]))
                         .with_label("matroid#" + std::to_string(k));
            out.push_back({i, std::move(v),
                           agent_tag(i) + " reports matroid#" + std::to_string(k)});
        }
    return out;
}

MisreportFamily additive_grid_misreports(const Profile& p, int per_agent,
                                         unsigned long long seed) {
    require(per_agent >= 1, "per_agent must be >= 1");
    const int m = p.m();
    const Rat grid[] = {Rat(0), Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1)};
    std::mt19937_64 rng(seed);
    MisreportFamily out;
    for (int i = 0; i < p.n(); ++i)
        for (int k = 0; k < per_agent; ++k) {
            std::vector<Rat> vals(m);
            for (int e = 0; e < m; ++e) vals[e] = grid[rng() % 5];
            std::string label = "grid#" + std::to_string(k);
            out.push_back({i, Valuation::additive(std::move(vals)).with_label(label),
                           agent_tag(i) + " reports " + label});
        }
    return out;
}

// --- deviation audits --------------------------------------------------------

std::vector<Deviation> find_deviations(const Mechanism& mech, const Profile& p,
                                       const MisreportFamily& family, int jobs) {
    require(jobs >= 1, "jobs must be >= 1");
    const Outcome truthful = mech(p);
    std::vector<std::optional<Deviation>> slot(family.size());
    auto run_one = [&](std::size_t idx) {
        const Misreport& mr = family[idx];
        Outcome o = mech(p.with(mr.agent, mr.valuation));
        // Utility under the TRUE valuation of the lied-about bundle.
        Rat lying = p[mr.agent](o.allocation[mr.agent]) + o.subsidies[mr.agent];
        if (lying > truthful.utilities[mr.agent])
            slot[idx] = Deviation{mr.agent, mr.label, truthful.utilities[mr.agent], lying};
    };
    const std::size_t count = family.size();
    if (jobs == 1 || count < 2) {
        for (std::size_t idx = 0; idx < count; ++idx) run_one(idx);
    } else {
        const int workers = std::min<int>(jobs, static_cast<int>(count));
        std::vector<std::exception_ptr> errs(workers);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&, t] {
                try {
                    for (std::size_t idx = t; idx < count; idx += workers) run_one(idx);
                } catch (...) {
                    errs[t] = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        for (auto& e : errs)
            if (e) std::rethrow_exception(e);
    }
    std::vector<Deviation> out;
    for (auto& s : slot)
        if (s) out.push_back(std::move(*s));
    return out;
}

AuditReport deviation_audit(const Mechanism& mech, const Profile& p,
                            const MisreportFamily& family, int jobs) {
    AuditReport r;
    r.instance = profile_descriptor(p);
    const Outcome truthful = mech(p);
    r.property = "truthfulness(" + truthful.mechanism + ")";
    auto devs = find_deviations(mech, p, family, jobs);
    if (devs.empty()) {
        r.detail = "no profitable misreport among " + std::to_string(family.size()) +
                   " candidates";
        return r;
    }
    const Deviation* worst = &devs.front();
    for (const auto& d : devs)
        if (d.lying_utility - d.truthful_utility > worst->lying_utility - worst->truthful_utility)
            worst = &d;
    r.verdict = Verdict::violated;
    r.witness = worst->misreport + " raises true utility from " +
                rat_str(worst->truthful_utility) + " to " + rat_str(worst->lying_utility);
    r.detail = std::to_string(devs.size()) + " of " + std::to_string(family.size()) +
               " misreports profitable; max profit " +
               rat_str(worst->lying_utility - worst->truthful_utility);
    return r;
}

// --- exchange structure ------------------------------------------------------

AuditReport check_exchange_axioms(const Profile& p, const EnumBudget& budget) {
    require(p.all_matroidal(), "exchange axioms apply to matroid-rank profiles");
    AuditReport r;
    r.property = "exchange-axioms";
    r.instance = profile_descriptor(p);
    if (!enumerable(p, budget))
        return skipped(r.property, p, "enumeration exceeds the allocation budget");
    const int n = p.n(), m = p.m();

    std::set<SizeVector> s1; // clean size vectors, pool count last
    int max_welfare = 0;
    for_each_clean(p, budget, [&](const std::vector<ItemSet>&, const SizeVector& sz) {
        int total = 0;
        for (int s : sz) total += s;
        max_welfare = std::max(max_welfare, total);
        SizeVector with_pool = sz;
        with_pool.push_back(m - total);
        s1.insert(std::move(with_pool));
    });
    std::set<SizeVector> s2; // welfare-maximal clean size vectors, no pool
    for (const auto& x : s1)
        if (x.back() == m - max_welfare) s2.insert(SizeVector(x.begin(), x.end() - 1));

    auto cld = brute_cld(p, budget);
    if (cld.empty()) {
        r.verdict = Verdict::violated;
        r.witness = "no clean allocation Lorenz dominates every other";
        return r;
    }
    std::set<SizeVector> sstar;
    for (const auto& a : cld) sstar.insert(sizes(a));

    auto fail = [&](std::string w) {
        r.verdict = Verdict::violated;
        r.witness = std::move(w);
    };

    auto bexc = [&](const std::set<SizeVector>& s, const char* name, bool both_sides) {
        for (const auto& x : s)
            for (const auto& y : s)
                for (std::size_t i = 0; i < x.size(); ++i) {
                    if (x[i] <= y[i]) continue;
                    bool ok = false;
                    for (std::size_t j = 0; j < x.size() && !ok; ++j) {
                        if (x[j] >= y[j]) continue;
                        SizeVector yz = y;
                        ++yz[i];
                        --yz[j];
                        if (!s.count(yz)) continue;
                        if (both_sides) {
                            SizeVector xz = x;
                            --xz[i];
                            ++xz[j];
                            if (!s.count(xz)) continue;
                        }
                        ok = true;
                    }
                    if (!ok) {
                        fail(std::string(name) + ": x=" + vec_str(x) + " y=" + vec_str(y) +
                             " has no exchange partner for coordinate " + std::to_string(i));
                        return false;
                    }
                }
        return true;
    };
    if (!bexc(s1, "clean sizes with pool (one-sided exchange)", false)) return r;
    if (!bexc(s2, "welfare-optimal clean sizes (one-sided exchange)", false)) return r;
    if (!bexc(sstar, "dominating sizes (two-sided exchange)", true)) return r;

    SizeVector lo(n, INT_MAX), hi(n, INT_MIN);
    for (const auto& x : sstar)
        for (int i = 0; i < n; ++i) {
            lo[i] = std::min(lo[i], x[i]);
            hi[i] = std::max(hi[i], x[i]);
        }
    for (int i = 0; i < n; ++i)
        if (hi[i] - lo[i] > 1) {
            fail(agent_tag(i) + " bundle size spans [" + std::to_string(lo[i]) + "," +
                 std::to_string(hi[i]) + "] across the dominating set");
            return r;
        }

    LorenzCertificate cert = lorenz_dominating(p);
    if (std::find(cld.begin(), cld.end(), cert.allocation) == cld.end()) {
        fail("engine allocation " + cert.allocation.str() + " is not in the brute dominating set");
        return r;
    }
    if (cert.sorted != sorted_sizes(cld.front())) {
        fail("engine sorted sizes " + vec_str(cert.sorted) + " != brute " +
             vec_str(sorted_sizes(cld.front())));
        return r;
    }
    for (int i = 0; i < n; ++i)
        if (cert.min_size[i] != lo[i] || cert.max_size[i] != hi[i]) {
            fail(agent_tag(i) + " engine min/max " + std::to_string(cert.min_size[i]) + "/" +
                 std::to_string(cert.max_size[i]) + " != brute " + std::to_string(lo[i]) + "/" +
                 std::to_string(hi[i]));
            return r;
        }

    r.detail = "S1=" + std::to_string(s1.size()) + " S2=" + std::to_string(s2.size()) +
               " S*=" + std::to_string(sstar.size()) + " size vectors, " +
               std::to_string(cld.size()) + " dominating allocations";
    return r;
}

// --- restriction lemmas ------------------------------------------------------

namespace {

// Everything the restriction lemmas ask about one (agent, ground subset) pair.
struct RestrictionStats {
    SizeVector sorted;
    int min_i = INT_MAX;
    int max_i = -1;
    int back = 0;
    bool exists_eq = false; // some dominating member gives the agent exactly X
    bool all_eq = true;     // every dominating member does
};

} // namespace

AuditReport check_restriction_lemmas(const Profile& p, const EnumBudget& budget) {
    require(p.all_matroidal(), "restriction lemmas apply to matroid-rank profiles");
    AuditReport r;
    r.property = "restriction-lemmas";
    r.instance = profile_descriptor(p);
    const int n = p.n(), m = p.m();
    if (m > 7 || !enumerable(p, budget))
        return skipped(r.property, p, "needs m <= 7 and an enumerable clean set");
    const std::uint32_t masks = std::uint32_t{1} << m;

    // One shared walk: restricting agent i to X keeps exactly the clean
    // allocations with A_i inside X, so every restricted profile's dominating
    // set can be read off the full clean list.
    std::vector<ItemSet> bund; // stride n
    std::vector<int> size_flat;
    std::vector<int> sorted_flat;
    for_each_clean(p, budget, [&](const std::vector<ItemSet>& b, const SizeVector& sz) {
        bund.insert(bund.end(), b.begin(), b.end());
        size_flat.insert(size_flat.end(), sz.begin(), sz.end());
        SizeVector s = sz;
        std::sort(s.begin(), s.end());
        sorted_flat.insert(sorted_flat.end(), s.begin(), s.end());
    });
    const std::size_t recs = bund.size() / n;

    std::vector<std::vector<RestrictionStats>> stats(n, std::vector<RestrictionStats>(masks));
    for (int i = 0; i < n; ++i)
        for (std::uint32_t x = 0; x < masks; ++x) {
            RestrictionStats& st = stats[i][x];
            bool have = false;
            SizeVector best;
            for (std::size_t rec = 0; rec < recs; ++rec) {
                if (bund[rec * n + i].bits() & ~std::uint64_t{x}) continue;
                std::span<const int> cand(sorted_flat.data() + rec * n, std::size_t(n));
                if (!have) {
                    best.assign(cand.begin(), cand.end());
                    have = true;
                    continue;
                }
                if (lorenz_compare(cand, std::span<const int>(best)) == LorenzRel::dominates)
                    best.assign(cand.begin(), cand.end());
            }
            check_invariant(have, "the empty allocation always survives a restriction");
            st.sorted = best;
            st.back = best.back();
            for (std::size_t rec = 0; rec < recs; ++rec) {
                if (bund[rec * n + i].bits() & ~std::uint64_t{x}) continue;
                std::span<const int> cand(sorted_flat.data() + rec * n, std::size_t(n));
                LorenzRel rel = lorenz_compare(std::span<const int>(best), cand);
                if (rel != LorenzRel::dominates && rel != LorenzRel::equal) {
                    r.verdict = Verdict::violated;
                    r.witness = "restricted profile (" + agent_tag(i) + ", " + ItemSet(x).str() +
                                ") has no Lorenz dominating clean allocation: " + vec_str(best) +
                                " vs " + vec_str(SizeVector(cand.begin(), cand.end()));
                    return r;
                }
                if (rel != LorenzRel::equal) continue;
                int si = size_flat[rec * n + i];
                st.min_i = std::min(st.min_i, si);
                st.max_i = std::max(st.max_i, si);
                bool eq = bund[rec * n + i].bits() == std::uint64_t{x};
                st.exists_eq = st.exists_eq || eq;
                st.all_eq = st.all_eq && eq;
            }
        }

    long long pairs = 0;
    for (int i = 0; i < n; ++i) {
        // min bundle size over the dominating set is monotone in the ground set
        for (std::uint32_t y = 0; y < masks; ++y) {
            const RestrictionStats& sy = stats[i][y];
            for (std::uint32_t x = y;; x = (x - 1) & y) {
                const RestrictionStats& sx = stats[i][x];
                ++pairs;
                if (sx.min_i > sy.min_i) {
                    r.verdict = Verdict::violated;
                    r.witness = agent_tag(i) + ": min size " + std::to_string(sx.min_i) +
                                " under v|" + ItemSet(x).str() + " > " + std::to_string(sy.min_i) +
                                " under v|" + ItemSet(y).str();
                    return r;
                }
                // once forced strictly below the largest bundle, restriction
                // cannot lift the agent back up to it
                if (sy.exists_eq && std::popcount(y) < sy.back && !(sx.max_i < sx.back)) {
                    r.verdict = Verdict::violated;
                    r.witness = agent_tag(i) + ": v|" + ItemSet(y).str() +
                                " attains the set below the largest bundle, yet v|" +
                                ItemSet(x).str() + " reaches size " + std::to_string(sx.max_i) +
                                " of " + std::to_string(sx.back);
                    return r;
                }
                if (x == 0) break;
            }
        }
    }

    // restricting to a subset of one's own dominating bundle keeps it
    // attainable, and forced when the bundle sat at the class minimum
    auto cld = brute_cld(p, budget);
    const std::uint32_t full = masks - 1;
    for (const auto& a : cld)
        for (int i = 0; i < n; ++i) {
            const std::uint32_t xi = static_cast<std::uint32_t>(a[i].bits());
            const bool at_min = a[i].count() == stats[i][full].min_i;
            for (std::uint32_t x = xi;; x = (x - 1) & xi) {
                const RestrictionStats& sx = stats[i][x];
                if (!sx.exists_eq) {
                    r.verdict = Verdict::violated;
                    r.witness = agent_tag(i) + ": no dominating member of v|" + ItemSet(x).str() +
                                " hands back exactly " + ItemSet(x).str() + " (from " + a.str() +
                                ")";
                    return r;
                }
                if (at_min && !sx.all_eq) {
                    r.verdict = Verdict::violated;
                    r.witness = agent_tag(i) + ": bundle at class minimum, yet v|" +
                                ItemSet(x).str() + " admits a dominating member avoiding " +
                                ItemSet(x).str();
                    return r;
                }
                if (x == 0) break;
            }
        }

    r.detail = std::to_string(recs) + " clean allocations, " + std::to_string(n) + "x" +
               std::to_string(masks) + " restrictions, " + std::to_string(pairs) +
               " nested pairs, " + std::to_string(cld.size()) + " dominating members";
    return r;
}

// --- subsidy characterization -------------------------------------------------

AuditReport check_subsidy_characterization(const Profile& p, const EnumBudget& budget) {
    AuditReport r;
    r.property = "subsidy-characterization";
    r.instance = profile_descriptor(p);
    const int n = p.n(), m = p.m();
    if (!enumerable(p, budget))
        return skipped(r.property, p, "enumeration exceeds the allocation budget");

    long long checked = 0;
    std::string fail;
    for_each_allocation(n, m, false, budget, [&](const Allocation& a) {
        if (!fail.empty()) return;
        EnvyGraph g = build_envy_graph(p, a);
        const bool fw_cycle = has_positive_cycle(g);

        // Bellman least fixpoint from zero: stabilizes within n rounds iff
        // the graph has no positive cycle, and then equals the minimal
        // envy-free subsidy vector.
        std::vector<Rat> fix(n, Rat(0));
        bool converged = false;
        for (int t = 0; t <= n; ++t) {
            std::vector<Rat> next(n, Rat(0));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (j == i) continue;
                    Rat cand = g.w[i][j] + fix[j];
                    if (cand > next[i]) next[i] = cand;
                }
            if (next == fix) {
                converged = true;
                break;
            }
            fix = std::move(next);
        }
        if (converged == fw_cycle) {
            fail = "fixpoint iteration and cycle detection disagree on " + a.str();
            return;
        }

        if (n <= 5) {
            // Third opinion: enumerate every simple path and cycle directly.
            std::vector<Rat> best(n, Rat(0));
            bool enum_cycle = false;
            std::vector<bool> used(n, false);
            int start = 0;
            std::function<void(int, const Rat&)> walk = [&](int last, const Rat& weight) {
                for (int next = 0; next < n; ++next) {
                    if (used[next]) continue;
                    Rat w2 = weight + g.w[last][next];
                    if (w2 > best[start]) best[start] = w2;
                    if (w2 + g.w[next][start] > 0) enum_cycle = true;
                    used[next] = true;
                    walk(next, w2);
                    used[next] = false;
                }
            };
            for (start = 0; start < n; ++start) {
                used[start] = true;
                walk(start, Rat(0));
                used[start] = false;
            }
            if (enum_cycle != fw_cycle) {
                fail = "path enumeration and cycle detection disagree on " + a.str();
                return;
            }
            if (!fw_cycle && best != fix) {
                fail = "path enumeration gives " + rvec_str(best) + ", fixpoint " +
                       rvec_str(fix) + " on " + a.str();
                return;
            }
        }

        if (fw_cycle) return;
        std::vector<Rat> pw = max_path_weights(g);
        if (pw != fix) {
            fail = "max-path weights " + rvec_str(pw) + " != fixpoint " + rvec_str(fix) +
                   " on " + a.str();
            return;
        }
        SubsidyVector subs = subsidy_for(p, a);
        if (subs != pw) {
            fail = "subsidy vector " + rvec_str(subs) + " != max-path weights on " + a.str();
            return;
        }
        if (!is_envy_free(p, a, subs)) {
            fail = "characterized subsidies are not envy-free on " + a.str();
            return;
        }
        for (int i = 0; i < n; ++i) {
            if (subs[i] <= 0) continue;
            SubsidyVector reduced = subs;
            reduced[i] = subs[i] / 2;
            if (is_envy_free(p, a, reduced)) {
                fail = "subsidy to " + agent_tag(i) + " is not minimal on " + a.str();
                return;
            }
        }
        ++checked;
    });
    if (!fail.empty()) {
        r.verdict = Verdict::violated;
        r.witness = fail;
        return r;
    }
    r.detail = "agreement on every allocation (" +
               std::string(n <= 5 ? "3 independent methods" : "2 independent methods") +
               "), " + std::to_string(checked) + " subsidy vectors certified minimal";
    return r;
}

// --- Lorenz dominance vs Nash welfare ------------------------------------------

AuditReport check_mnw_equivalence(const Profile& p, const EnumBudget& budget) {
    require(p.all_matroidal(), "the Nash welfare equivalence is a matroid-rank theorem");
    AuditReport r;
    r.property = "mnw-equivalence";
    r.instance = profile_descriptor(p);
    const int n = p.n(), m = p.m();
    if (!enumerable(p, budget) || n > 30)
        return skipped(r.property, p, "enumeration exceeds the allocation budget");
    const Profile q = p.tabulated();

    SizeVector best_sorted;
    int best_pos = -1;
    unsigned long long best_prod = 0;
    auto utilities = [&](const Allocation& a) {
        SizeVector u(n);
        for (int i = 0; i < n; ++i) u[i] = q[i].rank(a[i]);
        std::sort(u.begin(), u.end());
        return u;
    };
    for_each_allocation(n, m, false, budget, [&](const Allocation& a) {
        SizeVector u = utilities(a);
        if (best_sorted.empty() ||
            lorenz_compare(u, best_sorted) == LorenzRel::dominates)
            best_sorted = u;
        int pos = 0;
        unsigned long long prod = 1;
        for (int v : u)
            if (v > 0) {
                ++pos;
                prod *= static_cast<unsigned long long>(v);
            }
        if (pos > best_pos || (pos == best_pos && prod > best_prod)) {
            best_pos = pos;
            best_prod = prod;
        }
    });

    std::string fail;
    std::optional<Allocation> first_ld, first_other;
    for_each_allocation(n, m, false, budget, [&](const Allocation& a) {
        if (!fail.empty()) return;
        SizeVector u = utilities(a);
        LorenzRel rel = lorenz_compare(best_sorted, u);
        if (rel != LorenzRel::dominates && rel != LorenzRel::equal) {
            fail = "no utility vector dominates all others; " + vec_str(u) + " beats " +
                   vec_str(best_sorted) + " at " + a.str();
            return;
        }
        bool is_ld = rel == LorenzRel::equal;
        int pos = 0;
        unsigned long long prod = 1;
        for (int v : u)
            if (v > 0) {
                ++pos;
                prod *= static_cast<unsigned long long>(v);
            }
        bool is_nash = pos == best_pos && prod == best_prod;
        if (is_ld != is_nash) {
            fail = a.str() + " is " + (is_ld ? "Lorenz dominating but not Nash optimal"
                                             : "Nash optimal but not Lorenz dominating");
            return;
        }
        if (is_ld && !first_ld) first_ld = a;
        if (!is_ld && !first_other) first_other = a;
    });
    if (!fail.empty()) {
        r.verdict = Verdict::violated;
        r.witness = fail;
        return r;
    }
    check_invariant(first_ld.has_value(), "some allocation attains the dominating vector");
    if (!is_mnw(q, *first_ld, budget)) {
        r.verdict = Verdict::violated;
        r.witness = "is_mnw rejects the Lorenz dominating allocation " + first_ld->str();
        return r;
    }
    if (first_other && is_mnw(q, *first_other, budget)) {
        r.verdict = Verdict::violated;
        r.witness = "is_mnw accepts the dominated allocation " + first_other->str();
        return r;
    }
    r.detail = "Lorenz dominance and Nash optimality coincide allocation by allocation; best " +
               vec_str(best_sorted);
    return r;
}

} // namespace fairdiv::audit
