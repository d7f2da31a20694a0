#include "fairdiv/mechanisms.hpp"

#include <algorithm>

namespace fairdiv {

namespace {

std::string agent_tag(int i) { return "a" + std::to_string(i); }
std::string item_tag(int e) { return "e" + std::to_string(e); }

std::vector<Rat> utilities_of(const Profile& p, const Allocation& a,
                              const SubsidyVector& subs) {
    std::vector<Rat> u(p.n());
    for (int i = 0; i < p.n(); ++i) u[i] = p[i](a[i]) + subs[i];
    return u;
}

// Shared tail of the two SE variants.
Outcome se_common(const Profile& p, bool cap_at_largest, const char* tag) {
    require(p.all_matroidal(), std::string(tag) + " requires a matroidal profile");
    std::vector<std::string> trace;
    const LorenzCertificate cert = lorenz_dominating(p, &trace);
    const int n = p.n();
    const int largest = cert.sorted.empty() ? 0 : cert.sorted.back();
    SubsidyVector subs(n, Rat(0));
    for (int i = 0; i < n; ++i) {
        const int size = cert.allocation[i].count();
        const bool at_class_min = (size == cert.min_size[i]);
        const bool below_largest = (size < largest);
        if (at_class_min && (below_largest || !cap_at_largest)) subs[i] = 1;
        trace.push_back(std::string(tag) + ": " + agent_tag(i) +
                        " size=" + std::to_string(size) +
                        " min=" + std::to_string(cert.min_size[i]) +
                        " largest=" + std::to_string(largest) +
                        " subsidy=" + rat_str(subs[i]));
    }
    Rat total(0);
    for (const Rat& s : subs) total += s;
    check_invariant(total <= Rat(cap_at_largest ? n - 1 : n),
                    "SE total subsidy exceeds its bound");
    check_invariant(is_envy_free(p, cert.allocation, subs),
                    "SE outcome must be envy-free");
    std::vector<Rat> utils = utilities_of(p, cert.allocation, subs);
    return Outcome{cert.allocation, std::move(subs), std::move(utils), tag,
                   std::move(trace)};
}

// Longest path weights between all pairs (at least one arc). The envy graph
// is complete, so every pair is connected. Requires no positive cycle.
std::vector<std::vector<Rat>> longest_paths(const EnvyGraph& g) {
    const int n = g.n;
    std::vector<std::vector<Rat>> best = g.w;
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (a == k || k == b) continue;
                const Rat via = best[a][k] + best[k][b];
                if (via > best[a][b]) best[a][b] = via;
            }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b)
                check_invariant(best[a][b] + best[b][a] <= Rat(0),
                                "completion state grew a positive envy cycle");
    return best;
}

// Lexicographically smallest simple path from src to dst of weight exactly
// `target`, all paths taken in the complete envy graph. `best` supplies the
// pruning bound. Target is the maximum attainable, so the first hit wins.
std::vector<int> lex_path(const EnvyGraph& g,
                          const std::vector<std::vector<Rat>>& best, int src,
                          int dst, const Rat& target) {
    const int n = g.n;
    std::vector<int> seq{src};
    std::vector<bool> used(n, false);
    used[src] = true;
    std::function<bool(int, Rat)> dfs = [&](int u, Rat acc) {
        for (int w = 0; w < n; ++w) {
            if (used[w]) continue;
            const Rat reach = acc + g.w[u][w];
            if (w == dst) {
                if (reach == target) {
                    seq.push_back(w);
                    return true;
                }
                continue;
            }
            if (reach + best[w][dst] < target) continue;
            used[w] = true;
            seq.push_back(w);
            if (dfs(w, reach)) return true;
            seq.pop_back();
            used[w] = false;
        }
        return false;
    };
    check_invariant(dfs(src, Rat(0)), "failed to realize a maximum envy path");
    return seq;
}

std::string path_tag(const std::vector<int>& seq) {
    std::string out;
    for (std::size_t t = 0; t < seq.size(); ++t) {
        if (t) out += "->";
        out += agent_tag(seq[t]);
    }
    return out;
}

} // namespace

Outcome se_mechanism(const Profile& p) { return se_common(p, true, "se"); }

Outcome se_variant_no_cap(const Profile& p) {
    return se_common(p, false, "se-nocap");
}

Outcome sec_algorithm(const Profile& p, const SecObserver* obs) {
    require(p.all_matroidal(), "sec requires a matroidal profile");
    std::vector<std::string> trace;
    Allocation a = lorenz_dominating(p, &trace).allocation;
    const int n = p.n();
    if (obs && obs->on_start) obs->on_start(a);
    for (int e : a.pool()) {
        int i = 0;
        std::vector<bool> chosen(n, false);
        for (int round = 0;; ++round) {
            check_invariant(round < n, "completion loop exceeded the agent count");
            check_invariant(!chosen[i], "agent examined twice for one item");
            chosen[i] = true;
            const Allocation trial = a.with_bundle(i, a[i].with(e));
            const EnvyGraph g = build_envy_graph(p, trial);
            const std::vector<std::vector<Rat>> best = longest_paths(g);
            // Maximum-weight positive path ending at i; the smallest source
            // attaining it heads the lexicographically least node sequence.
            int src = -1;
            Rat top(0);
            for (int j = 0; j < n; ++j)
                if (j != i && best[j][i] > top) {
                    top = best[j][i];
                    src = j;
                }
            if (src < 0) {
                a = trial;
                trace.push_back("sec: " + item_tag(e) + " commit " + agent_tag(i));
                if (obs && obs->on_commit) obs->on_commit(e, i, a);
                break;
            }
            const std::vector<int> seq = lex_path(g, best, src, i, top);
            trace.push_back("sec: " + item_tag(e) + " reject " + agent_tag(i) +
                            " path=" + path_tag(seq) + " w=" + rat_str(top));
            if (obs && obs->on_reject) obs->on_reject(e, i, seq, top);
            i = src;
        }
    }
    check_invariant(a.complete(), "completion left an item unallocated");
    SubsidyVector subs = subsidy_for(p, a);
    Rat total(0);
    for (int i = 0; i < n; ++i) {
        check_invariant(subs[i] == Rat(0) || subs[i] == Rat(1),
                        "completion subsidy must be 0 or 1");
        if (subs[i] == Rat(1))
            trace.push_back("sec: subsidy " + agent_tag(i));
        total += subs[i];
    }
    check_invariant(n == 0 || total <= Rat(n - 1),
                    "completion total subsidy exceeds n-1");
    check_invariant(is_envy_free(p, a, subs), "sec outcome must be envy-free");
    std::vector<Rat> utils = utilities_of(p, a, subs);
    return Outcome{std::move(a), std::move(subs), std::move(utils), "sec",
                   std::move(trace)};
}

Outcome vcg_upfront(const Profile& p, const EnumBudget& budget) {
    require(p.all_superadditive_class(),
            "vcg requires an additive or superadditive profile");
    const int n = p.n();
    const int m = p.m();
    std::vector<std::string> trace;

    std::vector<ItemSet> star(n);
    Rat star_welfare(0);
    std::vector<Rat> star_values(n, Rat(0));
    // others_best[i] = max over complete allocations of the others' welfare.
    std::vector<Rat> others_best(n, Rat(0));

    bool all_additive = true;
    for (int i = 0; i < n; ++i) {
        const ValClass c = p[i].cls();
        if (c != ValClass::additive && c != ValClass::binary_additive)
            all_additive = false;
    }

    if (all_additive) {
        // Per-item argmax; the lowest index wins, which is also the
        // lexicographically smallest optimal assignment.
        for (int e = 0; e < m; ++e) {
            int pick = 0;
            Rat top = p[0](ItemSet::single(e));
            std::vector<Rat> vals(n);
            for (int i = 0; i < n; ++i) {
                vals[i] = p[i](ItemSet::single(e));
                if (vals[i] > top) {
                    top = vals[i];
                    pick = i;
                }
            }
            star[pick] = star[pick].with(e);
            trace.push_back("vcg: assign " + item_tag(e) + " -> " + agent_tag(pick));
            for (int i = 0; i < n; ++i) {
                Rat excl(0);
                for (int j = 0; j < n; ++j)
                    if (j != i && vals[j] > excl) excl = vals[j];
                others_best[i] += excl;
            }
        }
        for (int i = 0; i < n; ++i) {
            star_values[i] = p[i](star[i]);
            star_welfare += star_values[i];
        }
    } else {
        const Profile q = (m <= 20) ? p.tabulated() : p;
        bool have = false;
        for_each_allocation(n, m, true, budget, [&](const Allocation& cand) {
            std::vector<Rat> vals(n);
            Rat sw(0);
            for (int i = 0; i < n; ++i) {
                vals[i] = q[i](cand[i]);
                sw += vals[i];
            }
            // Strict improvement keeps the first (lexicographically
            // smallest) optimal assignment.
            if (!have || sw > star_welfare) {
                have = true;
                star_welfare = sw;
                star_values = vals;
                for (int i = 0; i < n; ++i) star[i] = cand[i];
            }
            for (int i = 0; i < n; ++i) {
                const Rat excl = sw - vals[i];
                if (excl > others_best[i]) others_best[i] = excl;
            }
        });
        check_invariant(have || m == 0, "welfare enumeration saw no allocation");
        trace.push_back("vcg: optimum welfare=" + rat_str(star_welfare));
    }

    Allocation alloc(m, star);
    check_invariant(m == 0 || alloc.complete(), "vcg allocation must be complete");
    SubsidyVector subs(n, Rat(0));
    for (int i = 0; i < n; ++i) {
        const Rat externality = others_best[i] - (star_welfare - star_values[i]);
        subs[i] = Rat(m) - externality;
        check_invariant(Rat(0) <= subs[i] && subs[i] <= Rat(m),
                        "vcg subsidy out of [0,m]");
        trace.push_back("vcg: " + agent_tag(i) + " externality=" +
                        rat_str(externality) + " subsidy=" + rat_str(subs[i]));
    }
    std::vector<Rat> utils = utilities_of(p, alloc, subs);
    return Outcome{std::move(alloc), std::move(subs), std::move(utils), "vcg",
                   std::move(trace)};
}

Outcome winner_takes_all(const Profile& p) {
    const int n = p.n();
    const int m = p.m();
    const ItemSet all = ItemSet::full(m);
    int winner = 0;
    Rat top = p[0](all);
    for (int i = 1; i < n; ++i) {
        const Rat v = p[i](all);
        if (v > top) {
            top = v;
            winner = i;
        }
    }
    std::vector<ItemSet> bundles(n);
    bundles[winner] = all;
    SubsidyVector subs(n, Rat(0));
    std::vector<std::string> trace{"wta: winner " + agent_tag(winner) +
                                   " value=" + rat_str(top)};
    for (int i = 0; i < n; ++i)
        if (i != winner) {
            subs[i] = top;
            trace.push_back("wta: subsidy " + agent_tag(i) + " = " + rat_str(top));
        }
    Allocation alloc(m, bundles);
    std::vector<Rat> utils = utilities_of(p, alloc, subs);
    return Outcome{std::move(alloc), std::move(subs), std::move(utils), "wta",
                   std::move(trace)};
}

} // namespace fairdiv
