#include "fairdiv/exchange.hpp"

#include <algorithm>

namespace fairdiv {

namespace {

void require_matroidal(const Profile& p, const char* who) {
    require(p.all_matroidal(), std::string(who) + " requires a matroidal profile");
}

std::string sv_str(const SizeVector& s) {
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + ")";
}

// Matroid intersection over elements (agent, item), element id = agent*m+item.
// Matroid 1 is the direct sum of the agents' matroids truncated at caps[i];
// matroid 2 allows each item in at most one bundle. Common independent sets
// are exactly the clean allocations with |A_i| <= caps[i].
struct IntersectionEngine {
    const Profile* p;
    int n, m;
    std::vector<int> caps;
    std::vector<ItemSet> bund;
    std::vector<int> owner; // item -> agent, or -1
    int size = 0;

    explicit IntersectionEngine(const Profile& prof)
        : p(&prof), n(prof.n()), m(prof.m()), caps(n, prof.m()), bund(n), owner(m, -1) {}

    void load(const Allocation& a) {
        size = 0;
        for (int i = 0; i < n; ++i) {
            bund[i] = a[i];
            size += a[i].count();
            for (int e : a[i]) owner[e] = i;
        }
    }

    bool can_grow(int i, int e) const {
        if (bund[i].contains(e)) return false;
        if (bund[i].count() + 1 > caps[i]) return false;
        return (*p)[i].rank(bund[i].with(e)) == bund[i].count() + 1;
    }
    bool can_swap(int i, int e_out, int e_in) const {
        ItemSet next = bund[i].without(e_out).with(e_in);
        return (*p)[i].rank(next) == next.count();
    }

    // One shortest augmenting path; BFS over element ids in ascending order,
    // so the path choice (and hence the final allocation) is deterministic.
    bool augment() {
        const int total = n * m;
        if (total == 0) return false;
        std::vector<int> parent(total, -2); // -2 unvisited, -1 BFS root
        std::vector<int> queue;
        queue.reserve(total);
        for (int i = 0; i < n; ++i)
            for (int e = 0; e < m; ++e)
                if (can_grow(i, e)) {
                    parent[i * m + e] = -1;
                    queue.push_back(i * m + e);
                }
        int goal = -1;
        for (std::size_t head = 0; head < queue.size() && goal < 0; ++head) {
            const int u = queue[head];
            const int iu = u / m, eu = u % m;
            if (!bund[iu].contains(eu)) {
                // Outside element: either its item is free, which completes
                // the path, or the walk moves to the item's current holder.
                if (owner[eu] < 0) {
                    goal = u;
                    break;
                }
                const int x = owner[eu] * m + eu;
                if (parent[x] == -2) {
                    parent[x] = u;
                    queue.push_back(x);
                }
            } else {
                // Inside element u: arcs to every outside y with I - u + y
                // independent in matroid 1.
                for (int i = 0; i < n; ++i)
                    for (int e = 0; e < m; ++e) {
                        const int y = i * m + e;
                        if (parent[y] != -2 || bund[i].contains(e)) continue;
                        const bool ok = (i == iu) ? can_swap(iu, eu, e) : can_grow(i, e);
                        if (ok) {
                            parent[y] = u;
                            queue.push_back(y);
                        }
                    }
            }
        }
        if (goal < 0) return false;
        std::vector<int> adds, removes;
        for (int u = goal; u != -1; u = parent[u]) {
            if (bund[u / m].contains(u % m))
                removes.push_back(u);
            else
                adds.push_back(u);
        }
        check_invariant(adds.size() == removes.size() + 1,
                        "augmenting path must alternate");
        for (int u : removes) {
            bund[u / m] = bund[u / m].without(u % m);
            owner[u % m] = -1;
        }
        for (int u : adds) {
            bund[u / m] = bund[u / m].with(u % m);
            owner[u % m] = u / m;
        }
        size += 1;
        return true;
    }

    void run_to_max() {
        while (augment()) {
        }
    }

    SizeVector current_sizes() const {
        SizeVector s(n);
        for (int i = 0; i < n; ++i) s[i] = bund[i].count();
        return s;
    }

    Allocation allocation() const { return Allocation(m, bund); }
};

// Moves one bundle slot from donor to receiver while keeping the allocation
// clean: raise the receiver's cap, shed the donor's lowest item, and ask for
// one augmentation. Any augmenting path restores maximality at the new caps,
// so success means the size vector s + chi_receiver - chi_donor is feasible.
bool try_exchange(IntersectionEngine& eng, int receiver, int donor) {
    const IntersectionEngine saved = eng;
    eng.caps[receiver] += 1;
    eng.caps[donor] -= 1;
    const int e = *eng.bund[donor].begin();
    eng.bund[donor] = eng.bund[donor].without(e);
    eng.owner[e] = -1;
    eng.size -= 1;
    if (eng.augment()) {
        SizeVector want = saved.current_sizes();
        want[receiver] += 1;
        want[donor] -= 1;
        check_invariant(eng.current_sizes() == want,
                        "exchange must shift exactly one slot");
        return true;
    }
    eng = saved;
    return false;
}

} // namespace

Allocation max_clean_welfare_allocation(const Profile& p) {
    require_matroidal(p, "max_clean_welfare_allocation");
    IntersectionEngine eng(p);
    eng.run_to_max();
    return eng.allocation();
}

ExchangePath transfer_path(const Profile& p, const Allocation& a,
                           const Allocation& b, int i) {
    require_matroidal(p, "transfer_path");
    require(a.n() == p.n() && a.m() == p.m(), "allocation a does not match profile");
    require(b.n() == p.n() && b.m() == p.m(), "allocation b does not match profile");
    require(is_clean(p, a) && is_clean(p, b), "transfer_path requires clean allocations");
    require(0 <= i && i < p.n(), "agent index out of range");
    require(a[i].count() > b[i].count(), "agent i must hold more under a than b");

    const int m = p.m();
    std::vector<ItemSet> cur = b.bundles();
    std::vector<int> owner(m, -1);
    for (int j = 0; j < p.n(); ++j)
        for (int e : cur[j]) owner[e] = j;

    ExchangePath path;
    path.agents.push_back(i);
    int k = i;
    for (int step = 0;; ++step) {
        check_invariant(step <= m, "transfer walk exceeded the item count");
        // Stop once the walk reaches an endpoint that a leaves strictly
        // smaller than b does (the unallocated pool counts as an endpoint).
        if (step > 0) {
            const bool poorer = (k == ExchangePath::pool)
                                    ? a.pool().count() < b.pool().count()
                                    : a[k].count() < b[k].count();
            if (poorer) break;
        }
        ItemSet cur_alloc;
        for (int j = 0; j < p.n(); ++j) cur_alloc = cur_alloc | cur[j];
        const ItemSet cur_pool = ItemSet::full(m).minus(cur_alloc);
        // Lowest item the endpoint holds under a but not currently, and can
        // absorb cleanly.
        int pick = -1;
        if (k == ExchangePath::pool) {
            const ItemSet cand = a.pool().minus(cur_pool);
            if (!cand.empty()) pick = *cand.begin();
        } else {
            for (int e : a[k].minus(cur[k]))
                if (p[k].rank(cur[k].with(e)) == cur[k].count() + 1) {
                    pick = e;
                    break;
                }
        }
        check_invariant(pick >= 0, "transfer walk found no movable item");
        const int holder = owner[pick];
        if (holder >= 0) cur[holder] = cur[holder].without(pick);
        if (k != ExchangePath::pool) cur[k] = cur[k].with(pick);
        owner[pick] = (k == ExchangePath::pool) ? -1 : k;
        path.items.push_back(pick);
        path.agents.push_back(holder < 0 ? ExchangePath::pool : holder);
        k = path.agents.back();
    }
    return path;
}

Allocation apply_transfer_path(const Allocation& b, const ExchangePath& path) {
    require(path.agents.size() == path.items.size() + 1,
            "path must have one more endpoint than items");
    std::vector<ItemSet> cur = b.bundles();
    const int n = b.n();
    for (std::size_t t = 0; t < path.items.size(); ++t) {
        const int e = path.items[t];
        const int to = path.agents[t];
        const int from = path.agents[t + 1];
        require(0 <= e && e < b.m(), "path item out of range");
        require(to == ExchangePath::pool || (0 <= to && to < n), "path endpoint out of range");
        require(from == ExchangePath::pool || (0 <= from && from < n), "path endpoint out of range");
        if (from == ExchangePath::pool) {
            ItemSet alloc;
            for (const ItemSet& s : cur) alloc = alloc | s;
            require(!alloc.contains(e), "path moves an item its holder lacks");
        } else {
            require(cur[from].contains(e), "path moves an item its holder lacks");
            cur[from] = cur[from].without(e);
        }
        if (to != ExchangePath::pool) {
            require(!cur[to].contains(e), "path receiver already holds the item");
            cur[to] = cur[to].with(e);
        }
    }
    return Allocation(b.m(), cur);
}

std::optional<Allocation> size_vector_membership(const Profile& p,
                                                 const SizeVector& target) {
    require_matroidal(p, "size_vector_membership");
    require(static_cast<int>(target.size()) == p.n(), "size vector length mismatch");
    long long want = 0;
    for (int s : target) {
        require(s >= 0, "size vector entries must be nonnegative");
        want += s;
    }
    require(want <= p.m(), "size vector exceeds the item count");
    IntersectionEngine eng(p);
    for (int i = 0; i < p.n(); ++i) eng.caps[i] = target[i];
    eng.run_to_max();
    if (eng.size != want) return std::nullopt;
    check_invariant(eng.current_sizes() == target,
                    "membership witness must realize the target sizes");
    return eng.allocation();
}

LorenzCertificate lorenz_dominating(const Profile& p,
                                    std::vector<std::string>* trace) {
    require_matroidal(p, "lorenz_dominating");
    IntersectionEngine eng(p);
    eng.run_to_max();
    if (trace)
        trace->push_back("lorenz: welfare-max sv=" + sv_str(eng.current_sizes()) +
                         " total=" + std::to_string(eng.size));
    const int n = p.n();
    eng.caps = eng.current_sizes();
    // Level the size vector: within the welfare maximizers, repeatedly shift
    // one slot from a larger bundle to a bundle smaller by at least two.
    // Each accepted shift strictly lowers sum of squared sizes, and local
    // optimality under single shifts is global here, so the fixpoint Lorenz
    // dominates every clean allocation.
    bool improved = true;
    while (improved) {
        improved = false;
        const SizeVector s = eng.current_sizes();
        for (int a = 0; a < n && !improved; ++a)
            for (int b = 0; b < n && !improved; ++b) {
                if (s[a] + 2 > s[b]) continue;
                if (try_exchange(eng, a, b)) {
                    eng.caps = eng.current_sizes();
                    improved = true;
                    if (trace)
                        trace->push_back("lorenz: shift a" + std::to_string(b) +
                                         " -> a" + std::to_string(a) +
                                         " sv=" + sv_str(eng.current_sizes()));
                }
            }
    }

    LorenzCertificate cert{eng.allocation(), eng.current_sizes(), {}, {}};
    std::sort(cert.sorted.begin(), cert.sorted.end());
    const SizeVector s = eng.current_sizes();
    cert.min_size = s;
    cert.max_size = s;
    // Per-agent attainable sizes across the chosen Lorenz class: only a shift
    // against an adjacent-size partner keeps the sorted vector unchanged.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n && cert.min_size[i] == s[i]; ++j) {
            if (j == i || s[j] != s[i] - 1) continue;
            IntersectionEngine probe = eng;
            if (try_exchange(probe, j, i)) cert.min_size[i] = s[i] - 1;
        }
        for (int j = 0; j < n && cert.max_size[i] == s[i]; ++j) {
            if (j == i || s[j] != s[i] + 1) continue;
            IntersectionEngine probe = eng;
            if (try_exchange(probe, i, j)) cert.max_size[i] = s[i] + 1;
        }
    }
    if (trace)
        trace->push_back("lorenz: final sv=" + sv_str(s) +
                         " min=" + sv_str(cert.min_size) +
                         " max=" + sv_str(cert.max_size));
    return cert;
}

std::optional<Allocation> single_exchange_membership(const Profile& p,
                                                     const Allocation& ld,
                                                     int i, int delta) {
    require_matroidal(p, "single_exchange_membership");
    require(ld.n() == p.n() && ld.m() == p.m(), "allocation does not match profile");
    require(0 <= i && i < p.n(), "agent index out of range");
    require(delta == 1 || delta == -1, "delta must be +1 or -1");
    IntersectionEngine eng(p);
    eng.load(ld);
    eng.caps = eng.current_sizes();
    const SizeVector s = eng.current_sizes();
    for (int j = 0; j < p.n(); ++j) {
        if (j == i || s[j] != s[i] + delta) continue;
        IntersectionEngine probe = eng;
        const bool ok = (delta == -1) ? try_exchange(probe, j, i)
                                      : try_exchange(probe, i, j);
        if (ok) return probe.allocation();
    }
    return std::nullopt;
}

} // namespace fairdiv
