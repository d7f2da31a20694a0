#include "fairdiv/matroid.hpp"

#include <algorithm>

namespace fairdiv {

const char* matroid_kind_str(MatroidKind k) {
    switch (k) {
        case MatroidKind::uniform: return "uniform";
        case MatroidKind::partition: return "partition";
        case MatroidKind::laminar: return "laminar";
        case MatroidKind::transversal: return "transversal";
        case MatroidKind::rank_table: return "rank_table";
    }
    return "?";
}

namespace {

void require_ground(int m) {
    require(m >= 0 && m <= kMaxItems, "ground set size must be in [0, 64]");
}

void require_sets_in_ground(const std::vector<ItemSet>& sets, int m) {
    for (const ItemSet& s : sets)
        require(s.subset_of(ItemSet::full(m)), "set contains items outside the ground set");
}

} // namespace

Matroid Matroid::uniform(int m, int rank) {
    require_ground(m);
    require(rank >= 0, "uniform rank must be nonnegative");
    Matroid mt(m, MatroidKind::uniform);
    mt.uniform_rank_ = std::min(rank, m);
    return mt;
}

Matroid Matroid::partition(int m, std::vector<ItemSet> blocks, std::vector<int> caps) {
    require_ground(m);
    require(blocks.size() == caps.size(), "partition: blocks and caps differ in length");
    require_sets_in_ground(blocks, m);
    ItemSet seen;
    for (const ItemSet& b : blocks) {
        require((seen & b).empty(), "partition: blocks must be pairwise disjoint");
        seen = seen | b;
    }
    for (int c : caps) require(c >= 0, "partition: caps must be nonnegative");
    Matroid mt(m, MatroidKind::partition);
    mt.sets_ = std::move(blocks);
    mt.caps_ = std::move(caps);
    return mt;
}

Matroid Matroid::laminar(int m, std::vector<ItemSet> sets, std::vector<int> caps) {
    require_ground(m);
    require(sets.size() == caps.size(), "laminar: sets and caps differ in length");
    require_sets_in_ground(sets, m);
    for (std::size_t a = 0; a < sets.size(); ++a)
        for (std::size_t b = a + 1; b < sets.size(); ++b) {
            bool nested = sets[a].subset_of(sets[b]) || sets[b].subset_of(sets[a]);
            bool disjoint = (sets[a] & sets[b]).empty();
            require(nested || disjoint, "laminar: sets must be pairwise nested or disjoint");
        }
    for (int c : caps) require(c >= 0, "laminar: caps must be nonnegative");
    Matroid mt(m, MatroidKind::laminar);
    mt.sets_ = std::move(sets);
    mt.caps_ = std::move(caps);
    return mt;
}

Matroid Matroid::transversal(int m, std::vector<ItemSet> slots) {
    require_ground(m);
    require_sets_in_ground(slots, m);
    Matroid mt(m, MatroidKind::transversal);
    mt.sets_ = std::move(slots);
    return mt;
}

Matroid Matroid::from_rank_table(int m, std::vector<int> table) {
    require_ground(m);
    require(m <= 12, "rank_table: ground set larger than 12 cannot be validated exhaustively");
    const std::size_t size = std::size_t{1} << m;
    require(table.size() == size, "rank_table: table must have exactly 2^m entries");
    require(table[0] == 0, "rank_table: rank of the empty set must be 0");
    // Unit marginals imply monotonicity and rank(X) <= |X|; together with
    // submodularity these are exactly the matroid rank axioms.
    for (std::uint64_t x = 0; x < size; ++x) {
        for (int e = 0; e < m; ++e) {
            if ((x >> e) & 1) continue;
            int d = table[x | (std::uint64_t{1} << e)] - table[x];
            require(d == 0 || d == 1, "rank_table: marginals must be 0 or 1");
        }
    }
    for (std::uint64_t x = 0; x < size; ++x)
        for (std::uint64_t y = x; y < size; ++y)
            require(table[x | y] + table[x & y] <= table[x] + table[y],
                    "rank_table: submodularity violated");
    Matroid mt(m, MatroidKind::rank_table);
    mt.table_ = std::move(table);
    return mt;
}

namespace {

// Maximum bipartite matching between the items of x and the slots, by
// augmenting paths. Sizes here are tiny; no need for Hopcroft-Karp.
int transversal_rank(ItemSet x, const std::vector<ItemSet>& slots) {
    const int s = static_cast<int>(slots.size());
    std::vector<int> slot_item(s, -1);
    int matched = 0;
    std::vector<char> visited(s);
    auto try_match = [&](int item, auto&& self) -> bool {
        for (int j = 0; j < s; ++j) {
            if (visited[j] || !slots[j].contains(item)) continue;
            visited[j] = 1;
            if (slot_item[j] < 0 || self(slot_item[j], self)) {
                slot_item[j] = item;
                return true;
            }
        }
        return false;
    };
    for (int item : x) {
        std::fill(visited.begin(), visited.end(), 0);
        if (try_match(item, try_match)) ++matched;
    }
    return matched;
}

} // namespace

int Matroid::rank(ItemSet x) const {
    require(x.subset_of(ItemSet::full(m_)), "rank query outside the ground set");
    switch (kind_) {
        case MatroidKind::uniform:
            return std::min(x.count(), uniform_rank_);
        case MatroidKind::partition: {
            int r = 0;
            ItemSet covered;
            for (std::size_t j = 0; j < sets_.size(); ++j) {
                r += std::min((x & sets_[j]).count(), caps_[j]);
                covered = covered | sets_[j];
            }
            return r + x.minus(covered).count();
        }
        case MatroidKind::laminar: {
            // Greedy over the independence oracle; any maximal independent
            // subset of x is a basis of x.
            std::vector<int> used(sets_.size(), 0);
            int r = 0;
            for (int item : x) {
                bool ok = true;
                for (std::size_t j = 0; j < sets_.size(); ++j)
                    if (sets_[j].contains(item) && used[j] + 1 > caps_[j]) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                for (std::size_t j = 0; j < sets_.size(); ++j)
                    if (sets_[j].contains(item)) ++used[j];
                ++r;
            }
            return r;
        }
        case MatroidKind::transversal:
            return transversal_rank(x, sets_);
        case MatroidKind::rank_table:
            return table_[x.bits()];
    }
    return 0;
}

} // namespace fairdiv
