#pragma once

#include <random>
#include <vector>

#include "fairdiv/matroid.hpp"
#include "fairdiv/valuation.hpp"

// Seeded instance generators shared by the unit tests and the acceptance
// harness. Every draw goes through one rng so a seed pins the whole instance.
namespace testgen {

using namespace fairdiv;

inline int pick(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline ItemSet pick_subset(std::mt19937_64& rng, int m) {
    return ItemSet(rng() & ItemSet::full(m).bits());
}

// Laminar families come from recursive interval splits, nested by construction.
inline void split_intervals(std::mt19937_64& rng, int lo, int hi,
                            std::vector<ItemSet>& sets, std::vector<int>& caps) {
    const int len = hi - lo;
    if (len < 1) return;
    if (rng() % 2 == 0) {
        ItemSet s;
        for (int e = lo; e < hi; ++e) s = s.with(e);
        sets.push_back(s);
        caps.push_back(pick(rng, 0, len));
    }
    if (len >= 2 && rng() % 2 == 0) {
        int mid = pick(rng, lo + 1, hi - 1);
        split_intervals(rng, lo, mid, sets, caps);
        split_intervals(rng, mid, hi, sets, caps);
    }
}

inline Matroid random_matroid(std::mt19937_64& rng, int m) {
    switch (rng() % 4) {
    case 0:
        return Matroid::uniform(m, pick(rng, 0, m));
    case 1: {
        const int k = pick(rng, 1, 3);
        std::vector<ItemSet> blocks(k);
        for (int e = 0; e < m; ++e) {
            if (rng() % 4 == 0) continue; // leave some items uncovered (free)
            const int b = pick(rng, 0, k - 1);
            blocks[b] = blocks[b].with(e);
        }
        std::vector<ItemSet> kept;
        std::vector<int> caps;
        for (const ItemSet& b : blocks) {
            if (b.empty()) continue;
            kept.push_back(b);
            caps.push_back(pick(rng, 0, b.count()));
        }
        return Matroid::partition(m, kept, caps);
    }
    case 2: {
        std::vector<ItemSet> sets;
        std::vector<int> caps;
        split_intervals(rng, 0, m, sets, caps);
        return Matroid::laminar(m, sets, caps);
    }
    default: {
        const int k = pick(rng, 1, std::max(1, m));
        std::vector<ItemSet> slots;
        for (int s = 0; s < k; ++s) slots.push_back(pick_subset(rng, m));
        return Matroid::transversal(m, slots);
    }
    }
}

inline Valuation random_matroidal_valuation(std::mt19937_64& rng, int m) {
    if (rng() % 4 == 0) return Valuation::binary_additive(m, pick_subset(rng, m));
    return Valuation::matroidal(random_matroid(rng, m));
}

inline Profile random_matroidal_profile(std::mt19937_64& rng, int n, int m) {
    std::vector<Valuation> vals;
    for (int i = 0; i < n; ++i)
        vals.push_back(random_matroidal_valuation(rng, m).with_label("a" + std::to_string(i)));
    return Profile(std::move(vals));
}

// Item values from {0, 1/4, 1/2, 3/4, 1}, so v(M) <= m holds by construction.
inline Profile random_additive_profile(std::mt19937_64& rng, int n, int m) {
    std::vector<Valuation> vals;
    for (int i = 0; i < n; ++i) {
        std::vector<Rat> values;
        for (int e = 0; e < m; ++e) values.push_back(Rat(pick(rng, 0, 4), 4));
        vals.push_back(Valuation::additive(std::move(values)).with_label("a" + std::to_string(i)));
    }
    return Profile(std::move(vals));
}

} // namespace testgen
