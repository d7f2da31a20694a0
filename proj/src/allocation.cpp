#include "fairdiv/allocation.hpp"

#include <algorithm>

#include "fairdiv/enumerate.hpp"

namespace fairdiv {

Allocation::Allocation(int m, std::vector<ItemSet> bundles) : m_(m), bundles_(std::move(bundles)) {
    require(m >= 0 && m <= kMaxItems, "ground set size must be in [0, 64]");
    require(!bundles_.empty(), "allocation needs at least one agent");
    ItemSet seen;
    for (const ItemSet& b : bundles_) {
        require(b.subset_of(ItemSet::full(m)), "bundle contains items outside the ground set");
        require((seen & b).empty(), "bundles must be pairwise disjoint");
        seen = seen | b;
    }
}

Allocation Allocation::empty(int n, int m) {
    require(n >= 1, "allocation needs at least one agent");
    return Allocation(m, std::vector<ItemSet>(n));
}

ItemSet Allocation::allocated() const {
    ItemSet u;
    for (const ItemSet& b : bundles_) u = u | b;
    return u;
}

Allocation Allocation::with_bundle(int i, ItemSet b) const {
    require(i >= 0 && i < n(), "agent index out of range");
    std::vector<ItemSet> bundles = bundles_;
    bundles[i] = b;
    return Allocation(m_, std::move(bundles));
}

std::string Allocation::str() const {
    std::string s = "[";
    for (int i = 0; i < n(); ++i) {
        if (i) s += " ";
        s += bundles_[i].str();
    }
    s += " | pool " + pool().str() + "]";
    return s;
}

SizeVector sizes(const Allocation& a) {
    SizeVector s(a.n());
    for (int i = 0; i < a.n(); ++i) s[i] = a[i].count();
    return s;
}

SizeVector sorted_sizes(const Allocation& a) {
    SizeVector s = sizes(a);
    std::sort(s.begin(), s.end());
    return s;
}

SizeVector sizes_with_pool(const Allocation& a) {
    SizeVector s = sizes(a);
    s.push_back(a.pool().count());
    return s;
}

namespace {

void require_same_shape(const Profile& p, const Allocation& a) {
    require(p.n() == a.n() && p.m() == a.m(), "profile and allocation shapes disagree");
}

} // namespace

bool is_clean(const Profile& p, const Allocation& a) {
    require_same_shape(p, a);
    for (int i = 0; i < p.n(); ++i) {
        const ItemSet b = a[i];
        if (class_is_integral(p[i].cls())) {
            if (!p[i].is_independent(b)) return false;
            continue;
        }
        Rat full = p[i](b);
        for (int e : b)
            if (p[i](b.without(e)) >= full) return false;
    }
    return true;
}

Allocation clean_up(const Profile& p, const Allocation& a) {
    require_same_shape(p, a);
    std::vector<ItemSet> bundles(p.n());
    for (int i = 0; i < p.n(); ++i) {
        const Valuation& v = p[i];
        const ItemSet b = a[i];
        const bool submodular = v.cls() == ValClass::matroidal ||
                                v.cls() == ValClass::binary_additive ||
                                v.cls() == ValClass::additive;
        ItemSet kept;
        if (submodular) {
            for (int e : b)
                if (v(kept.with(e)) > v(kept)) kept = kept.with(e);
        } else {
            kept = b;
            for (bool removed = true; removed;) {
                removed = false;
                for (int e : kept)
                    if (v(kept.without(e)) == v(kept)) {
                        kept = kept.without(e);
                        removed = true;
                        break;
                    }
            }
        }
        check_invariant(v(kept) == v(b), "clean_up changed a bundle's value");
        bundles[i] = kept;
    }
    return Allocation(a.m(), std::move(bundles));
}

Rat utilitarian_welfare(const Profile& p, const Allocation& a) {
    require_same_shape(p, a);
    Rat total(0);
    for (int i = 0; i < p.n(); ++i) total += p[i](a[i]);
    return total;
}

std::vector<Rat> utility_vector(const Profile& p, const Allocation& a) {
    require_same_shape(p, a);
    std::vector<Rat> u(p.n());
    for (int i = 0; i < p.n(); ++i) u[i] = p[i](a[i]);
    return u;
}

const char* lorenz_rel_str(LorenzRel r) {
    switch (r) {
        case LorenzRel::dominates: return "dominates";
        case LorenzRel::dominated: return "dominated";
        case LorenzRel::equal: return "equal";
        case LorenzRel::incomparable: return "incomparable";
    }
    return "?";
}

namespace {

template <class T>
LorenzRel lorenz_compare_impl(std::span<const T> a, std::span<const T> b) {
    require(a.size() == b.size(), "lorenz_compare: vectors differ in length");
    std::vector<T> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    bool some_greater = false, some_less = false;
    T pa{}, pb{};
    for (std::size_t k = 0; k < sa.size(); ++k) {
        pa += sa[k];
        pb += sb[k];
        if (pa > pb) some_greater = true;
        if (pa < pb) some_less = true;
    }
    if (sa == sb) return LorenzRel::equal;
    if (!some_less && some_greater) return LorenzRel::dominates;
    if (!some_greater && some_less) return LorenzRel::dominated;
    // Equal prefix sums everywhere forces equal sorted vectors, so the
    // remaining case has strict disagreement in both directions.
    return LorenzRel::incomparable;
}

} // namespace

LorenzRel lorenz_compare(std::span<const Rat> a, std::span<const Rat> b) {
    return lorenz_compare_impl(a, b);
}

LorenzRel lorenz_compare(std::span<const int> a, std::span<const int> b) {
    return lorenz_compare_impl(a, b);
}

bool is_mnw(const Profile& p, const Allocation& a, const EnumBudget& budget) {
    require_same_shape(p, a);
    // Nash welfare key: (number of positive utilities, product of them).
    auto key = [&](const Allocation& x) {
        int positive = 0;
        Rat product(1);
        for (int i = 0; i < p.n(); ++i) {
            Rat u = p[i](x[i]);
            if (u > 0) {
                ++positive;
                product *= u;
            }
        }
        return std::make_pair(positive, product);
    };
    auto mine = key(a);
    bool best = true;
    for_each_allocation(p.n(), p.m(), false, budget, [&](const Allocation& x) {
        if (!best) return;
        auto k = key(x);
        if (k.first > mine.first || (k.first == mine.first && k.second > mine.second))
            best = false;
    });
    return best;
}

} // namespace fairdiv
