#include "fairdiv/enumerate.hpp"

#include "fairdiv/errors.hpp"

namespace fairdiv {

long long allocation_count(int n, int m, bool complete_only, long long cap) {
    long long total = 1;
    const long long base = complete_only ? n : n + 1;
    for (int i = 0; i < m; ++i) {
        if (total > cap / base) return -1;
        total *= base;
    }
    return total;
}

void for_each_allocation(int n, int m, bool complete_only, const EnumBudget& budget,
                         const std::function<void(const Allocation&)>& fn) {
    require(n >= 1, "enumeration needs at least one agent");
    long long count = allocation_count(n, m, complete_only, budget.max_allocations);
    if (count < 0)
        throw EnumerationLimitError(
            "allocation enumeration exceeds the budget of " +
            std::to_string(budget.max_allocations) +
            " (raise --max-enum / FAIRDIV_MAX_ENUM to override)");

    std::vector<ItemSet> bundles(n);
    auto walk = [&](int item, auto&& self) -> void {
        if (item == m) {
            fn(Allocation(m, bundles));
            return;
        }
        if (!complete_only) self(item + 1, self); // leave in the pool
        for (int i = 0; i < n; ++i) {
            bundles[i] = bundles[i].with(item);
            self(item + 1, self);
            bundles[i] = bundles[i].without(item);
        }
    };
    walk(0, walk);
}

} // namespace fairdiv
