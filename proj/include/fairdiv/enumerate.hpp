#pragma once

#include <functional>

#include "fairdiv/allocation.hpp"

namespace fairdiv {

// Number of (partial or complete) allocations of m items to n agents, or -1
// when it exceeds `cap`.
long long allocation_count(int n, int m, bool complete_only, long long cap);

// Streams every allocation (complete ones only if requested) in a fixed
// order: item 0 varies slowest, owner order pool, agent 0, agent 1, ...
// Throws EnumerationLimitError up front when the count exceeds the budget.
void for_each_allocation(int n, int m, bool complete_only, const EnumBudget& budget,
                         const std::function<void(const Allocation&)>& fn);

} // namespace fairdiv
