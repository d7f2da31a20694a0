#pragma once

#include <span>
#include <string>
#include <vector>

#include "fairdiv/valuation.hpp"

namespace fairdiv {

// A partial allocation: pairwise-disjoint bundles, one per agent; items in no
// bundle sit in the unallocated pool. Value type; never mutated in place.
class Allocation {
public:
    Allocation(int m, std::vector<ItemSet> bundles);
    static Allocation empty(int n, int m);

    int n() const { return static_cast<int>(bundles_.size()); }
    int m() const { return m_; }
    const ItemSet& operator[](int i) const { return bundles_.at(i); }
    const std::vector<ItemSet>& bundles() const { return bundles_; }
    ItemSet allocated() const;
    ItemSet pool() const { return ItemSet::full(m_).minus(allocated()); }
    bool complete() const { return pool().empty(); }

    Allocation with_bundle(int i, ItemSet b) const;

    bool operator==(const Allocation&) const = default;
    // Canonical text form: "[{0,1} {2} | pool {3}]".
    std::string str() const;

private:
    int m_ = 0;
    std::vector<ItemSet> bundles_;
};

using SizeVector = std::vector<int>;   // |A_1|, ..., |A_n|
using SubsidyVector = std::vector<Rat>;

SizeVector sizes(const Allocation& a);
// Ascending; the vector Lorenz comparisons are made on.
SizeVector sorted_sizes(const Allocation& a);
// Agent sizes followed by the pool size (the exchange sets over N ∪ {0}).
SizeVector sizes_with_pool(const Allocation& a);

// Clean: every item in every bundle has strictly positive marginal value,
// i.e. removing any single item loses value. For matroidal valuations this is
// exactly v_i(A_i) = |A_i|.
bool is_clean(const Profile& p, const Allocation& a);

// Removes valueless items deterministically, preserving every v_i(A_i).
// Submodular classes keep the ascending greedy basis (scan items ascending,
// keep those with positive marginal on the kept prefix). Classes without
// diminishing returns instead drop the lowest-index zero-marginal item until
// none remains (a greedy build-up could destroy value there).
Allocation clean_up(const Profile& p, const Allocation& a);

Rat utilitarian_welfare(const Profile& p, const Allocation& a);
std::vector<Rat> utility_vector(const Profile& p, const Allocation& a); // v_i(A_i)

enum class LorenzRel { dominates, dominated, equal, incomparable };
const char* lorenz_rel_str(LorenzRel r);

// Compares by prefix sums of the ascending sorts. `dominates` means every
// prefix sum of a is >= that of b and the sorted vectors differ.
LorenzRel lorenz_compare(std::span<const Rat> a, std::span<const Rat> b);
LorenzRel lorenz_compare(std::span<const int> a, std::span<const int> b);

// Budget for brute-force enumeration; functions that would exceed it throw
// EnumerationLimitError instead of silently sampling.
struct EnumBudget {
    long long max_allocations = 2'000'000;
};

// True iff a maximizes |positive-utility agents| and then the product of
// positive utilities over all allocations. Brute force within the budget.
bool is_mnw(const Profile& p, const Allocation& a, const EnumBudget& budget = {});

} // namespace fairdiv
