#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/enumerate.hpp"
#include "fairdiv/envy.hpp"
#include "fairdiv/exchange.hpp"

namespace fairdiv {

// Result of one mechanism run: the allocation, the subsidy paid to each
// agent, the resulting utilities v_i(A_i) + p_i under the reported profile,
// the mechanism tag, and an ordered log of the algorithmic decisions. Trace
// lines are stable strings meant for fixture diffing.
struct Outcome {
    Allocation allocation;
    SubsidyVector subsidies;
    std::vector<Rat> utilities;
    std::string mechanism;
    std::vector<std::string> trace;
};

// Subsidized egalitarian. Picks the canonical clean Lorenz dominating
// allocation, then pays 1 to each agent whose bundle is smallest over the
// whole Lorenz dominating class and smaller than the largest bundle.
// Truthful, utilitarian optimal, envy-free; subsidies in {0,1} with total
// at most n-1.
Outcome se_mechanism(const Profile& p);

// Same with the second condition dropped: every agent at the class minimum
// is paid, so the total can reach n.
Outcome se_variant_no_cap(const Profile& p);

// Hooks into the completion loop, used by audits to inspect every
// intermediate state. agent is the endpoint whose placement was tried;
// path is the node sequence of the rejecting walk.
struct SecObserver {
    std::function<void(const Allocation&)> on_start;
    std::function<void(int item, int agent, const std::vector<int>& path,
                       const Rat& weight)>
        on_reject;
    std::function<void(int item, int agent, const Allocation&)> on_commit;
};

// Subsidized egalitarian with completion. Extends the canonical clean
// Lorenz dominating allocation to a complete one, placing leftover items in
// ascending index order. Each placement starts at agent 0 and walks to the
// initial agent of a maximum-weight positive envy path ending at the current
// candidate (ties by lexicographic node sequence) until no such path exists.
// Pays 1 to each agent from which the final envy graph has a weight-1 path.
// Complete, utilitarian optimal, envy-free, EFX; total subsidy at most n-1.
Outcome sec_algorithm(const Profile& p, const SecObserver* obs = nullptr);

// VCG where every agent is handed m upfront and pays the externality she
// imposes on the others. Requires every valuation tagged additive, binary
// additive, or superadditive. Additive profiles use the per-item argmax;
// other profiles enumerate complete allocations within the budget.
// Truthful, utilitarian optimal, envy-free; subsidies in [0,m].
Outcome vcg_upfront(const Profile& p, const EnumBudget& budget = {});

// Gives all items to the lowest-index agent with maximal v_i(M) and pays
// every other agent that amount. Works for any monotone valuations.
Outcome winner_takes_all(const Profile& p);

} // namespace fairdiv
