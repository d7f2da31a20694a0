#pragma once

#include <optional>

#include "fairdiv/allocation.hpp"

namespace fairdiv {

// A clean allocation maximizing utilitarian welfare, computed by matroid
// intersection over item-agent pairs (agents' matroids vs. one-use-per-item),
// shortest augmenting paths, ties broken by (agent, item). Deterministic.
// Pre: every valuation is matroidal.
Allocation max_clean_welfare_allocation(const Profile& p);

// A sequence of single-item transfers from clean allocation B toward clean
// allocation A: agents[0] = i gains one item, agents.back() loses one, every
// intermediate agent breaks even, and cleanness is preserved throughout.
// agents may end at `pool` (the item came from / left to the unallocated set).
struct ExchangePath {
    static constexpr int pool = -1;
    std::vector<int> agents; // k^0 .. k^r
    std::vector<int> items;  // e^1 .. e^r; items[t] moves agents[t+1] -> agents[t]
};

// Pre: A, B clean, |A_i| > |B_i|. Follows the augmentation walk: the current
// endpoint picks the lowest-index item of its A-bundle it can absorb, then the
// walk moves to that item's holder in the current allocation.
ExchangePath transfer_path(const Profile& p, const Allocation& a, const Allocation& b, int i);

// Replays a transfer path on B (validates every step).
Allocation apply_transfer_path(const Allocation& b, const ExchangePath& path);

// A clean allocation with per-agent sizes exactly `target`, if one exists:
// runs the welfare maximizer on the profile truncated at `target` and checks
// the achieved welfare. Pre: matroidal profile.
std::optional<Allocation> size_vector_membership(const Profile& p, const SizeVector& target);

// Certificate for the canonical clean Lorenz dominating allocation:
// the allocation, its sorted size vector (identical across all clean Lorenz
// dominating allocations), and each agent's min/max bundle size over them.
struct LorenzCertificate {
    Allocation allocation;
    SizeVector sorted;
    SizeVector min_size;
    SizeVector max_size;
};

// Canonical member of the clean Lorenz dominating set: welfare maximizer
// followed by size-balancing single exchanges (each strictly decreases
// sum |A_i|^2) until none applies. Pre: matroidal profile.
LorenzCertificate lorenz_dominating(const Profile& p, std::vector<std::string>* trace = nullptr);

// Whether some clean Lorenz dominating allocation moves one unit of agent i's
// bundle size in direction delta (+1/-1) relative to `ld` (itself clean Lorenz
// dominating); returns a witness allocation. Only single exchanges with an
// adjacent-size partner can preserve the sorted vector, so those are tested.
std::optional<Allocation> single_exchange_membership(const Profile& p, const Allocation& ld,
                                                     int i, int delta);

} // namespace fairdiv
