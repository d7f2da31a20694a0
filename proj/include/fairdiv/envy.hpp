#pragma once

#include "fairdiv/allocation.hpp"

namespace fairdiv {

// Complete weighted digraph on agents: w[i][j] = v_i(A_j) - v_i(A_i), the
// amount i envies j's bundle before subsidies. w[i][i] = 0.
struct EnvyGraph {
    int n = 0;
    std::vector<std::vector<Rat>> w;
};

EnvyGraph build_envy_graph(const Profile& p, const Allocation& a);

// True iff some directed cycle has strictly positive total weight
// (equivalently: the allocation cannot be made envy-free by any subsidies).
bool has_positive_cycle(const EnvyGraph& g);

// p_i = maximum weight of any path starting at i; the trivial single-vertex
// path counts as weight 0, so every entry is >= 0. Pre: no positive cycle.
std::vector<Rat> max_path_weights(const EnvyGraph& g);

// The max-path subsidy vector for (p, a). Pre: the envy graph has no
// positive-weight cycle. Paired with a, it is envy-free.
SubsidyVector subsidy_for(const Profile& p, const Allocation& a);

// v_i(A_i) + p_i >= v_i(A_j) + p_j for all i, j.
bool is_envy_free(const Profile& p, const Allocation& a, const SubsidyVector& subsidies);
bool is_envy_free(const Profile& p, const Allocation& a); // zero subsidies

} // namespace fairdiv
