#include "fairdiv/envy.hpp"

#include <algorithm>

namespace fairdiv {

EnvyGraph build_envy_graph(const Profile& p, const Allocation& a) {
    require(p.n() == a.n() && p.m() == a.m(), "profile and allocation shapes disagree");
    EnvyGraph g;
    g.n = p.n();
    g.w.assign(g.n, std::vector<Rat>(g.n, Rat(0)));
    for (int i = 0; i < g.n; ++i) {
        Rat own = p[i](a[i]);
        for (int j = 0; j < g.n; ++j)
            if (j != i) g.w[i][j] = p[i](a[j]) - own;
    }
    return g;
}

namespace {

// All-pairs minimum walk weights on the negated graph. After the run,
// dist[i][i] < 0 for some i iff the original graph has a positive cycle;
// otherwise -dist[i][j] is the maximum weight of a simple path i -> j.
std::vector<std::vector<Rat>> negated_shortest(const EnvyGraph& g) {
    const int n = g.n;
    std::vector<std::vector<Rat>> d(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d[i][j] = i == j ? Rat(0) : -g.w[i][j];
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    return d;
}

} // namespace

bool has_positive_cycle(const EnvyGraph& g) {
    auto d = negated_shortest(g);
    for (int i = 0; i < g.n; ++i)
        if (d[i][i] < 0) return true;
    return false;
}

std::vector<Rat> max_path_weights(const EnvyGraph& g) {
    auto d = negated_shortest(g);
    for (int i = 0; i < g.n; ++i)
        require(!(d[i][i] < 0), "max_path_weights: envy graph has a positive-weight cycle");
    std::vector<Rat> p(g.n, Rat(0));
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) p[i] = std::max(p[i], -d[i][j]);
    return p;
}

SubsidyVector subsidy_for(const Profile& p, const Allocation& a) {
    return max_path_weights(build_envy_graph(p, a));
}

bool is_envy_free(const Profile& p, const Allocation& a, const SubsidyVector& subsidies) {
    require(static_cast<int>(subsidies.size()) == p.n(),
            "subsidy vector length differs from agent count");
    EnvyGraph g = build_envy_graph(p, a);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            if (g.w[i][j] + subsidies[j] > subsidies[i]) return false;
    return true;
}

bool is_envy_free(const Profile& p, const Allocation& a) {
    return is_envy_free(p, a, SubsidyVector(p.n(), Rat(0)));
}

} // namespace fairdiv
