#pragma once

#include <string>
#include <vector>

#include "fairdiv/items.hpp"

namespace fairdiv {

enum class MatroidKind { uniform, partition, laminar, transversal, rank_table };

const char* matroid_kind_str(MatroidKind k);

// A matroid on ground set {0,...,m-1}, queried through its rank function.
// Structured families (uniform/partition/laminar/transversal) compute rank on
// demand; rank_table stores the full 2^m table and is validated against the
// rank axioms at construction (which caps its ground set at 12 items).
class Matroid {
public:
    static Matroid uniform(int m, int rank);
    // Blocks must be pairwise disjoint; items outside every block are free.
    static Matroid partition(int m, std::vector<ItemSet> blocks, std::vector<int> caps);
    // Sets must form a laminar family (pairwise nested or disjoint).
    static Matroid laminar(int m, std::vector<ItemSet> sets, std::vector<int> caps);
    // rank(X) = maximum matching between items of X and slots containing them.
    static Matroid transversal(int m, std::vector<ItemSet> slots);
    // table[X.bits()] = rank of X; validated exhaustively (m <= 12).
    static Matroid from_rank_table(int m, std::vector<int> table);

    int ground_size() const { return m_; }
    MatroidKind kind() const { return kind_; }
    int rank(ItemSet x) const;
    bool is_independent(ItemSet x) const { return rank(x) == x.count(); }

    // Structured data accessors (for serialization).
    int uniform_rank() const { return uniform_rank_; }
    const std::vector<ItemSet>& sets() const { return sets_; }
    const std::vector<int>& caps() const { return caps_; }
    const std::vector<int>& table() const { return table_; }

private:
    Matroid(int m, MatroidKind kind) : m_(m), kind_(kind) {}

    int m_ = 0;
    MatroidKind kind_ = MatroidKind::uniform;
    int uniform_rank_ = 0;
    std::vector<ItemSet> sets_; // partition blocks / laminar sets / transversal slots
    std::vector<int> caps_;
    std::vector<int> table_;
};

} // namespace fairdiv
