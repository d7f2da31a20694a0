#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fairdiv/items.hpp"
#include "fairdiv/matroid.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

// Valuation classes, ordered from most to least structured. Matroidal means
// "is a matroid rank function": monotone, submodular, marginals in {0,1}.
enum class ValClass { matroidal, binary_additive, additive, superadditive, general };

const char* val_class_str(ValClass c);
std::optional<ValClass> val_class_parse(std::string_view name);

// True when class `c` is guaranteed superadditive (what VCG requires).
inline bool class_is_superadditive(ValClass c) {
    return c == ValClass::binary_additive || c == ValClass::additive ||
           c == ValClass::superadditive;
}

// True when class `c` always takes integer values and exposes rank().
inline bool class_is_integral(ValClass c) {
    return c == ValClass::matroidal || c == ValClass::binary_additive;
}

// An immutable valuation function on subsets of {0,...,m-1}. Copies share
// state; all shared state is const, so concurrent evaluation is safe.
class Valuation {
public:
    static Valuation matroidal(Matroid matroid);
    static Valuation binary_additive(int m, ItemSet desired);
    static Valuation additive(std::vector<Rat> item_values);
    // Explicit table v[X.bits()], for superadditive/general classes.
    static Valuation from_table(int m, std::vector<Rat> by_subset, ValClass cls);

    int ground_size() const { return m_; }
    ValClass cls() const { return cls_; }
    const std::string& label() const { return label_; }
    Valuation with_label(std::string label) const;

    // evaluate: v(X). Pre: X inside the ground set.
    Rat operator()(ItemSet x) const { return eval_(x); }
    // Integer value; only for matroidal/binary-additive valuations.
    int rank(ItemSet x) const;
    // marginal: v(X+e) - v(X). Pre: e not in X.
    Rat marginal(ItemSet x, int e) const;
    // Pre: matroidal or binary-additive. True iff v(X) = |X|.
    bool is_independent(ItemSet x) const;

    // v|X: Y -> v(Y ∩ X). Preserves the class tag (all five classes are
    // closed under restriction).
    Valuation restrict(ItemSet x) const;
    // Y -> min(v(Y), cap). Pre: matroidal (rank truncation stays a rank).
    Valuation truncate(int cap) const;

    // Equivalent valuation backed by a dense table (m <= 20): O(1) evaluate.
    // An explicit accelerator for enumeration-heavy audits, not a hidden cache.
    Valuation tabulated() const;

    const Matroid* matroid() const { return matroid_.get(); } // null unless built from one

private:
    Valuation() = default;

    int m_ = 0;
    ValClass cls_ = ValClass::general;
    std::string label_;
    std::function<Rat(ItemSet)> eval_;
    std::function<int(ItemSet)> irank_; // set iff class_is_integral
    std::shared_ptr<const Matroid> matroid_;
};

// A profile of valuations over one ground set; agent count n >= 1.
class Profile {
public:
    explicit Profile(std::vector<Valuation> vals);

    int n() const { return static_cast<int>(vals_.size()); }
    int m() const { return m_; }
    const Valuation& operator[](int i) const { return vals_.at(i); }
    const std::vector<Valuation>& valuations() const { return vals_; }

    bool all_matroidal() const;
    bool all_superadditive_class() const;

    // Same profile with agent i's valuation replaced (misreports).
    Profile with(int i, Valuation v) const;
    // All valuations tabulated (enumeration-heavy callers).
    Profile tabulated() const;

private:
    std::vector<Valuation> vals_;
    int m_ = 0;
};

// --- class validation ----------------------------------------------------

struct ValidationIssue {
    std::string axiom;   // "monotonicity", "submodularity", ...
    std::string witness; // human-readable witness sets/values
};

enum class ValidationStatus { valid, violated, unverified };

struct ValidationReport {
    ValidationStatus status = ValidationStatus::valid;
    std::vector<ValidationIssue> issues;
    bool truncated = false;    // issue list capped
    bool exhaustive = false;   // whole 2^m lattice checked
    std::string note;
};

struct ValidationOptions {
    int exhaustive_bound = 12;     // check every subset pair up to this m
    int sample_count = 4096;       // spot checks beyond the bound
    std::uint64_t sample_seed = 0; // deterministic sampling
    int max_issues = 64;
};

// Checks v against the axioms of its declared class. Exhaustive for
// m <= exhaustive_bound; otherwise seeded spot checks and, absent a violation,
// status `unverified` (never silent acceptance).
ValidationReport validate_class(const Valuation& v, const ValidationOptions& opts = {});

} // namespace fairdiv
