#include "fairdiv/valuation.hpp"

#include <algorithm>
#include <random>

namespace fairdiv {

const char* val_class_str(ValClass c) {
    switch (c) {
        case ValClass::matroidal: return "matroidal";
        case ValClass::binary_additive: return "binary_additive";
        case ValClass::additive: return "additive";
        case ValClass::superadditive: return "superadditive";
        case ValClass::general: return "general";
    }
    return "?";
}

std::optional<ValClass> val_class_parse(std::string_view name) {
    if (name == "matroidal") return ValClass::matroidal;
    if (name == "binary_additive") return ValClass::binary_additive;
    if (name == "additive") return ValClass::additive;
    if (name == "superadditive") return ValClass::superadditive;
    if (name == "general") return ValClass::general;
    return std::nullopt;
}

Valuation Valuation::matroidal(Matroid matroid) {
    Valuation v;
    v.m_ = matroid.ground_size();
    v.cls_ = ValClass::matroidal;
    v.matroid_ = std::make_shared<const Matroid>(std::move(matroid));
    auto mt = v.matroid_;
    v.irank_ = [mt](ItemSet x) { return mt->rank(x); };
    v.eval_ = [mt](ItemSet x) { return Rat(mt->rank(x)); };
    v.label_ = std::string("matroidal/") + matroid_kind_str(mt->kind());
    return v;
}

Valuation Valuation::binary_additive(int m, ItemSet desired) {
    require(m >= 0 && m <= kMaxItems, "ground set size must be in [0, 64]");
    require(desired.subset_of(ItemSet::full(m)), "desired set outside the ground set");
    Valuation v;
    v.m_ = m;
    v.cls_ = ValClass::binary_additive;
    v.irank_ = [desired](ItemSet x) { return (x & desired).count(); };
    v.eval_ = [desired](ItemSet x) { return Rat((x & desired).count()); };
    v.label_ = "binary_additive" + desired.str();
    return v;
}

Valuation Valuation::additive(std::vector<Rat> item_values) {
    int m = static_cast<int>(item_values.size());
    require(m <= kMaxItems, "ground set size must be in [0, 64]");
    for (const Rat& r : item_values) require(r >= 0, "additive: item values must be nonnegative");
    Valuation v;
    v.m_ = m;
    v.cls_ = ValClass::additive;
    auto vals = std::make_shared<const std::vector<Rat>>(std::move(item_values));
    v.eval_ = [vals](ItemSet x) {
        Rat total(0);
        for (int e : x) total += (*vals)[e];
        return total;
    };
    v.label_ = "additive";
    return v;
}

Valuation Valuation::from_table(int m, std::vector<Rat> by_subset, ValClass cls) {
    require(m >= 0 && m <= 20, "table valuations support at most 20 items");
    require(by_subset.size() == (std::size_t{1} << m), "table must have exactly 2^m entries");
    Valuation v;
    v.m_ = m;
    v.cls_ = cls;
    auto table = std::make_shared<const std::vector<Rat>>(std::move(by_subset));
    v.eval_ = [table](ItemSet x) { return (*table)[x.bits()]; };
    if (class_is_integral(cls)) {
        v.irank_ = [table](ItemSet x) {
            const Rat& r = (*table)[x.bits()];
            require(rat_is_int(r), "integer-class table holds a non-integer value");
            return static_cast<int>(r.numerator());
        };
    }
    v.label_ = std::string(val_class_str(cls)) + "/table";
    return v;
}

Valuation Valuation::with_label(std::string label) const {
    Valuation v = *this;
    v.label_ = std::move(label);
    return v;
}

int Valuation::rank(ItemSet x) const {
    require(x.subset_of(ItemSet::full(m_)), "evaluate outside the ground set");
    require(static_cast<bool>(irank_), "rank() requires an integer-valued class");
    return irank_(x);
}

Rat Valuation::marginal(ItemSet x, int e) const {
    require(e >= 0 && e < m_, "marginal: item outside the ground set");
    require(!x.contains(e), "marginal: item already in the set");
    require(x.subset_of(ItemSet::full(m_)), "marginal: set outside the ground set");
    return eval_(x.with(e)) - eval_(x);
}

bool Valuation::is_independent(ItemSet x) const {
    require(class_is_integral(cls_), "is_independent requires an integer-valued class");
    return rank(x) == x.count();
}

Valuation Valuation::restrict(ItemSet x) const {
    require(x.subset_of(ItemSet::full(m_)), "restrict outside the ground set");
    Valuation v;
    v.m_ = m_;
    v.cls_ = cls_;
    auto base_eval = eval_;
    v.eval_ = [base_eval, x](ItemSet y) { return base_eval(y & x); };
    if (irank_) {
        auto base_rank = irank_;
        v.irank_ = [base_rank, x](ItemSet y) { return base_rank(y & x); };
    }
    v.label_ = label_ + "|" + x.str();
    return v;
}

Valuation Valuation::truncate(int cap) const {
    require(cls_ == ValClass::matroidal || cls_ == ValClass::binary_additive,
            "truncate requires a matroidal valuation");
    require(cap >= 0, "truncate: cap must be nonnegative");
    Valuation v;
    v.m_ = m_;
    v.cls_ = cls_;
    auto base_rank = irank_;
    v.irank_ = [base_rank, cap](ItemSet y) { return std::min(base_rank(y), cap); };
    auto r = v.irank_;
    v.eval_ = [r](ItemSet y) { return Rat(r(y)); };
    v.label_ = label_ + "^" + std::to_string(cap);
    return v;
}

Valuation Valuation::tabulated() const {
    require(m_ <= 20, "tabulated() supports at most 20 items");
    const std::size_t size = std::size_t{1} << m_;
    Valuation v;
    v.m_ = m_;
    v.cls_ = cls_;
    v.label_ = label_;
    if (irank_) {
        auto table = std::make_shared<std::vector<int>>(size);
        for (std::size_t x = 0; x < size; ++x) (*table)[x] = irank_(ItemSet(x));
        std::shared_ptr<const std::vector<int>> t = table;
        v.irank_ = [t](ItemSet x) { return (*t)[x.bits()]; };
        v.eval_ = [t](ItemSet x) { return Rat((*t)[x.bits()]); };
    } else {
        auto table = std::make_shared<std::vector<Rat>>(size);
        for (std::size_t x = 0; x < size; ++x) (*table)[x] = eval_(ItemSet(x));
        std::shared_ptr<const std::vector<Rat>> t = table;
        v.eval_ = [t](ItemSet x) { return (*t)[x.bits()]; };
    }
    return v;
}

Profile::Profile(std::vector<Valuation> vals) : vals_(std::move(vals)) {
    require(!vals_.empty(), "profile needs at least one agent");
    m_ = vals_[0].ground_size();
    for (const Valuation& v : vals_)
        require(v.ground_size() == m_, "profile valuations disagree on the ground set");
}

bool Profile::all_matroidal() const {
    return std::all_of(vals_.begin(), vals_.end(), [](const Valuation& v) {
        return v.cls() == ValClass::matroidal || v.cls() == ValClass::binary_additive;
    });
}

bool Profile::all_superadditive_class() const {
    return std::all_of(vals_.begin(), vals_.end(),
                       [](const Valuation& v) { return class_is_superadditive(v.cls()); });
}

Profile Profile::with(int i, Valuation v) const {
    require(i >= 0 && i < n(), "agent index out of range");
    std::vector<Valuation> vals = vals_;
    vals[i] = std::move(v);
    return Profile(std::move(vals));
}

Profile Profile::tabulated() const {
    std::vector<Valuation> vals;
    vals.reserve(vals_.size());
    for (const Valuation& v : vals_) vals.push_back(v.tabulated());
    return Profile(std::move(vals));
}

// --- validate_class -------------------------------------------------------

namespace {

struct IssueSink {
    ValidationReport& report;
    int max_issues;

    void add(const std::string& axiom, const std::string& witness) {
        report.status = ValidationStatus::violated;
        if (static_cast<int>(report.issues.size()) >= max_issues) {
            report.truncated = true;
            return;
        }
        report.issues.push_back({axiom, witness});
    }
};

std::string pair_witness(const Valuation& v, ItemSet x, ItemSet y) {
    return "v(" + x.str() + ")=" + rat_str(v(x)) + ", v(" + y.str() + ")=" + rat_str(v(y)) +
           ", v(union)=" + rat_str(v(x | y)) + ", v(intersection)=" + rat_str(v(x & y));
}

void check_common(const Valuation& v, ItemSet x, int e, IssueSink& sink) {
    Rat lo = v(x), hi = v(x.with(e));
    if (hi < lo)
        sink.add("monotonicity", "v(" + x.str() + ")=" + rat_str(lo) + " > v(" +
                                     x.with(e).str() + ")=" + rat_str(hi));
}

void check_class_pointwise(const Valuation& v, ItemSet x, IssueSink& sink) {
    switch (v.cls()) {
        case ValClass::binary_additive:
        case ValClass::additive: {
            Rat total(0);
            for (int e : x) total += v(ItemSet::single(e));
            if (v(x) != total)
                sink.add("additivity", "v(" + x.str() + ")=" + rat_str(v(x)) +
                                           " != sum of singletons " + rat_str(total));
            break;
        }
        default:
            break;
    }
}

} // namespace

ValidationReport validate_class(const Valuation& v, const ValidationOptions& opts) {
    ValidationReport report;
    IssueSink sink{report, opts.max_issues};
    const int m = v.ground_size();
    const ItemSet full = ItemSet::full(m);

    if (v(ItemSet()) != Rat(0)) sink.add("empty-set", "v({}) = " + rat_str(v(ItemSet())) + " != 0");
    if (v(full) > m)
        sink.add("value-bound", "v(M) = " + rat_str(v(full)) + " > m = " + std::to_string(m));
    if (v.cls() == ValClass::binary_additive)
        for (int e = 0; e < m; ++e) {
            Rat s = v(ItemSet::single(e));
            if (s != Rat(0) && s != Rat(1))
                sink.add("binary-values",
                         "v({" + std::to_string(e) + "}) = " + rat_str(s) + " not in {0,1}");
        }

    const bool exhaustive = m <= opts.exhaustive_bound;
    report.exhaustive = exhaustive;

    if (exhaustive) {
        const std::uint64_t size = std::uint64_t{1} << m;
        // One dense pass over the lattice; reused by every axiom below.
        std::vector<Rat> t(size);
        for (std::uint64_t x = 0; x < size; ++x) t[x] = v(ItemSet(x));

        for (std::uint64_t x = 0; x < size; ++x)
            for (int e = 0; e < m; ++e) {
                if ((x >> e) & 1) continue;
                const std::uint64_t xe = x | (std::uint64_t{1} << e);
                if (t[xe] < t[x])
                    sink.add("monotonicity", "v(" + ItemSet(x).str() + ")=" + rat_str(t[x]) +
                                                 " > v(" + ItemSet(xe).str() + ")=" +
                                                 rat_str(t[xe]));
                if (v.cls() == ValClass::matroidal) {
                    Rat d = t[xe] - t[x];
                    if (d != Rat(0) && d != Rat(1))
                        sink.add("unit-marginal", "marginal of item " + std::to_string(e) +
                                                      " at " + ItemSet(x).str() + " is " +
                                                      rat_str(d));
                }
            }
        if (v.cls() == ValClass::matroidal) {
            for (std::uint64_t x = 0; x < size && !report.truncated; ++x)
                for (std::uint64_t y = x + 1; y < size; ++y)
                    if (t[x | y] + t[x & y] > t[x] + t[y]) {
                        sink.add("submodularity", pair_witness(v, ItemSet(x), ItemSet(y)));
                        if (report.truncated) break;
                    }
        }
        if (v.cls() == ValClass::additive || v.cls() == ValClass::binary_additive)
            for (std::uint64_t x = 0; x < size; ++x) check_class_pointwise(v, ItemSet(x), sink);
        if (v.cls() == ValClass::superadditive) {
            // Disjoint nonempty pairs: y ranges over submasks of x's complement.
            for (std::uint64_t x = 1; x < size && !report.truncated; ++x) {
                const std::uint64_t comp = full.bits() & ~x;
                for (std::uint64_t y = comp; y != 0; y = (y - 1) & comp) {
                    if (y < x) break; // each unordered pair once
                    if (t[x] + t[y] > t[x | y])
                        sink.add("superadditivity",
                                 "v(" + ItemSet(x).str() + ")+v(" + ItemSet(y).str() + ") = " +
                                     rat_str(t[x] + t[y]) + " > v(" + ItemSet(x | y).str() +
                                     ")=" + rat_str(t[x | y]));
                }
            }
        }
    } else {
        std::mt19937_64 rng(opts.sample_seed);
        auto random_set = [&] { return ItemSet(rng() & full.bits()); };
        for (int s = 0; s < opts.sample_count; ++s) {
            ItemSet x = random_set();
            int e = static_cast<int>(rng() % static_cast<std::uint64_t>(std::max(m, 1)));
            if (m > 0 && !x.contains(e)) check_common(v, x, e, sink);
            switch (v.cls()) {
                case ValClass::matroidal: {
                    ItemSet y = random_set();
                    if (v(x | y) + v(x & y) > v(x) + v(y))
                        sink.add("submodularity", pair_witness(v, x, y));
                    if (m > 0 && !x.contains(e)) {
                        Rat d = v.marginal(x, e);
                        if (d != Rat(0) && d != Rat(1))
                            sink.add("unit-marginal", "marginal of item " + std::to_string(e) +
                                                          " at " + x.str() + " is " + rat_str(d));
                    }
                    break;
                }
                case ValClass::superadditive: {
                    ItemSet y = ItemSet(rng() & full.minus(x).bits());
                    if (!x.empty() && !y.empty() && v(x) + v(y) > v(x | y))
                        sink.add("superadditivity", pair_witness(v, x, y));
                    break;
                }
                default:
                    check_class_pointwise(v, x, sink);
                    break;
            }
        }
        if (report.status == ValidationStatus::valid) {
            report.status = ValidationStatus::unverified;
            report.note = "ground set exceeds the exhaustive bound; " +
                          std::to_string(opts.sample_count) +
                          " seeded spot checks passed, axioms not proven";
        }
    }
    return report;
}

} // namespace fairdiv
