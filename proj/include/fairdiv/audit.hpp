#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/enumerate.hpp"
#include "fairdiv/envy.hpp"
#include "fairdiv/exchange.hpp"
#include "fairdiv/mechanisms.hpp"

// Brute-force ground-truth oracles and property auditors. Everything here
// favors obviousness over speed; the point is to machine-check the library's
// guarantees on desk-scale instances with an independent implementation.
namespace fairdiv::audit {

enum class Verdict { holds, violated, skipped_too_large };
std::string verdict_str(Verdict v);

// A violated verdict always carries a replayable witness.
struct AuditReport {
    std::string property;
    std::string instance;
    Verdict verdict = Verdict::holds;
    std::string witness;
    std::string detail;
};

std::string profile_descriptor(const Profile& p);

using Mechanism = std::function<Outcome(const Profile&)>;

// Every ordered subpartition of the items (each item to an agent or, unless
// complete_only, left in the pool), exactly once, in a fixed order.
std::vector<Allocation> enumerate_allocations(const Profile& p,
                                              bool complete_only,
                                              const EnumBudget& budget = {});

// Streams every clean allocation as (bundles, sizes) without materializing
// Allocation objects. For matroidal profiles the walk prunes on independence;
// the refusal bound is still (n+1)^m like the full enumeration.
void for_each_clean(
    const Profile& p, const EnumBudget& budget,
    const std::function<void(const std::vector<ItemSet>&, const SizeVector&)>&
        fn);

std::vector<Allocation> brute_clean_allocations(const Profile& p,
                                                const EnumBudget& budget = {});

// All clean allocations whose sorted size vector weakly Lorenz dominates
// every clean allocation's. Matroidal profiles only; may be empty for none.
std::vector<Allocation> brute_cld(const Profile& p,
                                  const EnumBudget& budget = {});

// Moneyless fairness checks, quantified over all agent pairs.
AuditReport check_efx(const Profile& p, const Allocation& a);
AuditReport check_ef1(const Profile& p, const Allocation& a);

// Matroidal EFX in envy-graph form: every positive-weight arc (i,j) must
// satisfy v_i(A_j) = |A_j| = v_i(A_i) + 1.
AuditReport check_star_condition(const Profile& p, const Allocation& a);

// One candidate lie: `agent` reports `valuation` instead of the truth.
struct Misreport {
    int agent;
    Valuation valuation;
    std::string label;
};
using MisreportFamily = std::vector<Misreport>;

// Every restriction v_i|X of every agent's true valuation (m <= 12).
MisreportFamily restriction_misreports(const Profile& p);
// Every matroid rank function on the ground set, for every agent (m <= 4).
MisreportFamily matroid_misreports(const Profile& p);
// Seeded additive valuations with item values from {0, 1/4, 1/2, 3/4, 1}.
MisreportFamily additive_grid_misreports(const Profile& p, int per_agent,
                                         unsigned long long seed);

struct Deviation {
    int agent;
    std::string misreport;
    Rat truthful_utility;
    Rat lying_utility;
};

// Runs the mechanism truthfully and under every misreport, comparing the
// deviator's utility under her TRUE valuation. Profitable lies are reported
// as violations. jobs > 1 fans the runs out over threads; the merged result
// is order-deterministic either way.
AuditReport deviation_audit(const Mechanism& mech, const Profile& p,
                            const MisreportFamily& family, int jobs = 1);
// Same, but also returns the profitable deviations themselves.
std::vector<Deviation> find_deviations(const Mechanism& mech, const Profile& p,
                                       const MisreportFamily& family,
                                       int jobs = 1);

// Exchange-structure checks on brute-force extracted size-vector sets:
// (B-EXC+) for clean size vectors (pool coordinate last) and clean
// utilitarian-optimal size vectors, full (B-EXC) plus the per-coordinate
// +-1 property for the Lorenz dominating set, and agreement of the brute
// sets with the engine's certificate.
AuditReport check_exchange_axioms(const Profile& p,
                                  const EnumBudget& budget = {});

// Restriction lemmas over all pairs X subset-of Y per agent: minimum bundle
// size over the Lorenz class is monotone under restriction; restricting to
// X inside one's own bundle keeps X attainable (and forced, when the bundle
// was at the class minimum); and a below-the-largest bundle stays below the
// largest under further restriction.
AuditReport check_restriction_lemmas(const Profile& p,
                                     const EnumBudget& budget = {});

// Agreement of the envy-graph subsidy theorem with first principles on every
// enumerated allocation: a Bellman least-fixpoint oracle and (for n <= 5) a
// direct simple-path/cycle enumeration must match the Floyd-Warshall
// positive-cycle/max-path criterion, and the resulting subsidies must be
// envy-free whenever they exist.
AuditReport check_subsidy_characterization(const Profile& p,
                                           const EnumBudget& budget = {});

// Lorenz dominating and maximum Nash welfare allocations coincide for
// matroidal profiles; checked predicate-by-predicate over the enumeration.
AuditReport check_mnw_equivalence(const Profile& p,
                                  const EnumBudget& budget = {});

// Strawman used by the truthfulness audits: canonical Lorenz dominating
// allocation plus the exact envy-eliminating subsidies, no generosity.
// Not truthful; the audits must be able to catch it lying-prone.
Outcome strawman_ld_exact(const Profile& p);

// The three proof instances behind the lower bounds, parametrized.
struct LowerBoundFixture {
    std::string name;
    Profile profile;
    int agent;    // whose subsidy or profit the bound concerns
    Rat expected; // the exact bound the fixture must reproduce
};
std::vector<LowerBoundFixture> lower_bound_fixtures(int m, const Rat& eps,
                                                    int k);
AuditReport check_lower_bound_fixture(const LowerBoundFixture& f,
                                      const EnumBudget& budget = {});

// Search harness only, never asserts: over all complete allocations of a
// unit-marginal profile, the smallest achievable per-agent subsidy bound.
AuditReport search_complete_subsidy_floor(const Profile& p,
                                          const EnumBudget& budget = {});

struct SuiteOptions {
    EnumBudget budget{};
    int jobs = 1;
    unsigned long long seed = 0;
};

// Named suites run against one instance: "paper" (worked examples' property
// set: envy theorem, MNW equivalence, mechanism guarantees), "exchange"
// (M-convexity and restriction lemmas), "fairness" (EF/EFX/EF1 and the SEC
// intermediate conditions), "truthfulness" (deviation audits). Throws
// std::invalid_argument when the suite does not apply to the profile class.
std::vector<AuditReport> run_suite(const std::string& suite, const Profile& p,
                                   const SuiteOptions& opts = {});

} // namespace fairdiv::audit
