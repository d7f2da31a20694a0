#include <doctest.h>

#include <algorithm>

#include "fairdiv/audit.hpp"
#include "fairdiv/matroid.hpp"
#include "fairdiv/mechanisms.hpp"
#include "fairdiv/valuation.hpp"

using namespace fairdiv;
using namespace fairdiv::audit;

namespace {

Profile chain_profile() {
    return Profile({Valuation::binary_additive(5, ItemSet::of({0, 1})),
                    Valuation::binary_additive(5, ItemSet::of({0, 1, 2})),
                    Valuation::matroidal(Matroid::partition(
                        5, {ItemSet::of({0, 1, 2}), ItemSet::of({3, 4})}, {3, 1}))});
}

} // namespace

TEST_CASE("efx is strictly stronger than ef1") {
    // one valuable and one worthless item, both held by the other agent
    Profile p({Valuation::additive({Rat(1), Rat(0)}),
               Valuation::additive({Rat(0), Rat(0)})});
    Allocation a(2, {ItemSet(), ItemSet::of({0, 1})});
    AuditReport efx = check_efx(p, a);
    CHECK(efx.verdict == Verdict::violated);
    CHECK_FALSE(efx.witness.empty());
    CHECK(check_ef1(p, a).verdict == Verdict::holds);

    Allocation fair(2, {ItemSet::of({0}), ItemSet::of({1})});
    CHECK(check_efx(p, fair).verdict == Verdict::holds);
}

TEST_CASE("star condition certifies envy arcs of weight one into full bundles") {
    Profile p = chain_profile();
    Allocation good(5, {ItemSet::of({0, 1}), ItemSet::of({2, 4}), ItemSet::of({3})});
    CHECK(check_star_condition(p, good).verdict == Verdict::holds);
    CHECK(check_star_condition(p, sec_algorithm(p).allocation).verdict == Verdict::holds);

    Profile duo({Valuation::binary_additive(2, ItemSet::of({0, 1})),
                 Valuation::binary_additive(2, ItemSet::of({0, 1}))});
    Allocation lopsided(2, {ItemSet(), ItemSet::of({0, 1})});
    AuditReport bad = check_star_condition(duo, lopsided);
    CHECK(bad.verdict == Verdict::violated);
    CHECK_FALSE(bad.witness.empty());
}

TEST_CASE("exchange axioms hold on the chain profile with pinned set sizes") {
    AuditReport r = check_exchange_axioms(chain_profile());
    CHECK(r.verdict == Verdict::holds);
    CHECK(r.detail == "S1=28 S2=9 S*=3 size vectors, 14 dominating allocations");
}

TEST_CASE("restriction lemmas hold on the chain profile with pinned counts") {
    AuditReport r = check_restriction_lemmas(chain_profile());
    CHECK(r.verdict == Verdict::holds);
    CHECK(r.detail == "144 clean allocations, 3x32 restrictions, 729 nested pairs, 14 dominating members");
}

TEST_CASE("the three subsidy methods agree on every enumerated allocation") {
    AuditReport r = check_subsidy_characterization(chain_profile());
    CHECK(r.verdict == Verdict::holds);
    CHECK(r.detail ==
          "agreement on every allocation (3 independent methods), 384 subsidy vectors certified minimal");
}

TEST_CASE("lorenz dominance and nash optimality coincide on the chain profile") {
    AuditReport r = check_mnw_equivalence(chain_profile());
    CHECK(r.verdict == Verdict::holds);
    CHECK(r.detail == "Lorenz dominance and Nash optimality coincide allocation by allocation; best (1,1,2)");
}

TEST_CASE("lower bound fixtures reproduce their exact bounds") {
    std::vector<LowerBoundFixture> f = lower_bound_fixtures(10, Rat(1, 2), 1);
    REQUIRE(f.size() == 3);

    CHECK(f[0].name == "near-tie-additive");
    CHECK(f[0].expected == Rat(19, 2));
    CHECK(check_lower_bound_fixture(f[0]).verdict == Verdict::holds);

    CHECK(f[1].name == "single-prized-item");
    CHECK(f[1].expected == Rat(10));
    CHECK(check_lower_bound_fixture(f[1]).verdict == Verdict::holds);

    CHECK(f[2].name == "completion-bait");
    CHECK(f[2].expected == Rat(1));
    CHECK(check_lower_bound_fixture(f[2]).verdict == Verdict::holds);

    // scaling the parameters scales the bounds
    std::vector<LowerBoundFixture> g = lower_bound_fixtures(4, Rat(1, 4), 2);
    CHECK(g[0].expected == Rat(15, 4));
    CHECK(g[1].expected == Rat(4));
    CHECK(g[2].expected == Rat(2));
    CHECK(g[2].profile.m() == 12);
}

TEST_CASE("the exact-subsidy strawman is catchably manipulable") {
    // bob wants nothing; faking interest in the item makes the strawman pay him
    Profile p({Valuation::binary_additive(1, ItemSet::of({0})),
               Valuation::binary_additive(1, ItemSet())});
    MisreportFamily fam = matroid_misreports(p);
    CHECK(fam.size() == 4); // 2 rank functions on one item, per agent

    Mechanism strawman = [](const Profile& q) { return strawman_ld_exact(q); };
    AuditReport r = deviation_audit(strawman, p, fam);
    CHECK(r.verdict == Verdict::violated);

    std::vector<Deviation> devs = find_deviations(strawman, p, fam);
    REQUIRE_FALSE(devs.empty());
    bool bob_profits = std::any_of(devs.begin(), devs.end(), [](const Deviation& d) {
        return d.agent == 1 && d.lying_utility - d.truthful_utility == Rat(1);
    });
    CHECK(bob_profits);

    // the subsidized egalitarian mechanism resists the same family
    CHECK(deviation_audit([](const Profile& q) { return se_mechanism(q); }, p, fam).verdict ==
          Verdict::holds);
}

TEST_CASE("misreport families have the advertised sizes") {
    Profile p = chain_profile();
    CHECK(restriction_misreports(p).size() == 3u * 32u);

    Profile duo({Valuation::binary_additive(2, ItemSet::of({0})),
                 Valuation::binary_additive(2, ItemSet::of({1}))});
    CHECK(matroid_misreports(duo).size() == 2u * 5u);
    CHECK(additive_grid_misreports(duo, 7, 42).size() == 2u * 7u);

    // grid values stay on the quarter grid
    for (const Misreport& mr : additive_grid_misreports(duo, 3, 9)) {
        for (int e = 0; e < 2; ++e) {
            Rat v = mr.valuation(ItemSet::single(e));
            CHECK(v >= Rat(0));
            CHECK(v <= Rat(1));
            CHECK(rat_is_int(v * 4));
        }
    }
}

TEST_CASE("deviation audits are deterministic across thread counts") {
    Profile p = chain_profile();
    MisreportFamily fam = restriction_misreports(p);
    Mechanism se = [](const Profile& q) { return se_mechanism(q); };
    AuditReport seq = deviation_audit(se, p, fam, 1);
    AuditReport par = deviation_audit(se, p, fam, 4);
    CHECK(seq.verdict == par.verdict);
    CHECK(seq.property == par.property);
    CHECK(seq.witness == par.witness);
    CHECK(seq.detail == par.detail);
    CHECK(seq.detail == "no profitable misreport among 96 candidates");
    CHECK(seq.property == "truthfulness(se)");
}

TEST_CASE("suites run green on the chain profile and reject wrong classes") {
    Profile p = chain_profile();
    for (const char* suite : {"paper", "exchange", "fairness", "truthfulness"}) {
        std::vector<AuditReport> reports = run_suite(suite, p);
        REQUIRE_FALSE(reports.empty());
        for (const AuditReport& r : reports) {
            INFO(suite << " / " << r.property << ": " << r.witness);
            CHECK(r.verdict == Verdict::holds);
        }
    }

    Profile additive({Valuation::additive({Rat(1), Rat(1, 2)}),
                      Valuation::additive({Rat(2, 5), Rat(3, 5)})});
    CHECK_THROWS_AS(run_suite("exchange", additive), std::invalid_argument);
    CHECK_THROWS_AS(run_suite("nonsense", p), std::invalid_argument);
}

TEST_CASE("the subsidy floor search reports without asserting") {
    AuditReport r = search_complete_subsidy_floor(chain_profile());
    CHECK(r.verdict == Verdict::holds);
    CHECK(r.detail.find("per-agent subsidy floor 0") != std::string::npos);
    CHECK(r.detail.find("90/243") != std::string::npos);
}
