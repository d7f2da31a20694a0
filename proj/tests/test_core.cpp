#include <doctest.h>

#include "fairdiv/items.hpp"
#include "fairdiv/matroid.hpp"
#include "fairdiv/rational.hpp"
#include "fairdiv/valuation.hpp"

using namespace fairdiv;

TEST_CASE("item sets behave as bitmask values") {
    ItemSet s = ItemSet::of({0, 2, 5});
    CHECK(s.count() == 3);
    CHECK(s.contains(2));
    CHECK_FALSE(s.contains(1));
    CHECK(s.str() == "{0,2,5}");
    CHECK(ItemSet().str() == "{}");
    CHECK(ItemSet::full(3) == ItemSet::of({0, 1, 2}));
    CHECK(s.with(1).count() == 4);
    CHECK(s.without(5) == ItemSet::of({0, 2}));
    CHECK(s.minus(ItemSet::of({2, 3})) == ItemSet::of({0, 5}));
    CHECK((s | ItemSet::of({1})) == ItemSet::of({0, 1, 2, 5}));
    CHECK((s & ItemSet::of({2, 3})) == ItemSet::of({2}));
    CHECK(ItemSet::of({0, 2}).subset_of(s));
    CHECK_FALSE(s.subset_of(ItemSet::of({0, 2})));

    std::vector<int> seen;
    for (int e : s) seen.push_back(e);
    CHECK(seen == std::vector<int>{0, 2, 5});
}

TEST_CASE("rational formatting and parsing round-trip") {
    CHECK(rat_str(Rat(3)) == "3");
    CHECK(rat_str(Rat(-1, 2)) == "-1/2");
    CHECK(rat_str(Rat(19, 2)) == "19/2");
    CHECK(rat_str(Rat(4, 2)) == "2");
    CHECK(rat_is_int(Rat(6, 3)));
    CHECK_FALSE(rat_is_int(Rat(1, 3)));

    CHECK(rat_parse("19/2") == Rat(19, 2));
    CHECK(rat_parse("-7") == Rat(-7));
    CHECK(rat_parse("-3/6") == Rat(-1, 2));
    CHECK_THROWS_AS(rat_parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(rat_parse("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(rat_parse("x"), std::invalid_argument);
    CHECK_THROWS_AS(rat_parse(""), std::invalid_argument);

    for (const char* text : {"0", "3", "-1/2", "19/2", "1000000/7"})
        CHECK(rat_str(rat_parse(text)) == text);
}

TEST_CASE("uniform matroid rank") {
    Matroid u = Matroid::uniform(4, 2);
    CHECK(u.rank(ItemSet()) == 0);
    CHECK(u.rank(ItemSet::of({1})) == 1);
    CHECK(u.rank(ItemSet::of({0, 1, 2})) == 2);
    CHECK(u.is_independent(ItemSet::of({0, 3})));
    CHECK_FALSE(u.is_independent(ItemSet::of({0, 1, 2})));
}

TEST_CASE("partition matroid rank with uncovered items free") {
    Matroid p = Matroid::partition(5, {ItemSet::of({0, 1, 2}), ItemSet::of({3, 4})}, {3, 1});
    CHECK(p.rank(ItemSet::of({3, 4})) == 1);
    CHECK(p.rank(ItemSet::full(5)) == 4);
    CHECK(p.rank(ItemSet::of({0, 1, 4})) == 3);

    // items outside every block do not count against any cap
    Matroid q = Matroid::partition(3, {ItemSet::of({0})}, {0});
    CHECK(q.rank(ItemSet::full(3)) == 2);
    CHECK(q.rank(ItemSet::of({0})) == 0);
}

TEST_CASE("laminar matroid rank") {
    Matroid l = Matroid::laminar(4, {ItemSet::full(4), ItemSet::of({0, 1})}, {2, 1});
    CHECK(l.rank(ItemSet::of({0, 1})) == 1);
    CHECK(l.rank(ItemSet::of({0, 2})) == 2);
    CHECK(l.rank(ItemSet::full(4)) == 2);
    CHECK_THROWS_AS(Matroid::laminar(4, {ItemSet::of({0, 1}), ItemSet::of({1, 2})}, {1, 1}),
                    std::invalid_argument);
}

TEST_CASE("transversal matroid rank is a maximum matching") {
    Matroid t = Matroid::transversal(4, {ItemSet::of({0, 1}), ItemSet::of({1, 2})});
    CHECK(t.rank(ItemSet::of({1})) == 1);
    CHECK(t.rank(ItemSet::of({0, 1})) == 2);
    CHECK(t.rank(ItemSet::of({1, 2})) == 2);
    CHECK(t.rank(ItemSet::of({0, 1, 2})) == 2);
    CHECK(t.rank(ItemSet::of({3})) == 0);
}

TEST_CASE("rank tables validate the matroid axioms") {
    // r(X) = min(|X|, 1) on 3 items
    std::vector<int> ok(8);
    for (int x = 0; x < 8; ++x) ok[x] = std::min(std::popcount(unsigned(x)), 1);
    Matroid m = Matroid::from_rank_table(3, ok);
    CHECK(m.rank(ItemSet::of({0, 2})) == 1);

    std::vector<int> jump = ok;
    jump[0b111] = 3; // marginal of 2 somewhere
    CHECK_THROWS_AS(Matroid::from_rank_table(3, jump), std::invalid_argument);

    std::vector<int> nonzero = ok;
    nonzero[0] = 1;
    CHECK_THROWS_AS(Matroid::from_rank_table(3, nonzero), std::invalid_argument);
}

TEST_CASE("valuation classes evaluate and restrict") {
    Valuation ba = Valuation::binary_additive(3, ItemSet::of({0, 2}));
    CHECK(ba.cls() == ValClass::binary_additive);
    CHECK(ba(ItemSet::of({0, 1})) == Rat(1));
    CHECK(ba(ItemSet::full(3)) == Rat(2));
    CHECK(ba.rank(ItemSet::full(3)) == 2);
    CHECK(ba.marginal(ItemSet::of({0}), 1) == Rat(0));

    Valuation add = Valuation::additive({Rat(1), Rat(1, 2)});
    CHECK(add(ItemSet::of({0, 1})) == Rat(3, 2));
    CHECK(add.cls() == ValClass::additive);

    Valuation r = add.restrict(ItemSet::of({0}));
    CHECK(r(ItemSet::of({0, 1})) == Rat(1));
    CHECK(r.cls() == ValClass::additive);

    Valuation u = Valuation::matroidal(Matroid::uniform(4, 3));
    Valuation t = u.truncate(2);
    CHECK(t(ItemSet::full(4)) == Rat(2));
    CHECK(t.cls() == ValClass::matroidal);

    Valuation tab = u.tabulated();
    for (std::uint64_t x = 0; x < 16; ++x)
        CHECK(tab(ItemSet(x)) == u(ItemSet(x)));
}

TEST_CASE("validate_class accepts lawful tables and pins violations") {
    // v(X) = m on sets containing item 0, else 0: superadditive
    const int m = 4;
    std::vector<Rat> prize(1 << m, Rat(0));
    for (std::uint64_t x = 1; x < (1u << m); x += 2) prize[x] = Rat(m);
    ValidationReport good = validate_class(Valuation::from_table(m, prize, ValClass::superadditive));
    CHECK(good.status == ValidationStatus::valid);
    CHECK(good.exhaustive);

    std::vector<Rat> shrinking(1 << m, Rat(0));
    shrinking[0b0001] = Rat(2); // v({0}) > v({0,1}) breaks monotonicity
    ValidationReport bad =
        validate_class(Valuation::from_table(m, shrinking, ValClass::superadditive));
    CHECK(bad.status == ValidationStatus::violated);
    REQUIRE_FALSE(bad.issues.empty());
    CHECK(bad.issues.front().axiom == "monotonicity");

    std::vector<Rat> nonadditive(1 << 2, Rat(0));
    nonadditive[0b11] = Rat(1); // singletons worth 0, pair worth 1
    ValidationReport pairOnly =
        validate_class(Valuation::from_table(2, nonadditive, ValClass::additive));
    CHECK(pairOnly.status == ValidationStatus::violated);
    CHECK(pairOnly.issues.front().axiom == "additivity");
}

TEST_CASE("profile class predicates") {
    Profile matroidal({Valuation::binary_additive(2, ItemSet::of({0})),
                       Valuation::matroidal(Matroid::uniform(2, 1))});
    CHECK(matroidal.all_matroidal());
    CHECK_FALSE(matroidal.all_superadditive_class());

    Profile additive({Valuation::additive({Rat(1), Rat(1)}),
                      Valuation::additive({Rat(0), Rat(1, 2)})});
    CHECK(additive.all_superadditive_class());
    CHECK_FALSE(additive.all_matroidal());

    CHECK_THROWS_AS(Profile({Valuation::additive({Rat(1)}),
                             Valuation::additive({Rat(1), Rat(1)})}),
                    std::invalid_argument);
}
