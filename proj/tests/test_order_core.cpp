#include "doctest.h"
#include "porder/order.hpp"

using namespace porder;

namespace {

IntervalSpec shortlex_spec(Word lo, Word hi) {
    IntervalSpec spec;
    spec.order = shortlex_order();
    spec.b = [lo](const Word&) { return lo; };
    spec.t = [hi](const Word&) { return hi; };
    return spec;
}

}  // namespace

TEST_CASE("shortlex basics") {
    POrder sl = shortlex_order();
    CHECK(sl.leq("1", "00"));  // shorter word precedes
    CHECK(sl.leq("", "0"));
    CHECK(sl.leq("01", "10"));
    CHECK_FALSE(sl.leq("10", "01"));
    CHECK(sl.precedes("1", "00"));
    CHECK_FALSE(sl.precedes("0", "00"));  // "1" lies between
    CHECK(sl.precedes("", "0"));
    CHECK(*sl.successor("11") == "000");
    CHECK(*sl.min_element == Word{});
}

TEST_CASE("verify_order_axioms on shortlex") {
    auto report = verify_order_axioms(shortlex_order(), words_upto(3));
    CHECK(report.ok());
    CHECK(report.universe_size == 15);
    CHECK(report.incomparable_pairs == 0);
}

TEST_CASE("verify_order_axioms flags constructed violations") {
    POrder bad;
    bad.is_total = false;
    bad.length_bound = Poly::identity();
    // symmetric "leq" on distinct words: antisymmetry violation
    bad.leq = [](const Word& a, const Word& b) { return a.size() == b.size() || a == b; };
    auto report = verify_order_axioms(bad, words_upto(2));
    CHECK_FALSE(report.ok());
    bool saw_antisymmetry = false;
    for (const auto& v : report.violations) saw_antisymmetry |= v.kind == "antisymmetry";
    CHECK(saw_antisymmetry);

    POrder gappy;
    gappy.is_total = true;
    gappy.length_bound = Poly::identity();
    gappy.leq = [](const Word& a, const Word& b) {  // not transitive across lengths
        return a == b || (a.size() + 1 == b.size() && a <= b.substr(0, a.size()));
    };
    auto r2 = verify_order_axioms(gappy, words_upto(2));
    CHECK_FALSE(r2.ok());
}

TEST_CASE("adjacency_from_leq agrees with shortlex structure") {
    POrder sl = shortlex_order();
    CHECK_FALSE(adjacency_from_leq(sl, "0", "0"));  // not strict
    CHECK(adjacency_from_leq(sl, "1", "00"));
    CHECK(adjacency_from_leq(sl, "0", "1"));
    CHECK_FALSE(adjacency_from_leq(sl, "0", "00"));
    // exhaustive agreement with the precedes capability
    for (const Word& a : words_upto(3))
        for (const Word& b : words_upto(3))
            CHECK(adjacency_from_leq(sl, a, b) == sl.precedes(a, b));
}

TEST_CASE("interval counters on shortlex") {
    CHECK(interval_size_bruteforce(shortlex_spec("0", "1"), "") == 0);  // adjacent words
    auto spec = shortlex_spec("", "10");
    CHECK(interval_size_bruteforce(spec, "") == 4);  // 0, 1, 00, 01
    CHECK(interval_size_by_walk(spec, "", 1 << 10) == 4);
    CHECK(interval_size_by_walk(shortlex_spec("01", "01"), "", 1 << 10) == 0);

    CHECK(interval_nonempty(spec, ""));
    CHECK_FALSE(interval_nonempty(shortlex_spec("0", "1"), ""));
    CHECK_FALSE(interval_singleton(spec, ""));
    CHECK(interval_singleton(shortlex_spec("0", "00"), ""));  // only "1" between
    CHECK_FALSE(interval_singleton(shortlex_spec("0", "1"), ""));

    // nonempty agrees with the bruteforce count on every small pair
    for (const Word& a : words_upto(2))
        for (const Word& b : words_upto(2)) {
            auto s = shortlex_spec(a, b);
            CHECK(interval_nonempty(s, "") == (interval_size_bruteforce(s, "") > 0));
        }
}

TEST_CASE("walk errors") {
    auto spec = shortlex_spec("", "10");
    CHECK_THROWS_AS(interval_size_by_walk(spec, "", 2), budget_error);
    POrder partial = shortlex_order();
    partial.is_total = false;
    IntervalSpec bad{partial, spec.b, spec.t};
    CHECK_THROWS_AS(interval_size_by_walk(bad, "", 1 << 10), capability_error);
}

TEST_CASE("reachable_leq equals leq on shortlex") {
    POrder sl = shortlex_order();
    CHECK(reachable_leq(sl, "01", "01"));
    CHECK(reachable_leq(sl, "0", "11"));  // chain 0 < 1 < 00 < 01 < 10 < 11
    CHECK_FALSE(reachable_leq(sl, "11", "0"));
    for (const Word& a : words_upto(2))
        for (const Word& b : words_upto(2)) CHECK(reachable_leq(sl, a, b) == sl.leq(a, b));
}
