#include "doctest.h"
#include "porder/catalog.hpp"
#include "porder/constructions.hpp"
#include "porder/divisors.hpp"

using namespace porder;

namespace {

// Hand witness of width n+1 accepting the weight-one strings; satisfies the
// normalization contract by inspection.
WitnessPredicate weight_one_witness() {
    WitnessPredicate w;
    w.p = Poly{1, 1};
    w.decider = [](const Word&, const Word& z) { return popcount_word(z) == 1; };
    w.normalized = true;
    return w;
}

Word shortlex_predecessor(const Word& w) {
    if (w.find('1') == Word::npos) return Word(w.size() - 1, '1');
    Word out = w;
    for (size_t i = out.size(); i-- > 0;) {
        if (out[i] == '1') {
            out[i] = '0';
            break;
        }
        out[i] = '1';
    }
    return out;
}

std::vector<Word> universe_with_margin(const OrderTriple& triple, const Word& x) {
    auto u = triple.block_universe(x);
    // shortlex neighbors on both sides of the block exercise the stitching
    u.push_back(shortlex_predecessor(u.front()));
    u.push_back(shortlex_successor(u.back()));
    return u;
}

// Every block of the same input length plus the outer shortlex neighbors;
// same-length words can only have same-length words strictly between them,
// so adjacency restricted to this universe equals true adjacency.
std::vector<Word> length_banded_universe(const OrderTriple& triple, const Word& x) {
    std::vector<Word> u;
    for_each_word_of_length(x.size(), [&](const Word& sibling) {
        auto blk = triple.block_universe(sibling);
        u.insert(u.end(), blk.begin(), blk.end());
    });
    std::sort(u.begin(), u.end());
    Word lo = u.front(), hi = u.back();
    u.push_back(shortlex_predecessor(lo));
    u.push_back(shortlex_successor(hi));
    return u;
}

}  // namespace

TEST_CASE("normalize_witness preserves the count and rejects the borders") {
    WitnessPredicate base;
    base.p = Poly{1, 1};
    base.decider = [](const Word&, const Word& z) { return popcount_word(z) % 2 == 0; };
    WitnessPredicate norm = normalize_witness(base);
    for (const Word& x : words_upto(2)) {
        CHECK(witness_count(norm, x) == witness_count(base, x));
        size_t width = norm.p.eval(x.size());
        CHECK_FALSE(norm.decider(x, Word(width, '0')));
        CHECK_FALSE(norm.decider(x, Word(width, '1')));
    }
    WitnessPredicate empty;
    empty.p = Poly{1, 1};
    empty.decider = [](const Word&, const Word&) { return false; };
    CHECK(witness_count(normalize_witness(empty), "01") == 0);
}

TEST_CASE("bin encodes fixed width") {
    Poly p{2, 1};
    CHECK(bin("0", 0, p) == "000");
    CHECK(bin("0", 5, p) == "101");
    CHECK_THROWS_AS(bin("0", 8, p), width_error);
    for (uint64_t i = 0; i < 8; ++i) CHECK(bits_value(bin("0", i, p)) == i);
}

TEST_CASE("sharp-p order realizes the witness count") {
    OrderTriple triple = build_sharp_p_order(weight_one_witness());
    // at x = "1" the block runs from 111 to 100; 101 and 110 sit between
    CHECK(triple.spec.b("1") == "111");
    CHECK(triple.spec.t("1") == "100");
    CHECK(interval_size_bruteforce(triple.spec, "1") == 2);
    CHECK_FALSE(triple.spec.order.has_successor());
    CHECK_THROWS_AS(eval_triple(triple, "1", EvalMode::walk), capability_error);

    for (const std::string name : {"parity", "constant-k", "divisor-witness"}) {
        WitnessPredicate w = witness_by_name(name);
        OrderTriple t = build_sharp_p_order(w);
        for (const Word& x : words_upto(2))
            CHECK(interval_size_bruteforce(t.spec, x) == witness_count(w, x));
    }

    WitnessPredicate raw;
    raw.p = Poly{1, 1};
    raw.decider = [](const Word&, const Word&) { return true; };
    CHECK_THROWS_AS(build_sharp_p_order(raw), validation_error);  // not normalized
}

TEST_CASE("sharp-p block universe passes the axioms") {
    OrderTriple triple = build_sharp_p_order(weight_one_witness());
    for (const Word& x : {Word{"1"}, Word{"01"}}) {
        auto report = verify_order_axioms(triple.spec.order, universe_with_margin(triple, x));
        CHECK(report.ok());
        CHECK(report.incomparable_pairs == 0);
    }
}

TEST_CASE("fp order: interval, walk, and adjacency") {
    FPFunction three{[](const Word&) { return uint64_t{3}; }, Poly{2, 1}};
    OrderTriple triple = build_fp_order(three);
    // x = "0": block width 3, interval holds 001, 010, 011
    CHECK(interval_size_bruteforce(triple.spec, "0") == 3);
    CHECK(eval_triple(triple, "0", EvalMode::walk) == 3);
    for (const Word& z : {Word{"0001"}, Word{"0010"}, Word{"0011"}}) {
        CHECK(triple.spec.order.leq(triple.spec.b("0"), z));
        CHECK(triple.spec.order.leq(z, triple.spec.t("0")));
    }

    FPFunction zero{[](const Word&) { return uint64_t{0}; }, Poly{2, 1}};
    OrderTriple tz = build_fp_order(zero);
    CHECK(interval_size_bruteforce(tz.spec, "0") == 0);
    CHECK(tz.spec.order.precedes(tz.spec.b("0"), tz.spec.t("0")));

    FPFunction too_big{[](const Word&) { return uint64_t{7}; }, Poly{2, 1}};
    CHECK_THROWS_AS(interval_size_bruteforce(build_fp_order(too_big).spec, "0"),
                    validation_error);

    OrderTriple len = build_fp_order(fp_by_name("len"));
    for (const Word& x : words_upto(2)) {
        CHECK(interval_size_bruteforce(len.spec, x) == x.size());
        CHECK(eval_triple(len, x, EvalMode::walk) == x.size());
    }
}

TEST_CASE("fp order adjacency equals the oracle adjacency") {
    OrderTriple len = build_fp_order(fp_by_name("len"));
    for (const Word& x : {Word{"1"}, Word{"10"}}) {
        auto universe = length_banded_universe(len, x);
        size_t mismatches = 0;
        for (const Word& a : universe)
            for (const Word& b : universe)
                mismatches += len.spec.order.precedes(a, b) !=
                              adjacency_from_leq_over(len.spec.order, a, b, universe);
        CHECK(mismatches == 0);
    }
    // spot checks against the full scanning oracle
    CHECK(adjacency_from_leq(len.spec.order, len.spec.b("1"), "1001"));
    CHECK_FALSE(adjacency_from_leq(len.spec.order, len.spec.b("1"), len.spec.t("1")));
}

TEST_CASE("support-aware order ties the interval to the support decider") {
    OrderTriple triple = build_support_aware_order(divisor_witness(), composite_support());
    auto spec = triple.spec;
    Word prime = encode_natural(5), composite = encode_natural(6), one = encode_natural(1);
    CHECK(interval_size_over(spec, prime, triple.block_universe(prime)) == 0);
    CHECK(spec.order.precedes(spec.b(prime), spec.t(prime)));
    CHECK(interval_size_over(spec, composite, triple.block_universe(composite)) == 2);
    CHECK_FALSE(spec.order.precedes(spec.b(composite), spec.t(composite)));
    CHECK(interval_size_over(spec, one, triple.block_universe(one)) == 0);
    CHECK(interval_size_bruteforce(spec, one) == 0);  // the full scanning oracle, small m

    // walking a partial order is refused
    CHECK_THROWS_AS(eval_triple(triple, composite, EvalMode::walk), capability_error);
}

TEST_CASE("support-aware order axioms and adjacency") {
    OrderTriple triple = build_support_aware_order(divisor_witness(), composite_support());
    for (uint64_t m : {4, 5}) {
        Word x = encode_natural(m);
        auto report = verify_order_axioms(triple.spec.order, universe_with_margin(triple, x));
        CHECK(report.ok());
        CHECK(report.incomparable_pairs > 0);  // partial by design
    }
    // complete adjacency agreement over the two-bit length band
    for (uint64_t m : {2, 3}) {
        Word x = encode_natural(m);
        auto universe = length_banded_universe(triple, x);
        size_t mismatches = 0;
        for (const Word& a : universe)
            for (const Word& b : universe)
                mismatches += triple.spec.order.precedes(a, b) !=
                              adjacency_from_leq_over(triple.spec.order, a, b, universe);
        CHECK(mismatches == 0);
    }
    // spot checks at a composite and a prime through the full scanning oracle
    for (uint64_t m : {4, 5, 6}) {
        Word x = encode_natural(m);
        CHECK(adjacency_from_leq(triple.spec.order, triple.spec.b(x), triple.spec.t(x)) ==
              triple.spec.order.precedes(triple.spec.b(x), triple.spec.t(x)));
    }
}

TEST_CASE("offset order realizes f + 2^p") {
    WitnessPredicate none;
    none.p = Poly::constant(2);
    none.decider = [](const Word&, const Word&) { return false; };
    none.normalized = true;
    OrderTriple empty = build_offset_order(none);
    CHECK(interval_size_bruteforce(empty.spec, "1") == 4);

    WitnessPredicate one;
    one.p = Poly::constant(2);
    one.decider = [](const Word&, const Word& z) { return z == "01"; };
    one.normalized = true;
    OrderTriple single = build_offset_order(one);
    CHECK(interval_size_bruteforce(single.spec, "1") == 5);
    CHECK(eval_triple(single, "1", EvalMode::walk) == 5);

    for (const std::string name : {"parity", "constant-k"}) {
        WitnessPredicate w = witness_by_name(name);
        OrderTriple t = build_offset_order(w);
        for (const Word& x : words_upto(2)) {
            uint64_t want =
                witness_count(w, x) + (uint64_t{1} << w.p.eval(x.size()));
            CHECK(interval_size_over(t.spec, x, t.block_universe(x)) == want);
            CHECK(eval_triple(t, x, EvalMode::walk) == want);
        }
    }
}

TEST_CASE("upsv order realizes the machine output") {
    UPSVMachine m = upsv_by_name("const1");
    OrderTriple triple = build_upsv_order(m);
    CHECK(interval_size_bruteforce(triple.spec, "") == 1);
    CHECK(eval_triple(triple, "1", EvalMode::walk) == 1);

    UPSVMachine three;
    three.p = Poly{1, 1};
    three.accepting_path = [](const Word& x) { return Word(x.size() + 1, '1'); };
    three.path_output = [](const Word& x, const Word& z) -> std::optional<uint64_t> {
        if (z != Word(x.size() + 1, '1')) return std::nullopt;
        return 3;
    };
    OrderTriple t3 = build_upsv_order(three);
    CHECK(interval_size_bruteforce(t3.spec, "1") == 3);
    CHECK(eval_triple(t3, "1", EvalMode::walk) == 3);

    for (const std::string& name : upsv_names()) {
        UPSVMachine mm = upsv_by_name(name);
        OrderTriple tt = build_upsv_order(mm);
        for (const Word& x : words_upto(2)) {
            uint64_t want = *mm.path_output(x, mm.accepting_path(x));
            CHECK(interval_size_over(tt.spec, x, tt.block_universe(x)) == want);
            CHECK(eval_triple(tt, x, EvalMode::walk) == want);
        }
    }

    UPSVMachine zero;
    zero.p = Poly{1, 1};
    zero.accepting_path = [](const Word& x) { return Word(x.size() + 1, '0'); };
    zero.path_output = [](const Word& x, const Word& z) -> std::optional<uint64_t> {
        if (z != Word(x.size() + 1, '0')) return std::nullopt;
        return 0;
    };
    CHECK_THROWS_AS(interval_size_bruteforce(build_upsv_order(zero).spec, "1"),
                    validation_error);
}

TEST_CASE("upsv machines have exactly one output path") {
    for (const std::string& name : upsv_names()) {
        UPSVMachine m = upsv_by_name(name);
        for (const Word& x : words_upto(2)) {
            size_t width = m.p.eval(x.size());
            size_t output_paths = 0;
            for_each_word_of_length(width, [&](const Word& z) {
                if (m.path_output(x, z)) ++output_paths;
            });
            CHECK(output_paths == 1);
            CHECK(m.path_output(x, m.accepting_path(x)).has_value());
        }
    }
}

TEST_CASE("increment order adds one") {
    OrderTriple base = shortlex_prefix_triple();
    OrderTriple inc = increment_order(base);
    // x = eps has an empty base interval with b = t; the degenerate branch
    CHECK(interval_size_bruteforce(base.spec, "") == 0);
    CHECK(interval_size_bruteforce(inc.spec, "") == 1);
    CHECK(eval_triple(inc, "", EvalMode::walk) == 1);
    for (const Word& x : words_upto(2)) {
        uint64_t want = interval_size_bruteforce(base.spec, x) + 1;
        CHECK(interval_size_over(inc.spec, x, inc.block_universe(x)) == want);
        CHECK(eval_triple(inc, x, EvalMode::walk) == want);
    }

    OrderTriple fp3 = build_fp_order(fp_by_name("const3"));
    OrderTriple inc3 = increment_order(fp3);
    CHECK(interval_size_over(inc3.spec, "1", inc3.block_universe("1")) == 4);
    CHECK(eval_triple(inc3, "1", EvalMode::walk) == 4);
}

TEST_CASE("increment order axioms on the new block") {
    OrderTriple inc = increment_order(shortlex_prefix_triple());
    for (const Word& x : {Word{""}, Word{"1"}}) {
        auto report = verify_order_axioms(inc.spec.order, universe_with_margin(inc, x));
        CHECK(report.ok());
        CHECK(report.incomparable_pairs == 0);
    }
}

TEST_CASE("increment order rejects oversized boundary encodings") {
    OrderTriple lying = shortlex_prefix_triple();
    lying.spec.b = [](const Word& x) { return x + x; };
    lying.spec.t = [](const Word& x) { return x + x; };
    lying.t_len_bound = Poly::constant(0);  // wildly understates |t(x)|
    OrderTriple inc = increment_order(lying);
    CHECK_THROWS_AS(eval_triple(inc, "111", EvalMode::walk), width_error);
}
