#include <map>

#include "doctest.h"
#include "porder/tm.hpp"

using namespace porder;

namespace {

// Plain single-tape simulator, independent of the encoded machinery.
uint64_t simulate_plain(const RestrictedTM& tm, const Word& x, uint64_t max_steps = 1 << 20) {
    std::vector<int> tape(tm.space.eval(x.size()) + 2, tm.sym_blank);
    for (size_t i = 0; i < x.size(); ++i) tape[i] = x[i] == '1' ? tm.sym_one : tm.sym_zero;
    int state = tm.start;
    int64_t head = 0;
    for (uint64_t step = 0; step < max_steps; ++step) {
        if (state == tm.final) {
            std::string chars;
            for (int s : tape) {
                if (s == tm.sym_zero) chars += '0';
                else if (s == tm.sym_one) chars += '1';
                else if (s == tm.sym_blank) chars += 'B';
                else chars += '?';
            }
            return nu(chars);
        }
        REQUIRE(head >= 0);
        REQUIRE(head < (int64_t)tape.size());
        auto act = tm.delta[state][tape[head]];
        REQUIRE(act.has_value());
        tape[head] = act->symbol;
        state = act->state;
        head += act->move;
    }
    FAIL("plain simulator ran out of steps");
    return 0;
}

}  // namespace

TEST_CASE("nu valuation") {
    CHECK(nu("") == 0);
    CHECK(nu("101") == 5);
    CHECK(nu("1B1") == 0);  // not of the form Sigma* B*
    CHECK(nu("1B") == 1);
    CHECK(nu("1BB") == 1);
    CHECK(nu("B1") == 0);
    CHECK(nu("1?0") == 0);
    CHECK(nu("0") == 0);
}

TEST_CASE("codec fixes the mandated images") {
    auto ctx = make_context(toy_ones_tm());
    CHECK(ctx.codec.phi(ctx.tm.start) == "00");
    CHECK(ctx.codec.phi(ctx.tm.final) == "11");
    CHECK(ctx.codec.theta(ctx.tm.sym_blank) == "00");
    CHECK(ctx.codec.theta(ctx.tm.sym_zero) == "10");
    CHECK(ctx.codec.theta(ctx.tm.sym_one) == "11");
    for (int q = 0; q < 4; ++q) CHECK(ctx.codec.phi_inv(ctx.codec.phi(q)) == q);
    for (int s = 0; s < 4; ++s) CHECK(ctx.codec.theta_inv(ctx.codec.theta(s)) == s);
}

TEST_CASE("delta_prime wraps the table") {
    auto ctx = make_context(toy_ones_tm());
    CHECK_FALSE(delta_prime(ctx, "11", "00").has_value());  // final state
    // exhaustive roundtrip over all code pairs
    for (int q = 0; q < 4; ++q) {
        for (int r = 0; r < 4; ++r) {
            auto enc = delta_prime(ctx, ctx.codec.phi(q), ctx.codec.theta(r));
            auto raw = ctx.tm.delta[q][r];
            CHECK(enc.has_value() == raw.has_value());
            if (enc) {
                CHECK(ctx.codec.phi_inv(std::get<0>(*enc)) == raw->state);
                CHECK(ctx.codec.theta_inv(std::get<1>(*enc)) == raw->symbol);
                CHECK(std::get<2>(*enc) == raw->move);
            }
        }
    }
}

TEST_CASE("initial_eid sections") {
    auto ctx = make_context(toy_ones_tm());
    // |x| = 1: m=2, r=1, t=4, s=7; total 1 + 2*7 = 15
    Word i1 = initial_eid(ctx, "1");
    CHECK(i1.size() == 15);
    auto view = eid_view(ctx, i1);
    REQUIRE(view.has_value());
    CHECK(view->x == "1");
    CHECK(view->q == "00");
    CHECK(view->c == Word(7, '0'));
    CHECK(view->w == "0");
    CHECK(view->tape.substr(0, 2) == "11");  // encoded '1'
    CHECK(view->tape.substr(2) == "00");     // encoded blank

    Word i0 = initial_eid(ctx, "");
    CHECK(i0.size() == 2 * ctx.enc.s(0));
    CHECK(i0 == Word(14, '0'));

    for (const Word& x : words_upto(2))
        CHECK(initial_eid(ctx, x).size() == x.size() + 2 * ctx.enc.s(x.size()));
}

TEST_CASE("mu follows the table and the guards") {
    auto ctx = make_context(toy_ones_tm());
    // a final-state description has no step
    Word halted = initial_eid(ctx, "1");
    halted[1] = '1';
    halted[2] = '1';  // state section := 11
    CHECK_FALSE(mu(ctx, halted).has_value());
    CHECK_FALSE(mu(ctx, Word{"0101"}).has_value());  // not an eID

    // one true step of the toy machine on "1": q0 reads '1', moves right
    Word start = initial_eid(ctx, "1");
    auto stepped = mu_traced(ctx, start);
    REQUIRE(stepped.has_value());
    CHECK(stepped->second == MuCase::table_move);
    auto view = eid_view(ctx, stepped->first);
    CHECK(bits_value(view->c) == 1);  // clock advanced
    CHECK(bits_value(view->w) == 1);  // head moved right
    CHECK(view->q == ctx.codec.phi(1));

    // exhausted clock forces the final state and changes nothing else
    Word stuck = initial_eid(ctx, "1");
    for (size_t i = 3; i <= 9; ++i) stuck[i] = '1';  // clock := 1^7
    auto forced = mu_traced(ctx, stuck);
    REQUIRE(forced.has_value());
    CHECK(forced->second == MuCase::forced_final);
    auto fview = eid_view(ctx, forced->first);
    CHECK(fview->q == "11");
    CHECK(fview->c == Word(7, '1'));
    CHECK(fview->tape == eid_view(ctx, stuck)->tape);
}

TEST_CASE("mu_preimages inverts mu exhaustively") {
    auto ctx = make_context(toy_ones_tm());
    const Word x{};  // 2^{14} descriptions
    CHECK(mu_preimages(ctx, Word{"10"}).empty());
    CHECK(mu_preimages(ctx, initial_eid(ctx, "1")).empty());  // nothing enters the start state

    std::map<Word, std::vector<Word>> forward;
    size_t suffix = 2 * ctx.enc.s(0);
    for_each_word_of_length(suffix, [&](const Word& w) {
        Word v = x + w;
        if (auto img = mu(ctx, v)) forward[*img].push_back(v);
    });
    for_each_word_of_length(suffix, [&](const Word& w) {
        Word z = x + w;
        auto pre = mu_preimages(ctx, z);
        auto it = forward.find(z);
        const std::vector<Word> want = it == forward.end() ? std::vector<Word>{} : it->second;
        CHECK(pre == want);
    });
}

TEST_CASE("mu structural properties on the small universe") {
    auto ctx = make_context(toy_ones_tm());
    const Word final_code(2, '1');
    size_t suffix = 2 * ctx.enc.s(0);
    size_t defined = 0;
    for_each_word_of_length(suffix, [&](const Word& w) {
        Word v = w;  // x = eps
        auto img = mu(ctx, v);
        auto view = eid_view(ctx, v);
        CHECK(img.has_value() == (view->q != final_code));
        if (img) {
            ++defined;
            CHECK(img->size() == v.size());  // length preserved
            CHECK(*img != v);                // no fixed point
        }
    });
    CHECK(defined == (size_t{1} << suffix) - (size_t{1} << (suffix - 2)));
}

TEST_CASE("mu iteration always terminates within the clock bound") {
    auto ctx = make_context(toy_ones_tm());
    uint64_t bound = (uint64_t{1} << ctx.enc.s(0)) + 2;
    for_each_word_of_length(2 * ctx.enc.s(0), [&](const Word& w) {
        Word cur = w;
        uint64_t steps = 0;
        while (auto nx = mu(ctx, cur)) {
            cur = std::move(*nx);
            ++steps;
            REQUIRE(steps <= bound);
        }
    });
}

TEST_CASE("run_tm matches the plain simulator and counts ones") {
    auto ctx = make_context(toy_ones_tm());
    for (const Word& x : words_upto(2)) {
        auto run = run_tm(ctx, x);
        CHECK(run.value == popcount_word(x));
        CHECK(run.value == simulate_plain(ctx.tm, x));
        CHECK(run.steps < (uint64_t{1} << ctx.enc.s(x.size())));
    }
}

TEST_CASE("tm loader validates the structure") {
    CHECK_THROWS_WITH_AS(load_tm("m = 2\n"), doctest::Contains("missing key"), validation_error);
    std::string base = R"(
m = 2
states = q0,q1,q2,qf
symbols = B,0,1,E
start = q0
final = qf
space_poly = 0,1
space_floor = 2
)";
    // delta must be total off the final state
    CHECK_THROWS_WITH_AS(load_tm(base), doctest::Contains("delta undefined"), validation_error);
    std::string full = base;
    for (const char* q : {"q0", "q1", "q2"})
        for (const char* s : {"B", "0", "1", "E"})
            full += std::string("delta = ") + q + "," + s + " -> q1," + s + ",R\n";
    CHECK_NOTHROW(load_tm(full));
    CHECK_THROWS_WITH_AS(load_tm(full + "delta = qf,B -> q1,B,R\n"),
                         doctest::Contains("final state"), validation_error);
    CHECK_THROWS_WITH_AS(load_tm(full + "delta = q1,B -> q2,B,R\n"),
                         doctest::Contains("duplicate"), validation_error);

    std::string into_start = base;
    for (const char* q : {"q0", "q1", "q2"})
        for (const char* s : {"B", "0", "1", "E"})
            into_start += std::string("delta = ") + q + "," + s + " -> q0," + s + ",R\n";
    CHECK_THROWS_WITH_AS(load_tm(into_start), doctest::Contains("start state"), validation_error);

    std::string three_states = R"(
m = 2
states = q0,q1,qf
symbols = B,0,1,E
start = q0
final = qf
space_poly = 0,1
)";
    CHECK_THROWS_WITH_AS(load_tm(three_states), doctest::Contains("2^m"), validation_error);
}

TEST_CASE("run_tm reports model violations") {
    // A machine that runs right forever: the head bound fires, the clock
    // forces the final state, and run_tm flags it.
    std::string text = R"(
m = 2
states = q0,q1,q2,qf
symbols = B,0,1,E
start = q0
final = qf
space_poly = 0,1
space_floor = 2
)";
    for (const char* q : {"q0", "q1", "q2"})
        for (const char* s : {"B", "0", "1", "E"})
            text += std::string("delta = ") + q + "," + s + " -> q1," + s + ",R\n";
    auto ctx = make_context(load_tm(text));
    CHECK_THROWS_WITH_AS(run_tm(ctx, "1"), doctest::Contains("model violation"), error);
}
