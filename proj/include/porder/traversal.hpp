#ifndef PORDER_TRAVERSAL_HPP
#define PORDER_TRAVERSAL_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "porder/order.hpp"
#include "porder/tm.hpp"

namespace porder {

// Phase vocabulary. A guessed description is an enhanced description with
// t(n) extra guess bits appended: x . w . y with |w| = 2s(n), |y| = t(n).
// A traversal token carries a further t(n)-bit spin counter and a direction
// bit: x . w . y . z . a.

struct GuessedView {
    uint64_t n = 0;
    Word x, w, y;  // eid-part suffix w (2s bits), guess y (t bits)
};

struct TokenView {
    uint64_t n = 0;
    Word x, w, y, z;  // as above plus spin counter z (t bits)
    char a = '0';
};

std::optional<GuessedView> guessed_view(const TmContext& ctx, const Word& g);
std::optional<TokenView> token_view(const TmContext& ctx, const Word& v);

uint64_t guessed_len(const TmContext& ctx, uint64_t n);
uint64_t token_len(const TmContext& ctx, uint64_t n);

// True iff the description part of g is a forest root, i.e. its state
// section is the final code.
bool rx_membership(const TmContext& ctx, const Word& g);

// Next root in the root ordering: roots whose guess equals their tape
// section first (in lex order), then all remaining roots (in lex order).
// Undefined at the last mismatched root x 1^{2s+t-1} 0.
std::optional<Word> rx_successor(const TmContext& ctx, const Word& g);

std::optional<Word> rx_predecessor(const TmContext& ctx, const Word& g);

// The chained step function: an ordinary mu step with the guess carried
// along, except that roots step to their successor root.
std::optional<Word> mu1(const TmContext& ctx, const Word& g);

// Exact inverse of mu1, sorted lexicographically.
std::vector<Word> mu1_preimages(const TmContext& ctx, const Word& g);

// Lexicographically maximal mu1-preimage (descend), and the next-smaller
// sibling under mu1 (move across); both undefined when no candidate exists.
std::optional<Word> dwn(const TmContext& ctx, const Word& g);
std::optional<Word> acr(const TmContext& ctx, const Word& g);

// One step of the depth-first tour over tokens. The six cases: descend,
// turn upward at an ordinary leaf, spin at the initial configuration while
// the counter is below the guessed value, finish spinning, move across to
// the next sibling, and climb to the parent.
std::optional<Word> d_step(const TmContext& ctx, const Word& tok);

// The three-clause domain formula of the tour, evaluated without running it.
bool d_step_defined_formula(const TmContext& ctx, const Word& tok);

// Smallest token of the same block strictly above tok on which the tour is
// undefined; nullopt when no such token remains. Constant case analysis,
// no scanning.
std::optional<Word> next_undefined(const TmContext& ctx, const Word& tok);

struct SpaceOrderBundle {
    std::shared_ptr<TmContext> ctx;
    POrder order;
    std::function<Word(const Word&)> b, t, b_prime;
    // Tour anchors for input x.
    Word tour_start(const Word& x) const;  // x 1^{2s+t-1} 0^{t+2}
    Word tour_end(const Word& x) const;    // x 1^{2s+t-1} 0^{t+1} 1
};

// The traversal order: inside the block of x the tour tokens come first, in
// tour order, then the tokens the tour never defines, lexicographically;
// outside blocks shortlex. The order's leq memoizes tour positions per x.
SpaceOrderBundle build_space_order(RestrictedTM tm);

// Tour walk from b(x) to t(x); the count equals 2^{2s(|x|)+1} + f(x) - 2.
uint64_t fpspace_interval_size(const SpaceOrderBundle& bundle, const Word& x);

// Tour walk from b'(x); a nonempty (b'(x), t(x)) interval detects f(x) = 1.
bool singleton_flag(const SpaceOrderBundle& bundle, const Word& x);

}  // namespace porder

#endif
