#ifndef PORDER_TM_HPP
#define PORDER_TM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "porder/errors.hpp"
#include "porder/poly.hpp"
#include "porder/word.hpp"

namespace porder {

// Single-tape machine in the restricted normal form used by the traversal
// order: 2^m states and 2^m tape symbols, one final state with no outgoing
// moves, nothing moves into the start state, and a space bound p. On honest
// inputs it halts with the shortest binary form of its value on the leftmost
// cells and blanks elsewhere; that behavior is validated empirically by the
// tests, not by the loader.
struct RestrictedTM {
    struct Action {
        int state = 0;
        int symbol = 0;
        int move = +1;  // -1 or +1
    };

    int m = 0;
    std::vector<std::string> state_names;   // size 2^m
    std::vector<std::string> symbol_names;  // size 2^m; contains B, 0, 1
    int start = 0, final = 0;
    int sym_blank = 0, sym_zero = 0, sym_one = 0;
    std::vector<std::vector<std::optional<Action>>> delta;  // [state][symbol]
    Poly space;  // p; positive and nondecreasing, may be floor-clamped
};

// Derived encoding widths for inputs of length n:
//   r(n) = ceil(log2 p(n)),  t(n) = m * 2^{r(n)},  s(n) = m + r(n) + t(n).
struct EncodingParams {
    int m = 0;
    Poly space;
    uint64_t r(uint64_t n) const;
    uint64_t t(uint64_t n) const;
    uint64_t s(uint64_t n) const;
    uint64_t eid_len(uint64_t n) const { return n + 2 * s(n); }
    // Inverse of eid_len; nullopt when no input length matches.
    std::optional<uint64_t> n_from_eid_len(uint64_t len) const;
};

// State and symbol codecs. The start state maps to 0^m, the final state to
// 1^m; the blank to 0^m, '0' to 1^{m-1}0, '1' to 1^m. Remaining codes are
// assigned in declaration order.
struct TmCodec {
    int m = 0;
    std::vector<Word> state_code, symbol_code;       // index -> m-bit word
    std::vector<int> code_state, code_symbol;        // code value -> index
    Word phi(int state) const { return state_code[state]; }
    Word theta(int symbol) const { return symbol_code[symbol]; }
    int phi_inv(const Word& w) const { return code_state[bits_value(w)]; }
    int theta_inv(const Word& w) const { return code_symbol[bits_value(w)]; }
    // Blockwise symbol decoding of an encoded tape section.
    std::vector<int> theta_hat_inv(const Word& w) const;
    Word theta_hat(const std::vector<int>& symbols) const;
};

// Machine plus everything derived from it, built once and passed around.
struct TmContext {
    RestrictedTM tm;
    EncodingParams enc;
    TmCodec codec;
};

TmContext make_context(RestrictedTM tm);

// Binary value of a tape string in Sigma* B*, and 0 for anything else.
// Symbols are given as machine symbol indices.
uint64_t nu_symbols(const TmContext& ctx, const std::vector<int>& symbols);

// Same valuation over a plain character string where '0','1' are input
// symbols, 'B' is blank and anything else falls to the zero clause.
uint64_t nu(const std::string& z);

// Codec-wrapped next-move table; undefined exactly on the final-state code.
std::optional<std::tuple<Word, Word, int>> delta_prime(const TmContext& ctx, const Word& q,
                                                       const Word& r);

// x . 0^m . 0^{s} . 0^{r} . theta_hat(x) padded with encoded blanks.
Word initial_eid(const TmContext& ctx, const Word& x);

bool is_eid(const TmContext& ctx, const Word& v);

// Sections of an enhanced description, recovered from the length alone.
struct EidView {
    uint64_t n = 0;
    Word x, q, c, w;   // input, state code, clock, head position
    Word tape;         // t(n) bits, 2^{r(n)} blocks of m
};
std::optional<EidView> eid_view(const TmContext& ctx, const Word& v);

// One enhanced step. Undefined off the eID set and on final-state codes;
// otherwise either performs the encoded table move with clock+1 and head
// shift, or, when the move would leave the tape or the clock is exhausted,
// forces the state section to the final code and changes nothing else.
std::optional<Word> mu(const TmContext& ctx, const Word& v);

// Which branch a defined step took; diagnostic used by run_tm.
enum class MuCase { table_move, forced_final };
std::optional<std::pair<Word, MuCase>> mu_traced(const TmContext& ctx, const Word& v);

// Exact preimage set of mu, sorted lexicographically.
std::vector<Word> mu_preimages(const TmContext& ctx, const Word& z);

struct RunResult {
    uint64_t value = 0;
    uint64_t steps = 0;
};

// Iterates mu from the initial description until the state section is the
// final code, then reads the tape back through the codecs. A forced-final
// step means the machine broke its model contract; reported as an error.
RunResult run_tm(const TmContext& ctx, const Word& x);

// Line-oriented machine description: "key = value" lines with keys m,
// states, symbols, start, final, space_poly, optional space_floor, and
// repeated delta lines "delta = q,sym -> q',sym',L|R". '#' starts a comment.
// Every structural invariant is validated; violations name the offending
// field.
RestrictedTM load_tm(const std::string& text);
RestrictedTM load_tm_file(const std::string& path);

// Built-in machine: m = 2, space max(2, n); counts the ones of inputs of
// length at most two (its value on longer inputs is still total, just no
// longer a popcount).
RestrictedTM toy_ones_tm();

}  // namespace porder

#endif
