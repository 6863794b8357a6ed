#ifndef PORDER_MONSAT_HPP
#define PORDER_MONSAT_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "porder/constructions.hpp"
#include "porder/order.hpp"

namespace porder {

// AST over variables x1..xn with binary AND/OR nodes; no negation, no
// constants. Grammar:
//   formula := var | "(" formula "&" formula ")" | "(" formula "|" formula ")"
//   var     := "x" nonzero-digit digit*
// Whitespace is insignificant.
struct MonotoneFormula {
    struct Node {
        enum class Kind { var, and_, or_ } kind = Kind::var;
        uint32_t var = 0;  // 1-based, when kind == var
        std::unique_ptr<Node> left, right;
    };
    std::unique_ptr<Node> root;
    uint32_t arity = 0;  // highest variable index

    std::string canonical_text() const;
};

struct ParseError : error {
    size_t position;
    ParseError(const std::string& what, size_t pos)
        : error(what + " at position " + std::to_string(pos)), position(pos) {}
};

MonotoneFormula parse_formula(const std::string& text);

// Assignments are n-bit words; bit i assigns x_{i+1}.
using Assignment = Word;

// Evaluates F under a; when a counter is supplied it is bumped once per
// call, which is the black-box query count.
int eval_formula(const MonotoneFormula& f, const Assignment& a, uint64_t* counter = nullptr);

// Black-box interface: any monotone n-ary boolean function.
using BoolFn = std::function<int(const Assignment&)>;

// Least b >= a in lexicographic order with F(b) = r, or nullopt. Climb to
// the first ancestor entered from the left whose right subtree can satisfy
// r, then descend by binary search. Behavior is unconstrained when the
// function is not monotone.
std::optional<Assignment> next_assignment(const BoolFn& f, uint32_t n, const Assignment& a, int r);

std::optional<Assignment> next_assignment(const MonotoneFormula& f, const Assignment& a, int r,
                                          uint64_t* query_counter = nullptr);

// Truth-table count of satisfying assignments.
uint64_t count_monsat_bruteforce(const MonotoneFormula& f);

// Text-level counter: anything that fails to parse as a monotone formula
// counts zero.
uint64_t count_monsat_text(const std::string& text);

// The satisfying-assignment order for one formula: inside the block keyed by
// the formula's bits, five tag groups place exactly the satisfying
// assignments strictly between b(F) and t(F); everything the five groups
// miss is appended after them. Adjacency steps inside the satisfying and
// unsatisfying groups are answered by next_assignment.
OrderTriple build_monsat_order(const MonotoneFormula& f);

// Interval route: successor walk over the formula's block.
uint64_t count_monsat_interval(const MonotoneFormula& f);

// Block key material, exposed for tests: the formula's canonical text as
// bits (8 bits per character, big-endian).
Word formula_bits(const MonotoneFormula& f);

}  // namespace porder

#endif
