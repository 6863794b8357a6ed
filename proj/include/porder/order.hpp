#ifndef PORDER_ORDER_HPP
#define PORDER_ORDER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "porder/errors.hpp"
#include "porder/poly.hpp"
#include "porder/word.hpp"

namespace porder {

// A p-order given as a capability record. leq and precedes are optional
// predicates; successor is an optional constructive step function used by
// walking counters. Comparability is length-bounded: x <= y implies
// |x| <= length_bound(|y|).
struct POrder {
    std::function<bool(const Word&, const Word&)> leq;       // may be null
    std::function<bool(const Word&, const Word&)> precedes;  // may be null
    std::function<std::optional<Word>(const Word&)> successor;  // may be null
    Poly length_bound = Poly::identity();
    bool is_total = false;
    std::optional<Word> min_element;

    bool has_leq() const { return static_cast<bool>(leq); }
    bool has_precedes() const { return static_cast<bool>(precedes); }
    bool has_successor() const { return static_cast<bool>(successor); }
};

// An order together with boundary functions; the interval counted for x is
// the set of words strictly between b(x) and t(x).
struct IntervalSpec {
    POrder order;
    std::function<Word(const Word&)> b;
    std::function<Word(const Word&)> t;
};

// Shortlex: shorter words first, same-length words lexicographically.
POrder shortlex_order();

struct AxiomViolation {
    std::string kind;  // "reflexivity", "antisymmetry", "transitivity", "length-bound", "totality"
    std::string detail;
};

struct AxiomReport {
    std::vector<AxiomViolation> violations;
    size_t universe_size = 0;
    size_t incomparable_pairs = 0;  // informational; nonzero only for partial orders
    bool ok() const { return violations.empty(); }
};

// Exhaustively checks reflexivity, antisymmetry, transitivity, the length
// bound, and (when the order claims totality) comparability over the given
// universe. Violations are collected, never thrown.
AxiomReport verify_order_axioms(const POrder& order, std::vector<Word> universe,
                                size_t max_violations = 20);

// Adjacency decided from leq alone by scanning every word of length
// <= length_bound(|y|) for something strictly between. Exponential; oracle
// use only.
bool adjacency_from_leq(const POrder& order, const Word& x, const Word& y);

// Same check but with the candidate z's restricted to a caller-supplied
// universe. Sound whenever the universe provably contains every word that
// can lie strictly between members of the universe.
bool adjacency_from_leq_over(const POrder& order, const Word& x, const Word& y,
                             const std::vector<Word>& universe);

// ||{ z : |z| <= length_bound(|t(x)|), b(x) < z < t(x) }|| by enumeration.
// The universal oracle for every construction in this repository.
uint64_t interval_size_bruteforce(const IntervalSpec& spec, const Word& x);

// Interval size with the enumeration replaced by an explicit universe.
uint64_t interval_size_over(const IntervalSpec& spec, const Word& x,
                            const std::vector<Word>& universe);

// Successor-by-successor count of the words strictly between b(x) and t(x).
// Requires a total order and a step function (explicit, or the order's own).
uint64_t interval_size_by_walk(const IntervalSpec& spec, const Word& x,
                               const std::function<std::optional<Word>(const Word&)>& successor,
                               uint64_t step_budget);

inline uint64_t interval_size_by_walk(const IntervalSpec& spec, const Word& x,
                                      uint64_t step_budget) {
    return interval_size_by_walk(spec, x, nullptr, step_budget);
}

// True iff the interval of x is nonempty, decided by two adjacency-flavored
// queries: b strictly below t and b not adjacent to t.
bool interval_nonempty(const IntervalSpec& spec, const Word& x);

// True iff the interval of x holds exactly one word: some z of bounded
// length with precedes(b,z) and precedes(z,t).
bool interval_singleton(const IntervalSpec& spec, const Word& x);

// Deterministic replacement for the chain-guessing reachability argument:
// true iff x == y or some chain x < z1 < ... < zk < y of adjacency steps
// exists with every |zi| <= length_bound(|y|).
bool reachable_leq(const POrder& order, const Word& x, const Word& y);

}  // namespace porder

#endif
