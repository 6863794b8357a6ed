#ifndef PORDER_CONSTRUCTIONS_HPP
#define PORDER_CONSTRUCTIONS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "porder/order.hpp"
#include "porder/poly.hpp"

namespace porder {

// A counting function presented as a witness count:
//   f(x) = ||{ z : |z| = p(|x|), decider(x, z) }||.
// Normalized witnesses additionally reject the all-zero and all-one z.
struct WitnessPredicate {
    std::function<bool(const Word&, const Word&)> decider;
    Poly p;
    bool normalized = false;
};

// A directly evaluable function with a width polynomial; every construction
// using it requires eval(x) < 2^p(|x|) - 1.
struct FPFunction {
    std::function<uint64_t(const Word&)> eval;
    Poly p;
};

// Polynomial-time membership test for { x : f(x) > 0 }.
struct SupportDecider {
    std::function<bool(const Word&)> in_support;
};

// A machine with exactly one value-producing path per input. path_output is
// defined on exactly one z of length p(|x|); accepting_path names that z so
// that successor walks can stitch into the value-dependent groups.
struct UPSVMachine {
    Poly p;
    std::function<std::optional<uint64_t>(const Word&, const Word&)> path_output;
    std::function<Word(const Word&)> accepting_path;
};

// An order plus boundary functions realizing some target function as an
// interval size. t_len_bound bounds |t(x)| in terms of |x|; block_universe
// enumerates the reordered block of x for exhaustive testing.
struct OrderTriple {
    IntervalSpec spec;
    std::string target;
    Poly t_len_bound;
    std::function<std::vector<Word>(const Word&)> block_universe;
};

// Shifts a witness to width p+2 by accepting exactly the old witnesses with
// "01" appended. The represented function is unchanged, and the all-zero and
// all-one strings are rejected by construction.
WitnessPredicate normalize_witness(const WitnessPredicate& w);

// Fixed-width big-endian encoding of i on exactly p(|x|) bits.
Word bin(const Word& x, uint64_t i, const Poly& p);

// Total order whose block for x lists x1^p first, then the accepted xz
// lexicographically, then the rejected ones; interval (x1^p, x0^p) counts the
// witnesses of x. Decidable, no adjacency capability.
OrderTriple build_sharp_p_order(const WitnessPredicate& w);

// Total order realizing a directly evaluable f as an interval of |f(x)|
// strictly-between words, with constant-work adjacency: the block of x holds
// the p-bit encodings of 0..f(x), then x1^p, then the rest.
OrderTriple build_fp_order(const FPFunction& f);

// Partial order with two incomparable buckets per block and a three-element
// chain; adjacency between the chain's middle pair is answered by the support
// decider. Interval (x0^p01, x0^p11) counts the witnesses of x.
OrderTriple build_support_aware_order(const WitnessPredicate& w, const SupportDecider& s);

// Total order whose block splits suffix tags into three lexicographic groups
// so that the interval (x1^p00, x0^p10) has size f(x) + 2^p(|x|); adjacency
// needs at most two decider queries.
OrderTriple build_offset_order(const WitnessPredicate& w);

// Total order for a single-valued machine: witnesses are xz·bin(i) with i
// below the output on path z; five tag groups place exactly those strictly
// between x1^{2p}00 and x0^{2p}01. Inputs with output 0 are rejected.
OrderTriple build_upsv_order(const UPSVMachine& m);

// Total order realizing base_size + 1: the block of x holds a sentinel, then
// marker encodings of the base-order interval [b(x), t(x)] in base order,
// then everything else lexicographically.
OrderTriple increment_order(const OrderTriple& base);

enum class EvalMode { walk, bruteforce };

// Dispatches to the library counters; walk mode needs a total order with a
// successor.
uint64_t eval_triple(const OrderTriple& triple, const Word& x, EvalMode mode,
                     uint64_t step_budget = uint64_t{1} << 22);

// Exact witness count by enumerating Sigma^{p(|x|)}; the independent oracle
// for every witness-based construction.
uint64_t witness_count(const WitnessPredicate& w, const Word& x);

}  // namespace porder

#endif
