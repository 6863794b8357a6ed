#ifndef PORDER_CLUSTER_HPP
#define PORDER_CLUSTER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "porder/constructions.hpp"
#include "porder/order.hpp"

namespace porder {

// A balanced nondeterministic machine as a guess-and-check record: every
// path on input x is a word of length path_len(|x|); accept decides path
// acceptance, and output (when present) gives the value a path emits.
struct BalancedNTM {
    std::function<uint64_t(size_t)> path_len;
    std::function<bool(const Word& x, const Word& path)> accept;
    std::function<std::optional<Word>(const Word& x, const Word& path)> output;  // may be null

    bool has_output() const { return static_cast<bool>(output); }
};

// Machine plus the order its accepting paths are expected to cluster under.
struct ClusterWitness {
    BalancedNTM machine;
    POrder order;  // total, length-respecting, precedes present
    std::string name;
};

// All accepting paths of m on x, sorted lexicographically.
std::vector<Word> acc_set(const BalancedNTM& m, const Word& x, size_t max_bits = 26);

struct ClusterRun {
    bool accepting = false;
    std::vector<Word> paths;  // contiguous in the sorted order
};

// Sorts the path universe by the order and groups maximal runs of equal
// accept status; each run is one adjacency-equivalence class.
std::vector<ClusterRun> cluster_partition(const BalancedNTM& m, const POrder& order, const Word& x,
                                          size_t max_bits = 26);

// True iff the accepting paths form at most one run (an empty accepting set
// counts as a vacuous cluster).
bool is_cluster(const BalancedNTM& m, const POrder& order, const Word& x, size_t max_bits = 26);

// ||acc_set||, defined only on cluster instances.
uint64_t cl_count(const ClusterWitness& w, const Word& x, size_t max_bits = 26);

// Interval-to-cluster transfer: paths are marker encodings 0^{P-|y|} 1 y 0
// of base-order elements; the machine accepts exactly the encodings of words
// strictly between b(x) and t(x), and the witness order sorts each length
// block with the marker encodings first, in base order, then the rest
// lexicographically. Requires a total base with leq, successor, and a
// minimum element.
ClusterWitness ift_to_cluster(const OrderTriple& base);

// Path-length polynomial of the derived machine, exposed for tests.
uint64_t ift_path_len(const OrderTriple& base, size_t n);

// Almost-unique transfer: the produced machine guesses the cluster's
// boundary pair (y, z) with outside neighbors (y', z'), plus a chain count r
// and the r interior paths; it has exactly one accepting path when the
// cluster is nonempty, which outputs the cluster size.
BalancedNTM cluster_to_almost_unique(const ClusterWitness& w, const Poly& value_bound);

// Guesses an accepting path whose order-successor rejects; at most one
// accepting path, accepting iff the machine accepts anything at all.
BalancedNTM nonemptiness_detector(const ClusterWitness& w);

// Guesses an accepting path with rejecting neighbors on both sides; at most
// one accepting path, accepting iff the accept count is exactly one.
BalancedNTM uniqueness_detector(const ClusterWitness& w);

struct AlmostUniqueViolation {
    Word x;
    std::string what;
};

// Checks, per input, that a value f(x) > 0 forces exactly one accepting
// path outputting f(x), and f(x) = 0 forces an empty output set.
std::vector<AlmostUniqueViolation> almost_unique_check(
    const BalancedNTM& m, const std::function<uint64_t(const Word&)>& f_oracle,
    const std::vector<Word>& inputs, size_t max_bits = 26);

}  // namespace porder

#endif
