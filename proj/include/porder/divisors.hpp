#ifndef PORDER_DIVISORS_HPP
#define PORDER_DIVISORS_HPP

#include <cstdint>

#include "porder/constructions.hpp"
#include "porder/order.hpp"

namespace porder {

// Number of nontrivial divisors: ||{ n : n != 1, n != m, n | m }|| for
// m >= 1, and 0 for m = 0.
uint64_t count_divisors(uint64_t m);

// Trial division; desk-scale stand-in for a polynomial-time test.
bool is_prime(uint64_t m);

// Canonical binary encoding of a natural number (no leading zeros; "0" for 0).
Word encode_natural(uint64_t n);
std::optional<uint64_t> decode_natural(const Word& w);

// Divisibility over positive naturals in canonical encoding: n <= m iff
// n divides m; adjacency holds exactly when the quotient is prime.
POrder divisibility_order();

// Interval route: the number of canonical encodings strictly between 1 and m
// in the divisibility order, scanned over 2..m-1.
uint64_t divcount_via_divisibility_interval(uint64_t m);

// The witness predicate behind the support route: z fixed-width-encodes a
// candidate divisor d with 1 < d < m and d | m; width |m| before
// normalization. in_support holds exactly on composites.
WitnessPredicate divisor_witness();
SupportDecider composite_support();

// Builds the support-aware order for the divisor witness and counts the
// block interval of enc(m); equals count_divisors(m).
uint64_t divcount_via_support_order(uint64_t m);

}  // namespace porder

#endif
