#include "porder/divisors.hpp"

namespace porder {

uint64_t count_divisors(uint64_t m) {
    if (m < 2) return 0;
    uint64_t count = 0;
    for (uint64_t d = 2; d * d <= m; ++d) {
        if (m % d) continue;
        count += (d * d == m) ? 1 : 2;
    }
    return count;
}

bool is_prime(uint64_t m) {
    if (m < 2) return false;
    for (uint64_t d = 2; d * d <= m; ++d)
        if (m % d == 0) return false;
    return true;
}

Word encode_natural(uint64_t n) {
    if (n == 0) return "0";
    Word w;
    while (n) {
        w += (n & 1) ? '1' : '0';
        n >>= 1;
    }
    std::reverse(w.begin(), w.end());
    return w;
}

std::optional<uint64_t> decode_natural(const Word& w) {
    if (w.empty() || w.size() > 63 || !is_bits(w)) return std::nullopt;
    if (w.size() > 1 && w[0] == '0') return std::nullopt;  // canonical only
    return bits_value(w);
}

POrder divisibility_order() {
    auto value_pos = [](const Word& w) -> std::optional<uint64_t> {
        auto v = decode_natural(w);
        if (!v || *v == 0) return std::nullopt;  // zero excluded from the universe
        return v;
    };
    POrder o;
    o.length_bound = Poly::identity();
    o.is_total = false;
    o.min_element = Word{"1"};
    o.leq = [value_pos](const Word& a, const Word& b) {
        if (a == b) return true;
        auto va = value_pos(a), vb = value_pos(b);
        return va && vb && *vb % *va == 0;
    };
    o.precedes = [value_pos](const Word& a, const Word& b) {
        auto va = value_pos(a), vb = value_pos(b);
        if (!va || !vb || *va == *vb || *vb % *va != 0) return false;
        return is_prime(*vb / *va);
    };
    return o;
}

uint64_t divcount_via_divisibility_interval(uint64_t m) {
    if (m < 2) return 0;
    POrder order = divisibility_order();
    const Word hi = encode_natural(m);
    uint64_t count = 0;
    for (uint64_t n = 2; n < m; ++n)
        if (order.leq(encode_natural(n), hi)) ++count;
    return count;
}

WitnessPredicate divisor_witness() {
    WitnessPredicate w;
    w.p = Poly::identity();
    w.decider = [](const Word& x, const Word& z) {
        auto m = decode_natural(x);
        if (!m || z.size() != x.size()) return false;
        uint64_t d = bits_value(z);
        return d > 1 && d < *m && *m % d == 0;
    };
    return normalize_witness(w);
}

SupportDecider composite_support() {
    SupportDecider s;
    s.in_support = [](const Word& x) {
        auto m = decode_natural(x);
        return m && *m >= 2 && !is_prime(*m);
    };
    return s;
}

uint64_t divcount_via_support_order(uint64_t m) {
    OrderTriple triple = build_support_aware_order(divisor_witness(), composite_support());
    Word x = encode_natural(m);
    return interval_size_over(triple.spec, x, triple.block_universe(x));
}

}  // namespace porder
