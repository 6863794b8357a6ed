#include "porder/order.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace porder {

POrder shortlex_order() {
    POrder o;
    o.leq = [](const Word& a, const Word& b) { return shortlex_leq(a, b); };
    o.successor = [](const Word& w) -> std::optional<Word> { return shortlex_successor(w); };
    o.precedes = [](const Word& a, const Word& b) { return shortlex_successor(a) == b; };
    o.length_bound = Poly::identity();
    o.is_total = true;
    o.min_element = Word{};
    return o;
}

namespace {

std::string pair_detail(const Word& a, const Word& b) {
    return "(\"" + a + "\", \"" + b + "\")";
}

}  // namespace

AxiomReport verify_order_axioms(const POrder& order, std::vector<Word> universe,
                                size_t max_violations) {
    if (!order.has_leq()) throw capability_error("verify_order_axioms: order has no leq");
    std::sort(universe.begin(), universe.end(), shortlex_less);
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());

    AxiomReport report;
    const size_t n = universe.size();
    report.universe_size = n;
    if (n > (size_t{1} << 14))
        throw validation_error("verify_order_axioms: universe too large");

    auto add = [&](const char* kind, std::string detail) {
        if (report.violations.size() < max_violations)
            report.violations.push_back({kind, std::move(detail)});
    };

    // Comparison matrix, one bitset row per element.
    const size_t words_per_row = (n + 63) / 64;
    std::vector<uint64_t> mat(n * words_per_row, 0);
    auto set_bit = [&](size_t i, size_t j) { mat[i * words_per_row + j / 64] |= uint64_t{1} << (j % 64); };
    auto get_bit = [&](size_t i, size_t j) {
        return (mat[i * words_per_row + j / 64] >> (j % 64)) & 1u;
    };

    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (order.leq(universe[i], universe[j])) set_bit(i, j);

    for (size_t i = 0; i < n; ++i)
        if (!get_bit(i, i)) add("reflexivity", "\"" + universe[i] + "\"");

    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            bool ij = get_bit(i, j), ji = get_bit(j, i);
            if (ij && ji) add("antisymmetry", pair_detail(universe[i], universe[j]));
            if (!ij && !ji) {
                ++report.incomparable_pairs;
                if (order.is_total) add("totality", pair_detail(universe[i], universe[j]));
            }
        }
    }

    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (get_bit(i, j) && universe[i].size() > order.length_bound.eval(universe[j].size())) {
                add("length-bound", pair_detail(universe[i], universe[j]));
            }

    // Transitivity: wherever i<=j, row(j) must be a subset of row(i).
    for (size_t i = 0; i < n; ++i) {
        const uint64_t* ri = &mat[i * words_per_row];
        for (size_t j = 0; j < n; ++j) {
            if (i == j || !get_bit(i, j)) continue;
            const uint64_t* rj = &mat[j * words_per_row];
            for (size_t k = 0; k < words_per_row; ++k) {
                uint64_t missing = rj[k] & ~ri[k];
                while (missing) {
                    size_t bit = k * 64 + (size_t)__builtin_ctzll(missing);
                    add("transitivity", pair_detail(universe[i], universe[j]) + " vs \"" +
                                            universe[bit] + "\"");
                    missing &= missing - 1;
                    if (report.violations.size() >= max_violations) return report;
                }
            }
        }
    }
    return report;
}

namespace {

bool strictly_less(const POrder& order, const Word& a, const Word& b) {
    return a != b && order.leq(a, b);
}

}  // namespace

bool adjacency_from_leq(const POrder& order, const Word& x, const Word& y) {
    if (!order.has_leq()) throw capability_error("adjacency_from_leq: order has no leq");
    if (!strictly_less(order, x, y)) return false;
    size_t maxlen = order.length_bound.eval(y.size());
    if (maxlen > 24) throw validation_error("adjacency_from_leq: scan universe too large");
    bool found = false;
    for_each_word_upto(maxlen, [&](const Word& z) {
        if (!found && strictly_less(order, x, z) && strictly_less(order, z, y)) found = true;
    });
    return !found;
}

bool adjacency_from_leq_over(const POrder& order, const Word& x, const Word& y,
                             const std::vector<Word>& universe) {
    if (!strictly_less(order, x, y)) return false;
    for (const Word& z : universe)
        if (strictly_less(order, x, z) && strictly_less(order, z, y)) return false;
    return true;
}

uint64_t interval_size_bruteforce(const IntervalSpec& spec, const Word& x) {
    if (!spec.order.has_leq())
        throw capability_error("interval_size_bruteforce: order has no leq");
    const Word lo = spec.b(x), hi = spec.t(x);
    size_t maxlen = spec.order.length_bound.eval(hi.size());
    if (maxlen > 24) throw validation_error("interval_size_bruteforce: universe too large");
    uint64_t count = 0;
    for_each_word_upto(maxlen, [&](const Word& z) {
        if (strictly_less(spec.order, lo, z) && strictly_less(spec.order, z, hi)) ++count;
    });
    return count;
}

uint64_t interval_size_over(const IntervalSpec& spec, const Word& x,
                            const std::vector<Word>& universe) {
    const Word lo = spec.b(x), hi = spec.t(x);
    uint64_t count = 0;
    for (const Word& z : universe)
        if (strictly_less(spec.order, lo, z) && strictly_less(spec.order, z, hi)) ++count;
    return count;
}

uint64_t interval_size_by_walk(const IntervalSpec& spec, const Word& x,
                               const std::function<std::optional<Word>(const Word&)>& successor,
                               uint64_t step_budget) {
    if (!spec.order.is_total) throw capability_error("interval_size_by_walk: order not total");
    const auto& step = successor ? successor : spec.order.successor;
    if (!step) throw capability_error("interval_size_by_walk: no successor available");
    const Word target = spec.t(x);
    Word cur = spec.b(x);
    if (cur == target) return 0;
    uint64_t count = 0;
    for (uint64_t used = 0; used < step_budget; ++used) {
        auto nx = step(cur);
        if (!nx) throw budget_error("interval_size_by_walk: order ended before t(x)");
        cur = std::move(*nx);
        if (cur == target) return count;
        ++count;
    }
    throw budget_error("interval_size_by_walk: step budget exhausted");
}

bool interval_nonempty(const IntervalSpec& spec, const Word& x) {
    if (!spec.order.has_leq() || !spec.order.has_precedes())
        throw capability_error("interval_nonempty: order needs leq and precedes");
    const Word lo = spec.b(x), hi = spec.t(x);
    return strictly_less(spec.order, lo, hi) && !spec.order.precedes(lo, hi);
}

bool interval_singleton(const IntervalSpec& spec, const Word& x) {
    if (!spec.order.is_total) throw capability_error("interval_singleton: order not total");
    if (!spec.order.has_precedes())
        throw capability_error("interval_singleton: order has no precedes");
    const Word lo = spec.b(x), hi = spec.t(x);
    size_t maxlen = spec.order.length_bound.eval(hi.size());
    if (maxlen > 24) throw validation_error("interval_singleton: universe too large");
    bool found = false;
    for_each_word_upto(maxlen, [&](const Word& z) {
        if (!found && spec.order.precedes(lo, z) && spec.order.precedes(z, hi)) found = true;
    });
    return found;
}

bool reachable_leq(const POrder& order, const Word& x, const Word& y) {
    if (!order.has_precedes()) throw capability_error("reachable_leq: order has no precedes");
    if (x == y) return true;
    size_t maxlen = order.length_bound.eval(y.size());
    if (maxlen > 20) throw validation_error("reachable_leq: universe too large");
    std::vector<Word> pool = words_upto(maxlen);
    std::unordered_set<Word> seen{x};
    std::deque<Word> frontier{x};
    while (!frontier.empty()) {
        Word cur = std::move(frontier.front());
        frontier.pop_front();
        if (order.precedes(cur, y)) return true;
        for (const Word& z : pool) {
            if (!seen.count(z) && order.precedes(cur, z)) {
                seen.insert(z);
                frontier.push_back(z);
            }
        }
    }
    return false;
}

}  // namespace porder
