#include "porder/constructions.hpp"

#include <algorithm>
#include <cassert>

#include "porder/errors.hpp"

namespace porder {

WitnessPredicate normalize_witness(const WitnessPredicate& w) {
    WitnessPredicate out;
    out.p = w.p.plus_const(2);
    auto base = w;  // copy of decider + width
    out.decider = [base](const Word& x, const Word& z) {
        size_t width = base.p.eval(x.size());
        if (z.size() != width + 2) return false;
        if (z[z.size() - 2] != '0' || z[z.size() - 1] != '1') return false;
        return base.decider(x, z.substr(0, width));
    };
    out.normalized = true;
    return out;
}

Word bin(const Word& x, uint64_t i, const Poly& p) {
    uint64_t width = p.eval(x.size());
    if (width > 63 || i >= (uint64_t{1} << width))
        throw width_error("bin: value does not fit in p(|x|) bits");
    return word_of(i, (size_t)width);
}

uint64_t witness_count(const WitnessPredicate& w, const Word& x) {
    size_t width = (size_t)w.p.eval(x.size());
    if (width > 26) throw validation_error("witness_count: width too large to enumerate");
    uint64_t count = 0;
    for_each_word_of_length(width, [&](const Word& z) {
        if (w.decider(x, z)) ++count;
    });
    return count;
}

namespace {

// Shared skeleton of the total block orders: shortlex everywhere, except that
// for each x the contiguous run of words x.u (|u| = width(|x|)) carries a
// construction-specific internal order. Keys are (group, tiebreak) pairs;
// groups are compared first, ties lexicographically.
struct BlockScheme {
    std::function<uint64_t(size_t)> width;  // suffix width for prefix length n
    // strict-weak "less" inside one block
    std::function<bool(const Word& x, const Word& u, const Word& v)> suffix_less;
    // next suffix in block order, nullopt at the block maximum; may be null
    std::function<std::optional<Word>(const Word& x, const Word& u)> suffix_successor;
    std::function<Word(const Word& x)> first_suffix;
};

struct BlockPos {
    Word x, u;
};

std::optional<BlockPos> decompose(const Word& v, const std::function<uint64_t(size_t)>& width) {
    // n + width(n) is strictly increasing in n, so at most one n matches.
    for (size_t n = 0; n <= v.size(); ++n) {
        uint64_t w = width(n);
        if (n + w == v.size() && w > 0) return BlockPos{v.substr(0, n), v.substr(n)};
        if (n + w > v.size()) break;
    }
    return std::nullopt;
}

POrder make_block_order(BlockScheme scheme, bool with_successor) {
    POrder o;
    o.length_bound = Poly::identity();
    o.is_total = true;
    o.min_element = Word{};
    auto width = scheme.width;
    auto less = scheme.suffix_less;
    o.leq = [width, less](const Word& a, const Word& b) {
        if (a == b) return true;
        auto pa = decompose(a, width), pb = decompose(b, width);
        if (pa && pb && pa->x == pb->x) return !less(pb->x, pb->u, pa->u);
        return shortlex_less(a, b);
    };
    if (with_successor) {
        auto suffix_succ = scheme.suffix_successor;
        auto first = scheme.first_suffix;
        o.successor = [width, suffix_succ, first](const Word& a) -> std::optional<Word> {
            auto pa = decompose(a, width);
            Word next_pos;
            if (pa) {
                if (auto s = suffix_succ(pa->x, pa->u)) return pa->x + *s;
                next_pos = shortlex_successor(pa->x + Word(pa->u.size(), '1'));
            } else {
                next_pos = shortlex_successor(a);
            }
            if (auto pn = decompose(next_pos, width)) return pn->x + first(pn->x);
            return next_pos;
        };
        auto succ = o.successor;
        o.precedes = [succ](const Word& a, const Word& b) {
            auto s = succ(a);
            return s && *s == b;
        };
    }
    return o;
}

std::vector<Word> block_words(const Word& x, uint64_t width) {
    if (width > 24) throw validation_error("block universe too large");
    std::vector<Word> out;
    out.reserve(size_t{1} << width);
    for_each_word_of_length((size_t)width, [&](const Word& u) { out.push_back(x + u); });
    return out;
}

void require_normalized(const WitnessPredicate& w, const char* who) {
    if (!w.normalized) throw validation_error(std::string(who) + ": witness not normalized");
}

// Spot check of the normalization contract on one input.
void check_excluded_witnesses(const WitnessPredicate& w, const Word& x, const char* who) {
    size_t width = (size_t)w.p.eval(x.size());
    if (w.decider(x, Word(width, '0')) || w.decider(x, Word(width, '1')))
        throw validation_error(std::string(who) + ": all-zero or all-one witness accepted");
}

}  // namespace

OrderTriple build_sharp_p_order(const WitnessPredicate& w) {
    require_normalized(w, "build_sharp_p_order");
    auto p = w.p;
    auto decider = w.decider;
    BlockScheme scheme;
    scheme.width = [p](size_t n) { return p.eval(n); };
    scheme.suffix_less = [decider, w](const Word& x, const Word& u, const Word& v) {
        check_excluded_witnesses(w, x, "build_sharp_p_order");
        auto rank = [&](const Word& s) -> int {
            if (s.find('0') == Word::npos) return 0;  // x1^p comes first
            return decider(x, s) ? 1 : 2;
        };
        int ru = rank(u), rv = rank(v);
        if (ru != rv) return ru < rv;
        return u < v;
    };
    scheme.suffix_successor = nullptr;  // no adjacency guarantee here
    scheme.first_suffix = [p](const Word& x) { return Word((size_t)p.eval(x.size()), '1'); };

    OrderTriple triple;
    triple.spec.order = make_block_order(scheme, /*with_successor=*/false);
    triple.spec.b = [p](const Word& x) { return x + Word((size_t)p.eval(x.size()), '1'); };
    triple.spec.t = [p](const Word& x) { return x + Word((size_t)p.eval(x.size()), '0'); };
    triple.target = "witness count";
    triple.t_len_bound = p.plus(Poly::identity());
    triple.block_universe = [p](const Word& x) { return block_words(x, p.eval(x.size())); };
    return triple;
}

OrderTriple build_fp_order(const FPFunction& f) {
    auto p = f.p;
    auto eval = f.eval;
    auto checked_f = [p, eval](const Word& x) {
        uint64_t width = p.eval(x.size());
        uint64_t fx = eval(x);
        if (width > 63 || fx >= (uint64_t{1} << width) - 1)
            throw validation_error("build_fp_order: f(x) >= 2^p(|x|) - 1");
        return fx;
    };
    // Block rank of suffix u: encodings of 0..f(x) first, then 1^p, then the
    // remaining encodings in value order.
    auto rank_of = [checked_f](const Word& x, const Word& u) -> uint64_t {
        uint64_t fx = checked_f(x);
        uint64_t v = bits_value(u);
        if (v == (uint64_t{1} << u.size()) - 1) return fx + 1;
        return v <= fx ? v : v + 1;
    };
    BlockScheme scheme;
    scheme.width = [p](size_t n) { return p.eval(n); };
    scheme.suffix_less = [rank_of](const Word& x, const Word& u, const Word& v) {
        return rank_of(x, u) < rank_of(x, v);
    };
    scheme.suffix_successor = [checked_f](const Word& x, const Word& u) -> std::optional<Word> {
        uint64_t fx = checked_f(x);
        uint64_t top = (uint64_t{1} << u.size()) - 1;
        uint64_t v = bits_value(u);
        uint64_t rank = (v == top) ? fx + 1 : (v <= fx ? v : v + 1);
        if (rank >= top) return std::nullopt;
        uint64_t next = rank + 1;
        if (next <= fx) return word_of(next, u.size());
        if (next == fx + 1) return Word(u.size(), '1');
        return word_of(next - 1, u.size());
    };
    scheme.first_suffix = [p](const Word& x) { return Word((size_t)p.eval(x.size()), '0'); };

    OrderTriple triple;
    triple.spec.order = make_block_order(scheme, true);
    triple.spec.b = [p](const Word& x) { return x + Word((size_t)p.eval(x.size()), '0'); };
    triple.spec.t = [p](const Word& x) { return x + Word((size_t)p.eval(x.size()), '1'); };
    triple.target = "f(x)";
    triple.t_len_bound = p.plus(Poly::identity());
    triple.block_universe = [p](const Word& x) { return block_words(x, p.eval(x.size())); };
    return triple;
}

OrderTriple build_support_aware_order(const WitnessPredicate& w, const SupportDecider& s) {
    require_normalized(w, "build_support_aware_order");
    auto p = w.p;
    auto decider = w.decider;
    auto in_support = s.in_support;
    auto width = [p](size_t n) { return p.eval(n) + 2; };

    // Block ranks: x0^p00 < bucket of leftovers < x0^p01 < accepted xz10 <
    // x0^p11, with the two buckets internally incomparable.
    auto rank_of = [p, decider](const Word& x, const Word& u) -> int {
        size_t pw = (size_t)p.eval(x.size());
        Word z = u.substr(0, pw), tag = u.substr(pw);
        if (z.find('1') == Word::npos) {
            if (tag == "00") return 0;
            if (tag == "01") return 2;
            if (tag == "11") return 4;
        }
        if (tag == "10" && decider(x, z)) return 3;
        return 1;
    };

    POrder order;
    order.length_bound = Poly::identity();
    order.is_total = false;
    order.min_element = Word{};
    order.leq = [width, rank_of](const Word& a, const Word& b) {
        if (a == b) return true;
        auto pa = decompose(a, width), pb = decompose(b, width);
        if (pa && pb && pa->x == pb->x) {
            int ra = rank_of(pa->x, pa->u), rb = rank_of(pb->x, pb->u);
            return ra < rb;  // equal ranks are incomparable
        }
        return shortlex_less(a, b);
    };
    order.precedes = [width, rank_of, in_support, p](const Word& a, const Word& b) {
        auto pa = decompose(a, width), pb = decompose(b, width);
        if (pa && pb && pa->x == pb->x) {
            int ra = rank_of(pa->x, pa->u), rb = rank_of(pb->x, pb->u);
            size_t pw = (size_t)p.eval(pa->x.size());
            if (ra == 2 && rb == 4) return !in_support(pa->x);
            if (ra == 0 && rb == 1) return true;
            if (ra == 1 && rb == 2) return true;
            if (ra == 2 && rb == 3) return true;
            if (ra == 3 && rb == 4) return true;
            (void)pw;
            return false;
        }
        // Boundary stitching: into the block bottom, out of the block top.
        if (pb && !(pa && pa->x == pb->x)) {
            int rb = rank_of(pb->x, pb->u);
            return rb == 0 && shortlex_successor(a) == b;
        }
        if (pa && !pb) {
            int ra = rank_of(pa->x, pa->u);
            Word block_top = pa->x + Word(pa->u.size(), '1');
            return ra == 4 && shortlex_successor(block_top) == b;
        }
        return shortlex_successor(a) == b;
    };

    OrderTriple triple;
    triple.spec.order = order;
    triple.spec.b = [p](const Word& x) { return x + Word((size_t)p.eval(x.size()), '0') + "01"; };
    triple.spec.t = [p](const Word& x) { return x + Word((size_t)p.eval(x.size()), '0') + "11"; };
    triple.target = "f(x) via support";
    triple.t_len_bound = p.plus(Poly::identity()).plus_const(2);
    triple.block_universe = [p](const Word& x) { return block_words(x, p.eval(x.size()) + 2); };
    return triple;
}

OrderTriple build_offset_order(const WitnessPredicate& w) {
    require_normalized(w, "build_offset_order");
    auto p = w.p;
    auto decider = w.decider;
    // Groups over suffix u = z.tag: 00-tagged in lex order, then 01-tagged
    // mixed with the accepted 11-tagged, then 10-tagged mixed with the
    // rejected 11-tagged; within each group plain lex on u.
    auto group_of = [p, decider](const Word& x, const Word& u) -> int {
        size_t pw = (size_t)p.eval(x.size());
        Word z = u.substr(0, pw), tag = u.substr(pw);
        if (tag == "00") return 0;
        if (tag == "01") return 1;
        if (tag == "10") return 2;
        return decider(x, z) ? 1 : 2;
    };
    BlockScheme scheme;
    scheme.width = [p](size_t n) { return p.eval(n) + 2; };
    scheme.suffix_less = [group_of](const Word& x, const Word& u, const Word& v) {
        int gu = group_of(x, u), gv = group_of(x, v);
        if (gu != gv) return gu < gv;
        return u < v;
    };
    scheme.suffix_successor = [p, decider, w](const Word& x, const Word& u) -> std::optional<Word> {
        check_excluded_witnesses(w, x, "build_offset_order");
        size_t pw = (size_t)p.eval(x.size());
        Word z = u.substr(0, pw), tag = u.substr(pw);
        const Word zmax(pw, '1');
        if (tag == "00") {
            if (auto zn = lex_increment(z)) return *zn + "00";
            return Word(pw, '0') + "01";  // group 2 starts
        }
        if (tag == "01") {
            if (decider(x, z)) return z + "11";
            if (auto zn = lex_increment(z)) return *zn + "01";
            return Word(pw, '0') + "10";  // group 3 starts
        }
        if (tag == "11" && decider(x, z)) {
            if (auto zn = lex_increment(z)) return *zn + "01";
            return Word(pw, '0') + "10";
        }
        if (tag == "10") {
            if (!decider(x, z)) return z + "11";
            if (auto zn = lex_increment(z)) return *zn + "10";
            return std::nullopt;  // cannot happen: 1^p is rejected
        }
        // rejected z with tag 11
        if (auto zn = lex_increment(z)) return *zn + "10";
        return std::nullopt;  // block maximum x1^p11
    };
    scheme.first_suffix = [p](const Word& x) { return Word((size_t)p.eval(x.size()) + 2, '0'); };

    OrderTriple triple;
    triple.spec.order = make_block_order(scheme, true);
    triple.spec.b = [p](const Word& x) { return x + Word((size_t)p.eval(x.size()), '1') + "00"; };
    triple.spec.t = [p](const Word& x) { return x + Word((size_t)p.eval(x.size()), '0') + "10"; };
    triple.target = "f(x) + 2^p(|x|)";
    triple.t_len_bound = p.plus(Poly::identity()).plus_const(2);
    triple.block_universe = [p](const Word& x) { return block_words(x, p.eval(x.size()) + 2); };
    return triple;
}

namespace {

struct UpsvView {
    Word z, u, tag;
};

UpsvView upsv_split(const Word& suffix, size_t pw) {
    return {suffix.substr(0, pw), suffix.substr(pw, pw), suffix.substr(2 * pw)};
}

}  // namespace

OrderTriple build_upsv_order(const UPSVMachine& m) {
    if (!m.path_output || !m.accepting_path)
        throw validation_error("build_upsv_order: machine incomplete");
    auto p = m.p;
    auto out = m.path_output;
    auto acc = m.accepting_path;
    auto value_of = [out, acc, p](const Word& x) -> uint64_t {
        Word z = acc(x);
        auto v = out(x, z);
        if (!v) throw validation_error("build_upsv_order: accepting path has no output");
        if (*v == 0) throw validation_error("build_upsv_order: zero output rejected");
        uint64_t pw = p.eval(x.size());
        if (pw > 62 || *v > (uint64_t{1} << pw))
            throw validation_error("build_upsv_order: output exceeds 2^p");
        return *v;
    };
    // Derived witness: x z u is in when path z outputs a value above the
    // number u encodes.
    auto in_b = [out](const Word& x, const Word& z, const Word& u) {
        auto v = out(x, z);
        return v && bits_value(u) < *v;
    };
    auto group_of = [p, in_b](const Word& x, const Word& suffix) -> int {
        auto s = upsv_split(suffix, (size_t)p.eval(x.size()));
        if (s.tag == "00") return 0;
        if (s.tag == "01") return 2;
        if (s.tag == "10") return 4;
        return in_b(x, s.z, s.u) ? 1 : 3;
    };

    BlockScheme scheme;
    scheme.width = [p](size_t n) { return 2 * p.eval(n) + 2; };
    scheme.suffix_less = [group_of](const Word& x, const Word& u, const Word& v) {
        int gu = group_of(x, u), gv = group_of(x, v);
        if (gu != gv) return gu < gv;
        return u < v;
    };
    scheme.suffix_successor = [p, out, acc, value_of, in_b](const Word& x, const Word& suffix)
        -> std::optional<Word> {
        size_t pw = (size_t)p.eval(x.size());
        auto s = upsv_split(suffix, pw);
        Word zu = s.z + s.u;
        uint64_t fx = value_of(x);
        Word zstar = acc(x);
        // First string of group 3, skipping the accepted pairs.
        auto first_not_in_b = [&](Word z, Word u) -> std::optional<Word> {
            while (true) {
                if (!(z == zstar && bits_value(u) < fx)) return z + u + "11";
                if (fx <= (uint64_t{1} << pw) - 1) return z + word_of(fx, pw) + "11";
                auto zn = lex_increment(z);
                if (!zn) return std::nullopt;
                z = *zn;
                u = Word(pw, '0');
            }
        };
        if (s.tag == "00") {
            if (auto nx = lex_increment(zu)) return *nx + "00";
            return zstar + word_of(0, pw) + "11";  // accepted group; nonempty since f >= 1
        }
        if (s.tag == "11" && in_b(x, s.z, s.u)) {
            uint64_t next = bits_value(s.u) + 1;
            if (next < fx && next <= (uint64_t{1} << pw) - 1) return s.z + word_of(next, pw) + "11";
            return Word(2 * pw, '0') + "01";  // group with tag 01 starts
        }
        if (s.tag == "01") {
            if (auto nx = lex_increment(zu)) return *nx + "01";
            auto g4 = first_not_in_b(Word(pw, '0'), Word(pw, '0'));
            if (g4) return g4;
            return Word(2 * pw, '0') + "10";
        }
        if (s.tag == "11") {  // rejected
            Word z = s.z, u = s.u;
            if (auto un = lex_increment(u)) {
                if (auto g = first_not_in_b(z, *un)) return g;
            } else if (auto zn = lex_increment(z)) {
                if (auto g = first_not_in_b(*zn, Word(pw, '0'))) return g;
            }
            return Word(2 * pw, '0') + "10";
        }
        // tag == "10"
        if (auto nx = lex_increment(zu)) return *nx + "10";
        return std::nullopt;
    };
    scheme.first_suffix = [p](const Word& x) {
        return Word((size_t)(2 * p.eval(x.size()) + 2), '0');
    };

    OrderTriple triple;
    triple.spec.order = make_block_order(scheme, true);
    // Boundary functions validate the machine's output range up front, so
    // every evaluation path rejects inputs outside the nonzero regime.
    triple.spec.b = [p, value_of](const Word& x) {
        value_of(x);
        return x + Word((size_t)(2 * p.eval(x.size())), '1') + "00";
    };
    triple.spec.t = [p, value_of](const Word& x) {
        value_of(x);
        return x + Word((size_t)(2 * p.eval(x.size())), '0') + "01";
    };
    triple.target = "machine output";
    triple.t_len_bound = p.times(Poly::constant(2)).plus(Poly::identity()).plus_const(2);
    triple.block_universe = [p](const Word& x) {
        return block_words(x, 2 * p.eval(x.size()) + 2);
    };
    return triple;
}

namespace {

// Marker encoding used by the increment construction: z becomes
// 0^{P-|z|} 1 z 0 inside a width-(P+2) suffix.
std::optional<Word> marker_decode(const Word& u) {
    size_t first_one = u.find('1');
    if (first_one == Word::npos || first_one == 0) return std::nullopt;
    if (u.back() != '0') return std::nullopt;
    return u.substr(first_one + 1, u.size() - first_one - 2);
}

Word marker_encode(const Word& z, size_t P) {
    if (z.size() >= P) throw width_error("increment_order: |z| >= block polynomial");
    return Word(P - z.size(), '0') + "1" + z + "0";
}

}  // namespace

OrderTriple increment_order(const OrderTriple& base) {
    const POrder& bo = base.spec.order;
    if (!bo.is_total || !bo.has_leq() || !bo.has_precedes() || !bo.has_successor())
        throw capability_error("increment_order: base must be total with leq/precedes/successor");
    Poly P = bo.length_bound.compose(base.t_len_bound).plus(Poly::identity()).plus_const(2);

    auto base_leq = bo.leq;
    auto base_succ = bo.successor;
    auto bb = base.spec.b;
    auto bt = base.spec.t;
    // Boundary normalization: an out-of-order pair collapses to (b, b).
    auto bounds = [base_leq, bb, bt](const Word& x) -> std::pair<Word, Word> {
        Word lo = bb(x), hi = bt(x);
        if (!base_leq(lo, hi)) hi = lo;
        return {lo, hi};
    };
    auto in_dx = [base_leq, bounds](const Word& x, const Word& z) {
        auto [lo, hi] = bounds(x);
        return base_leq(lo, z) && base_leq(z, hi);
    };
    // rank 0: sentinel 0^{P+2}; rank 1: encodings of [b,t]; rank 2: the rest
    auto rank_of = [in_dx](const Word& x, const Word& u) -> int {
        if (u.find('1') == Word::npos) return 0;
        auto z = marker_decode(u);
        if (z && in_dx(x, *z)) return 1;
        return 2;
    };

    BlockScheme scheme;
    scheme.width = [P](size_t n) { return P.eval(n) + 2; };
    scheme.suffix_less = [rank_of, base_leq](const Word& x, const Word& u, const Word& v) {
        int ru = rank_of(x, u), rv = rank_of(x, v);
        if (ru != rv) return ru < rv;
        if (ru == 1) {
            Word zu = *marker_decode(u), zv = *marker_decode(v);
            return zu != zv && base_leq(zu, zv);
        }
        return u < v;
    };
    scheme.suffix_successor = [rank_of, bounds, base_succ, in_dx, P](
                                  const Word& x, const Word& u) -> std::optional<Word> {
        size_t pw = (size_t)P.eval(x.size());
        int r = rank_of(x, u);
        if (r == 0) {
            auto [lo, hi] = bounds(x);
            (void)hi;
            return marker_encode(lo, pw);
        }
        if (r == 1) {
            Word z = *marker_decode(u);
            auto [lo, hi] = bounds(x);
            (void)lo;
            if (z != hi) {
                auto zn = base_succ(z);
                if (!zn) throw validation_error("increment_order: base successor vanished");
                return marker_encode(*zn, pw);
            }
            return Word(pw + 1, '0') + "1";  // first non-encoding string
        }
        Word cur = u;
        while (true) {
            auto nx = lex_increment(cur);
            if (!nx) return std::nullopt;
            cur = *nx;
            if (rank_of(x, cur) == 2) return cur;
        }
    };
    scheme.first_suffix = [P](const Word& x) { return Word((size_t)P.eval(x.size()) + 2, '0'); };

    OrderTriple triple;
    triple.spec.order = make_block_order(scheme, true);
    triple.spec.b = [P](const Word& x) { return x + Word((size_t)P.eval(x.size()) + 2, '0'); };
    triple.spec.t = [P, bounds](const Word& x) -> Word {
        size_t pw = (size_t)P.eval(x.size());
        auto [lo, hi] = bounds(x);
        if (lo != hi) return x + marker_encode(hi, pw);
        return x + Word(pw + 1, '0') + "1";  // degenerate base interval
    };
    triple.target = base.target + " + 1";
    triple.t_len_bound = P.plus(Poly::identity()).plus_const(2);
    triple.block_universe = [P](const Word& x) { return block_words(x, P.eval(x.size()) + 2); };
    return triple;
}

uint64_t eval_triple(const OrderTriple& triple, const Word& x, EvalMode mode,
                     uint64_t step_budget) {
    if (mode == EvalMode::bruteforce) return interval_size_bruteforce(triple.spec, x);
    return interval_size_by_walk(triple.spec, x, step_budget);
}

}  // namespace porder
