#include "porder/cluster.hpp"

#include <algorithm>
#include <bit>

namespace porder {

namespace {

void check_path_budget(uint64_t bits, size_t max_bits, const char* who) {
    if (bits > max_bits)
        throw validation_error(std::string(who) + ": path universe too large to enumerate");
}

}  // namespace

std::vector<Word> acc_set(const BalancedNTM& m, const Word& x, size_t max_bits) {
    uint64_t bits = m.path_len(x.size());
    check_path_budget(bits, max_bits, "acc_set");
    std::vector<Word> out;
    for_each_word_of_length((size_t)bits, [&](const Word& z) {
        if (m.accept(x, z)) out.push_back(z);
    });
    return out;  // already lexicographic
}

std::vector<ClusterRun> cluster_partition(const BalancedNTM& m, const POrder& order, const Word& x,
                                          size_t max_bits) {
    uint64_t bits = m.path_len(x.size());
    check_path_budget(bits, max_bits, "cluster_partition");
    std::vector<Word> paths = words_of_length((size_t)bits);
    std::sort(paths.begin(), paths.end(),
              [&](const Word& a, const Word& b) { return a != b && order.leq(a, b); });
    std::vector<ClusterRun> runs;
    for (Word& path : paths) {
        bool acc = m.accept(x, path);
        if (runs.empty() || runs.back().accepting != acc) runs.push_back({acc, {}});
        runs.back().paths.push_back(std::move(path));
    }
    return runs;
}

bool is_cluster(const BalancedNTM& m, const POrder& order, const Word& x, size_t max_bits) {
    auto runs = cluster_partition(m, order, x, max_bits);
    size_t accepting_runs = 0;
    for (const auto& run : runs) accepting_runs += run.accepting;
    return accepting_runs <= 1;
}

uint64_t cl_count(const ClusterWitness& w, const Word& x, size_t max_bits) {
    if (!is_cluster(w.machine, w.order, x, max_bits))
        throw validation_error("cl_count: accepting paths do not form a cluster");
    return acc_set(w.machine, x, max_bits).size();
}

namespace {

// Marker shape used by the interval-to-cluster paths: 0^{L-2-|y|} 1 y 0.
std::optional<Word> shape_decode(const Word& u) {
    if (u.size() < 2 || u.back() != '0') return std::nullopt;
    size_t one = u.find('1');
    if (one == Word::npos) return std::nullopt;
    return u.substr(one + 1, u.size() - one - 2);
}

Word shape_encode(const Word& y, size_t len) {
    if (y.size() + 2 > len) throw width_error("shape_encode: payload too wide");
    return Word(len - 2 - y.size(), '0') + "1" + y + "0";
}

}  // namespace

uint64_t ift_path_len(const OrderTriple& base, size_t n) {
    uint64_t tlen = base.t_len_bound.eval(n);
    return base.spec.order.length_bound.eval(tlen) + tlen + 4;  // q(|t|) + |t| + 2, plus 2
}

ClusterWitness ift_to_cluster(const OrderTriple& base) {
    const POrder& bo = base.spec.order;
    if (!bo.is_total || !bo.has_leq() || !bo.has_successor() || !bo.min_element)
        throw capability_error(
            "ift_to_cluster: base must be total with leq, successor, and a minimum");

    auto base_leq = bo.leq;
    auto base_succ = bo.successor;
    Word base_min = *bo.min_element;
    auto bb = base.spec.b;
    auto bt = base.spec.t;
    Poly tb = base.t_len_bound;
    Poly qb = bo.length_bound;

    ClusterWitness w;
    w.name = "ift(" + base.target + ")";

    w.machine.path_len = [tb, qb](size_t n) {
        uint64_t tlen = tb.eval(n);
        return qb.eval(tlen) + tlen + 4;
    };
    w.machine.accept = [base_leq, bb, bt](const Word& x, const Word& path) {
        auto y = shape_decode(path);
        if (!y) return false;
        Word lo = bb(x), hi = bt(x);
        return *y != lo && *y != hi && base_leq(lo, *y) && base_leq(*y, hi);
    };

    POrder order;
    order.length_bound = Poly::identity();
    order.is_total = true;
    order.min_element = Word{};
    order.leq = [base_leq](const Word& a, const Word& b) {
        if (a == b) return true;
        if (a.size() != b.size()) return a.size() < b.size();
        auto ya = shape_decode(a), yb = shape_decode(b);
        if (ya && yb) return base_leq(*ya, *yb);
        if (ya != yb) return ya.has_value();  // shapes precede the rest
        return a < b;
    };
    order.successor = [base_succ, base_min](const Word& u) -> std::optional<Word> {
        const size_t len = u.size();
        auto next_length_min = [&]() -> Word {
            if (len + 1 >= 2) return shape_encode(base_min, len + 1);
            return Word(len + 1, '0');
        };
        if (auto y = shape_decode(u)) {
            auto yn = base_succ(*y);
            if (yn && yn->size() + 2 <= len) return shape_encode(*yn, len);
            return Word(len, '0');  // lex-least non-shape string
        }
        Word cur = u;
        while (true) {
            auto nx = lex_increment(cur);
            if (!nx) return next_length_min();
            cur = *nx;
            if (!shape_decode(cur)) return cur;
        }
    };
    auto succ = order.successor;
    order.precedes = [succ](const Word& a, const Word& b) {
        auto s = succ(a);
        return s && *s == b;
    };
    w.order = order;
    return w;
}

namespace {

struct SectionReader {
    const Word& path;
    size_t pos = 0;
    explicit SectionReader(const Word& p) : path(p) {}
    Word take(size_t k) {
        Word out = path.substr(pos, k);
        pos += k;
        return out;
    }
    char take1() { return path[pos++]; }
};

bool all_zero_word(const Word& w) { return w.find('1') == Word::npos; }

// Variable-length guess of a neighbor: tag 0 uses the first (width-1) bits
// and forces the spare bit to zero; tag 1 uses all width bits.
std::optional<Word> read_tagged(SectionReader& r, char tag, size_t width) {
    Word bits = r.take(width);
    if (tag == '0') {
        if (bits.back() != '0') return std::nullopt;  // spare bit must be zero
        return bits.substr(0, width - 1);
    }
    return bits;
}

uint64_t r_field_width(uint64_t slots) { return std::max<uint64_t>(1, std::bit_width(slots)); }

Word shortest_binary(uint64_t n) {
    if (n == 0) return Word{"0"};
    Word enc;
    while (n) {
        enc += (n & 1) ? '1' : '0';
        n >>= 1;
    }
    std::reverse(enc.begin(), enc.end());
    return enc;
}

}  // namespace

BalancedNTM cluster_to_almost_unique(const ClusterWitness& w, const Poly& value_bound) {
    auto inner_len = w.machine.path_len;
    auto inner_accept = w.machine.accept;
    auto precedes = w.order.precedes;
    if (!precedes) throw capability_error("cluster_to_almost_unique: order has no precedes");

    auto slots_of = [value_bound](size_t n) -> uint64_t {
        uint64_t q = value_bound.eval(n);
        return q >= 2 ? q - 2 : 0;
    };
    BalancedNTM out;
    out.path_len = [inner_len, slots_of](size_t n) -> uint64_t {
        uint64_t p = inner_len(n);
        if (p == 0) return 1;  // the empty-path branch
        uint64_t slots = slots_of(n);
        return 4 * p + 3 + r_field_width(slots) + p * slots;
    };

    auto accepted_value = [inner_len, inner_accept, precedes, slots_of](
                              const Word& x, const Word& path) -> std::optional<uint64_t> {
        const uint64_t p = inner_len(x.size());
        if (p == 0) {
            if (path == "0" && inner_accept(x, Word{})) return 1;
            return std::nullopt;
        }
        SectionReader r(path);
        Word y = r.take((size_t)p);
        Word z = r.take((size_t)p);
        char ytag = r.take1();
        auto yprev = read_tagged(r, ytag, (size_t)p);
        char ztag = r.take1();
        auto znext = read_tagged(r, ztag, (size_t)p + 1);
        if (!yprev || !znext) return std::nullopt;
        if (ztag == '0' && znext->size() != p) return std::nullopt;

        auto acc = [&](const Word& path_word) {
            return path_word.size() == p && inner_accept(x, path_word);
        };
        if (!precedes(*yprev, y) || !precedes(z, *znext)) return std::nullopt;
        if (acc(*yprev) || acc(*znext)) return std::nullopt;
        if (!acc(y) || !acc(z)) return std::nullopt;

        const uint64_t slots = slots_of(x.size());
        Word rbits = r.take((size_t)r_field_width(slots));
        Word chain = r.take((size_t)(p * slots));
        if (y == z) {
            if (!all_zero_word(rbits) || !all_zero_word(chain)) return std::nullopt;
            return 1;
        }
        uint64_t count = bits_value(rbits);
        if (count > slots) return std::nullopt;
        Word prev = y;
        for (uint64_t j = 0; j < slots; ++j) {
            Word link = chain.substr((size_t)(j * p), (size_t)p);
            if (j < count) {
                if (!precedes(prev, link)) return std::nullopt;
                prev = link;
            } else if (!all_zero_word(link)) {
                return std::nullopt;
            }
        }
        if (!precedes(prev, z)) return std::nullopt;
        return count + 2;
    };

    out.accept = [accepted_value](const Word& x, const Word& path) {
        return accepted_value(x, path).has_value();
    };
    out.output = [accepted_value](const Word& x, const Word& path) -> std::optional<Word> {
        auto v = accepted_value(x, path);
        if (!v) return std::nullopt;
        return shortest_binary(*v);
    };
    return out;
}

BalancedNTM nonemptiness_detector(const ClusterWitness& w) {
    auto inner_len = w.machine.path_len;
    auto inner_accept = w.machine.accept;
    auto precedes = w.order.precedes;
    if (!precedes) throw capability_error("nonemptiness_detector: order has no precedes");
    BalancedNTM out;
    out.path_len = [inner_len](size_t n) { return 2 * inner_len(n) + 2; };
    out.accept = [inner_len, inner_accept, precedes](const Word& x, const Word& path) {
        const uint64_t p = inner_len(x.size());
        SectionReader r(path);
        Word z = r.take((size_t)p);
        char tag = r.take1();
        auto znext = read_tagged(r, tag, (size_t)p + 1);
        if (!znext) return false;
        if (tag == '0' && znext->size() != p) return false;
        auto acc = [&](const Word& pw) { return pw.size() == p && inner_accept(x, pw); };
        return acc(z) && precedes(z, *znext) && !acc(*znext);
    };
    return out;
}

BalancedNTM uniqueness_detector(const ClusterWitness& w) {
    auto inner_len = w.machine.path_len;
    auto inner_accept = w.machine.accept;
    auto precedes = w.order.precedes;
    if (!precedes) throw capability_error("uniqueness_detector: order has no precedes");
    BalancedNTM out;
    out.path_len = [inner_len](size_t n) -> uint64_t {
        uint64_t p = inner_len(n);
        return p == 0 ? 1 : 3 * p + 3;
    };
    out.accept = [inner_len, inner_accept, precedes](const Word& x, const Word& path) {
        const uint64_t p = inner_len(x.size());
        if (p == 0) return path == "0" && inner_accept(x, Word{});
        SectionReader r(path);
        Word y = r.take((size_t)p);
        char wtag = r.take1();
        auto wprev = read_tagged(r, wtag, (size_t)p);
        char ztag = r.take1();
        auto znext = read_tagged(r, ztag, (size_t)p + 1);
        if (!wprev || !znext) return false;
        if (ztag == '0' && znext->size() != p) return false;
        auto acc = [&](const Word& pw) { return pw.size() == p && inner_accept(x, pw); };
        return acc(y) && precedes(*wprev, y) && !acc(*wprev) && precedes(y, *znext) &&
               !acc(*znext);
    };
    return out;
}

std::vector<AlmostUniqueViolation> almost_unique_check(
    const BalancedNTM& m, const std::function<uint64_t(const Word&)>& f_oracle,
    const std::vector<Word>& inputs, size_t max_bits) {
    if (!m.has_output()) throw capability_error("almost_unique_check: machine has no output");
    std::vector<AlmostUniqueViolation> violations;
    for (const Word& x : inputs) {
        uint64_t bits = m.path_len(x.size());
        check_path_budget(bits, max_bits, "almost_unique_check");
        uint64_t accepting = 0;
        std::vector<Word> outputs;
        for_each_word_of_length((size_t)bits, [&](const Word& path) {
            if (!m.accept(x, path)) return;
            ++accepting;
            if (auto o = m.output(x, path)) {
                if (std::find(outputs.begin(), outputs.end(), *o) == outputs.end())
                    outputs.push_back(*o);
            }
        });
        uint64_t f = f_oracle(x);
        if (f > 0) {
            if (accepting != 1)
                violations.push_back({x, "expected exactly one accepting path, saw " +
                                             std::to_string(accepting)});
            Word want = shortest_binary(f);
            if (outputs.size() != 1 || outputs[0] != want)
                violations.push_back({x, "output set is not {f(x)}"});
        } else if (!outputs.empty()) {
            violations.push_back({x, "nonempty output set on a zero input"});
        }
    }
    return violations;
}

}  // namespace porder
