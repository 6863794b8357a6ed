#include "porder/traversal.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>

namespace porder {

uint64_t guessed_len(const TmContext& ctx, uint64_t n) {
    return n + 2 * ctx.enc.s(n) + ctx.enc.t(n);
}

uint64_t token_len(const TmContext& ctx, uint64_t n) {
    return n + 2 * (ctx.enc.s(n) + ctx.enc.t(n)) + 1;
}

namespace {

std::optional<uint64_t> n_from_len(const TmContext& ctx, uint64_t len,
                                   uint64_t (*length_of)(const TmContext&, uint64_t)) {
    for (uint64_t n = 0; n <= len; ++n) {
        uint64_t l = length_of(ctx, n);
        if (l == len) return n;
        if (l > len) break;
    }
    return std::nullopt;
}

}  // namespace

std::optional<GuessedView> guessed_view(const TmContext& ctx, const Word& g) {
    if (!is_bits(g)) return std::nullopt;
    auto n = n_from_len(ctx, g.size(), &guessed_len);
    if (!n) return std::nullopt;
    GuessedView v;
    v.n = *n;
    uint64_t s2 = 2 * ctx.enc.s(*n), t = ctx.enc.t(*n);
    v.x = g.substr(0, *n);
    v.w = g.substr(*n, s2);
    v.y = g.substr(*n + s2, t);
    return v;
}

std::optional<TokenView> token_view(const TmContext& ctx, const Word& v) {
    if (!is_bits(v)) return std::nullopt;
    auto n = n_from_len(ctx, v.size(), &token_len);
    if (!n) return std::nullopt;
    TokenView tv;
    tv.n = *n;
    uint64_t s2 = 2 * ctx.enc.s(*n), t = ctx.enc.t(*n);
    tv.x = v.substr(0, *n);
    tv.w = v.substr(*n, s2);
    tv.y = v.substr(*n + s2, t);
    tv.z = v.substr(*n + s2 + t, t);
    tv.a = v.back();
    return tv;
}

bool rx_membership(const TmContext& ctx, const Word& g) {
    auto v = guessed_view(ctx, g);
    if (!v) throw validation_error("rx_membership: malformed guessed description");
    return v->w.compare(0, ctx.enc.m, Word(ctx.enc.m, '1')) == 0;
}

namespace {

// Tape section of the description part: the last t bits of w.
Word tape_of(const TmContext& ctx, const GuessedView& v) {
    uint64_t t = ctx.enc.t(v.n);
    return v.w.substr(v.w.size() - t);
}

Word root_word(const Word& x, int m, const Word& kappa, const Word& y) {
    return x + Word(m, '1') + kappa + y;
}

}  // namespace

std::optional<Word> rx_successor(const TmContext& ctx, const Word& g) {
    auto v = guessed_view(ctx, g);
    if (!v || !rx_membership(ctx, g)) throw validation_error("rx_successor: not a root");
    const int m = ctx.enc.m;
    const uint64_t t = ctx.enc.t(v->n);
    Word kappa = v->w.substr(m);
    Word tape = tape_of(ctx, *v);
    if (v->y == tape) {  // matched block, ordered by kappa alone
        if (auto kn = lex_increment(kappa)) {
            Word yn = kn->substr(kn->size() - t);
            return root_word(v->x, m, *kn, yn);
        }
        // first mismatched root: all-zero kappa, smallest guess differing
        // from its tape (which is all zeros)
        Word k0(kappa.size(), '0');
        Word y0 = Word(t - 1, '0') + "1";
        return root_word(v->x, m, k0, y0);
    }
    // mismatched block: advance (kappa, y) skipping the matched guess
    Word kc = kappa;
    std::optional<Word> yc = lex_increment(v->y);
    while (true) {
        if (!yc) {
            auto kn = lex_increment(kc);
            if (!kn) return std::nullopt;  // last root reached
            kc = *kn;
            yc = Word(t, '0');
        }
        if (*yc != kc.substr(kc.size() - t)) return root_word(v->x, m, kc, *yc);
        yc = lex_increment(*yc);
    }
}

std::optional<Word> rx_predecessor(const TmContext& ctx, const Word& g) {
    auto v = guessed_view(ctx, g);
    if (!v || !rx_membership(ctx, g)) throw validation_error("rx_predecessor: not a root");
    const int m = ctx.enc.m;
    const uint64_t t = ctx.enc.t(v->n);
    Word kappa = v->w.substr(m);
    Word tape = tape_of(ctx, *v);

    auto decrement = [](const Word& w) -> std::optional<Word> {
        Word out = w;
        for (size_t i = out.size(); i-- > 0;) {
            if (out[i] == '1') {
                out[i] = '0';
                return out;
            }
            out[i] = '1';
        }
        return std::nullopt;
    };

    if (v->y == tape) {  // matched block
        auto kp = decrement(kappa);
        if (!kp) return std::nullopt;  // overall minimum root
        Word yp = kp->substr(kp->size() - t);
        return root_word(v->x, m, *kp, yp);
    }
    Word kc = kappa;
    std::optional<Word> yc = decrement(v->y);
    while (true) {
        if (!yc) {
            auto kp = decrement(kc);
            if (!kp) return root_word(v->x, m, Word(kc.size(), '1'), Word(t, '1'));  // matched max
            kc = *kp;
            yc = Word(t, '1');
        }
        if (*yc != kc.substr(kc.size() - t)) return root_word(v->x, m, kc, *yc);
        yc = decrement(*yc);
    }
}

std::optional<Word> mu1(const TmContext& ctx, const Word& g) {
    auto v = guessed_view(ctx, g);
    if (!v) return std::nullopt;
    if (!rx_membership(ctx, g)) {
        auto next = mu(ctx, g.substr(0, v->x.size() + v->w.size()));
        if (!next) return std::nullopt;  // cannot happen on a well-formed non-root
        return *next + v->y;
    }
    // root: chain to the next root, stopping at the very last one
    const uint64_t t = ctx.enc.t(v->n);
    bool is_last = v->w.find('0') == Word::npos && v->y == Word(t - 1, '1') + "0";
    if (is_last) return std::nullopt;
    return rx_successor(ctx, g);
}

std::vector<Word> mu1_preimages(const TmContext& ctx, const Word& g) {
    std::vector<Word> out;
    auto v = guessed_view(ctx, g);
    if (!v) return out;
    for (const Word& e : mu_preimages(ctx, g.substr(0, v->x.size() + v->w.size())))
        out.push_back(e + v->y);
    if (rx_membership(ctx, g)) {
        if (auto pred = rx_predecessor(ctx, g)) out.push_back(*pred);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Word> dwn(const TmContext& ctx, const Word& g) {
    auto pre = mu1_preimages(ctx, g);
    if (pre.empty()) return std::nullopt;
    return pre.back();
}

std::optional<Word> acr(const TmContext& ctx, const Word& g) {
    auto parent = mu1(ctx, g);
    if (!parent) return std::nullopt;
    auto siblings = mu1_preimages(ctx, *parent);
    // largest sibling lex-below g; none when g is the minimum
    std::optional<Word> best;
    for (const Word& s : siblings)
        if (s < g && (!best || *best < s)) best = s;
    return best;
}

namespace {

// Does the description part of the token equal the initial configuration?
bool is_initial_part(const TmContext& ctx, const TokenView& tv) {
    const uint64_t m = ctx.enc.m;
    const uint64_t head_fields = m + ctx.enc.s(tv.n) + ctx.enc.r(tv.n);
    for (uint64_t i = 0; i < head_fields; ++i)
        if (tv.w[i] != '0') return false;
    // tape section: encoded input then encoded blanks
    size_t pos = head_fields;
    for (char c : tv.x) {
        const Word& code = ctx.codec.theta(c == '1' ? ctx.tm.sym_one : ctx.tm.sym_zero);
        if (tv.w.compare(pos, m, code) != 0) return false;
        pos += m;
    }
    for (size_t i = pos; i < tv.w.size(); ++i)
        if (tv.w[i] != '0') return false;
    return true;
}

uint64_t guess_value(const TmContext& ctx, const TokenView& tv) {
    return nu_symbols(ctx, ctx.codec.theta_hat_inv(tv.y));
}

bool all_zero(const Word& w) { return w.find('1') == Word::npos; }

bool is_root_end_wy(const TokenView& tv) {
    // w.y == 1^{2s+t-1} 0
    if (tv.w.find('0') != Word::npos) return false;
    if (tv.y.back() != '0') return false;
    return tv.y.compare(0, tv.y.size() - 1, Word(tv.y.size() - 1, '1')) == 0;
}

}  // namespace

std::optional<Word> d_step(const TmContext& ctx, const Word& tok) {
    auto tv = token_view(ctx, tok);
    if (!tv) return std::nullopt;
    const size_t glen = tok.size() - tv->z.size() - 1;
    auto with = [&](const Word& g, const Word& z, char a) { return g + z + a; };
    Word g = tok.substr(0, glen);

    if (tv->a == '1') {
        if (!all_zero(tv->z)) return std::nullopt;
        if (auto across = acr(ctx, g)) return with(*across, tv->z, '0');
        if (auto up = mu1(ctx, g)) return with(*up, tv->z, '1');
        return std::nullopt;
    }
    // a == '0'
    if (all_zero(tv->z)) {
        if (auto down = dwn(ctx, g)) return with(*down, tv->z, '0');
        if (!is_initial_part(ctx, *tv)) return with(g, tv->z, '1');
        uint64_t target = guess_value(ctx, *tv);
        if (target > 0) return with(g, *lex_increment(tv->z), '0');
        return with(g, Word(tv->z.size(), '0'), '1');
    }
    // spinning is possible only at the initial configuration
    if (!is_initial_part(ctx, *tv)) return std::nullopt;
    if (dwn(ctx, g)) return std::nullopt;
    uint64_t zval = bits_value(tv->z);
    uint64_t target = guess_value(ctx, *tv);
    if (zval < target) return with(g, *lex_increment(tv->z), '0');
    if (zval == target) return with(g, Word(tv->z.size(), '0'), '1');
    return std::nullopt;
}

bool d_step_defined_formula(const TmContext& ctx, const Word& tok) {
    auto tv = token_view(ctx, tok);
    if (!tv) return false;
    bool root_end = is_root_end_wy(*tv);
    if (root_end) return all_zero(tv->z) && tv->a == '0';
    if (all_zero(tv->z)) return true;
    return tv->a == '0' && is_initial_part(ctx, *tv) && bits_value(tv->z) <= guess_value(ctx, *tv);
}

namespace {

// First undefined (z, a) suffix at or after (z0, a0) for a fixed w.y part;
// nullopt when the suffix space is exhausted.
std::optional<std::pair<Word, char>> first_undef_suffix(const TmContext& ctx, const TokenView& tv,
                                                        Word z0, char a0) {
    const size_t t = tv.z.size();
    const Word zeros(t, '0');
    auto bump = [&](Word& z, char& a) -> bool {
        if (a == '0') {
            a = '1';
            return true;
        }
        auto zn = lex_increment(z);
        if (!zn) return false;
        z = *zn;
        a = '0';
        return true;
    };
    if (is_root_end_wy(tv)) {
        // only the a=0 spin-free token is defined here
        if (z0 == zeros && a0 == '0') a0 = '1';
        return std::pair<Word, char>{z0, a0};
    }
    bool initial = is_initial_part(ctx, tv);
    uint64_t target = initial ? guess_value(ctx, tv) : 0;
    Word z = std::move(z0);
    char a = a0;
    while (true) {
        if (z == zeros) {  // both directions defined on a zero spin counter
            if (!bump(z, a)) return std::nullopt;
            continue;
        }
        if (initial && a == '0' && bits_value(z) <= target) {
            a = '1';  // the a=1 twin of a live spin token is undefined
            continue;
        }
        return std::pair<Word, char>{z, a};
    }
}

Word assemble(const TokenView& tv, const Word& wy, const Word& z, char a) {
    return tv.x + wy + z + a;
}

}  // namespace

std::optional<Word> next_undefined(const TmContext& ctx, const Word& tok) {
    auto tv = token_view(ctx, tok);
    if (!tv) throw validation_error("next_undefined: malformed token");
    const size_t t = tv->z.size();
    Word wy = tv->w + tv->y;
    // starting suffix: strictly after (z, a)
    Word z = tv->z;
    char a = tv->a;
    bool carry = false;
    if (a == '0') {
        a = '1';
    } else if (auto zn = lex_increment(z)) {
        z = *zn;
        a = '0';
    } else {
        carry = true;
    }
    while (true) {
        if (!carry) {
            TokenView probe = *tv;
            probe.w = wy.substr(0, tv->w.size());
            probe.y = wy.substr(tv->w.size());
            if (auto suf = first_undef_suffix(ctx, probe, z, a))
                return assemble(probe, wy, suf->first, suf->second);
        }
        auto wn = lex_increment(wy);
        if (!wn) return std::nullopt;
        wy = *wn;
        z = Word(t, '0');
        a = '0';
        carry = false;
    }
}

Word SpaceOrderBundle::tour_start(const Word& x) const {
    uint64_t n = x.size();
    uint64_t st = 2 * ctx->enc.s(n) + ctx->enc.t(n);
    return x + Word(st - 1, '1') + Word(ctx->enc.t(n) + 2, '0');
}

Word SpaceOrderBundle::tour_end(const Word& x) const {
    uint64_t n = x.size();
    uint64_t st = 2 * ctx->enc.s(n) + ctx->enc.t(n);
    return x + Word(st - 1, '1') + "0" + Word(ctx->enc.t(n), '0') + "1";
}

namespace {

struct TourCache {
    std::mutex mu;
    std::map<Word, std::shared_ptr<std::unordered_map<Word, uint64_t>>> by_input;
};

std::shared_ptr<std::unordered_map<Word, uint64_t>> tour_positions(
    const std::shared_ptr<TmContext>& ctx, const std::shared_ptr<TourCache>& cache,
    const SpaceOrderBundle& bundle, const Word& x) {
    {
        std::lock_guard<std::mutex> lock(cache->mu);
        auto it = cache->by_input.find(x);
        if (it != cache->by_input.end()) return it->second;
    }
    auto pos = std::make_shared<std::unordered_map<Word, uint64_t>>();
    Word cur = bundle.tour_start(x);
    uint64_t i = 0;
    while (true) {
        pos->emplace(cur, i++);
        auto nx = d_step(*ctx, cur);
        if (!nx) break;
        cur = std::move(*nx);
    }
    std::lock_guard<std::mutex> lock(cache->mu);
    cache->by_input[x] = pos;
    return pos;
}

// first leftover token of the block of x, skipping the tour's final token
std::optional<Word> first_leftover(const TmContext& ctx, const SpaceOrderBundle& bundle,
                                   const Word& x) {
    uint64_t n = x.size();
    Word bottom = x + Word(2 * (ctx.enc.s(n) + ctx.enc.t(n)) + 1, '0');
    std::optional<Word> cand =
        d_step(ctx, bottom) ? next_undefined(ctx, bottom) : std::optional<Word>(bottom);
    if (cand && *cand == bundle.tour_end(x)) cand = next_undefined(ctx, *cand);
    return cand;
}

}  // namespace

SpaceOrderBundle build_space_order(RestrictedTM tm) {
    SpaceOrderBundle bundle;
    bundle.ctx = std::make_shared<TmContext>(make_context(std::move(tm)));
    auto ctx = bundle.ctx;
    auto cache = std::make_shared<TourCache>();

    bundle.b = [ctx](const Word& x) {
        uint64_t n = x.size();
        return x + Word(2 * ctx->enc.s(n) + ctx->enc.t(n), '1') + Word(ctx->enc.t(n) + 1, '0');
    };
    bundle.t = [ctx](const Word& x) {
        uint64_t n = x.size();
        return x + Word(2 * ctx->enc.s(n) + ctx->enc.t(n), '1') + Word(ctx->enc.t(n), '0') + "1";
    };
    bundle.b_prime = [ctx](const Word& x) {
        uint64_t n = x.size();
        Word guess = ctx->codec.theta(ctx->tm.sym_one) + Word(ctx->enc.t(n) - ctx->enc.m, '0');
        return initial_eid(*ctx, x) + guess + Word(ctx->enc.t(n) + 1, '0');
    };

    POrder order;
    order.length_bound = Poly::identity();
    order.is_total = true;
    order.min_element = Word{};

    order.successor = [ctx, bundleCopy = bundle](const Word& v) -> std::optional<Word> {
        auto tv = token_view(*ctx, v);
        Word next_pos;
        if (tv) {
            if (auto nx = d_step(*ctx, v)) return nx;
            if (v == bundleCopy.tour_end(tv->x)) return first_leftover(*ctx, bundleCopy, tv->x);
            if (auto nu_ = next_undefined(*ctx, v)) {
                if (*nu_ == bundleCopy.tour_end(tv->x)) return next_undefined(*ctx, *nu_);
                return nu_;
            }
            next_pos = shortlex_successor(tv->x + Word(v.size() - tv->x.size(), '1'));
        } else {
            next_pos = shortlex_successor(v);
        }
        if (auto pn = token_view(*ctx, next_pos)) return bundleCopy.tour_start(pn->x);
        return next_pos;
    };
    auto succ = order.successor;
    order.precedes = [succ](const Word& a, const Word& b) {
        auto s = succ(a);
        return s && *s == b;
    };
    order.leq = [ctx, cache, bundleCopy = bundle](const Word& a, const Word& b) {
        if (a == b) return true;
        auto ta = token_view(*ctx, a), tb = token_view(*ctx, b);
        if (ta && tb && ta->x == tb->x) {
            auto pos = tour_positions(ctx, cache, bundleCopy, ta->x);
            auto ia = pos->find(a), ib = pos->find(b);
            bool on_tour_a = ia != pos->end(), on_tour_b = ib != pos->end();
            if (on_tour_a && on_tour_b) return ia->second <= ib->second;
            if (on_tour_a != on_tour_b) return on_tour_a;  // tour before leftovers
            return a < b;                                  // leftovers in lex order
        }
        return shortlex_less(a, b);
    };
    bundle.order = order;
    return bundle;
}

uint64_t fpspace_interval_size(const SpaceOrderBundle& bundle, const Word& x) {
    uint64_t n = x.size();
    uint64_t budget =
        (uint64_t{4} << (2 * bundle.ctx->enc.s(n))) + (uint64_t{2} << bundle.ctx->enc.t(n)) + 16;
    IntervalSpec spec{bundle.order, bundle.b, bundle.t};
    auto ctx = bundle.ctx;
    return interval_size_by_walk(
        spec, x, [ctx](const Word& v) { return d_step(*ctx, v); }, budget);
}

bool singleton_flag(const SpaceOrderBundle& bundle, const Word& x) {
    const Word target = bundle.t(x);
    Word cur = bundle.b_prime(x);
    uint64_t n = x.size();
    uint64_t budget =
        (uint64_t{4} << (2 * bundle.ctx->enc.s(n))) + (uint64_t{2} << bundle.ctx->enc.t(n)) + 16;
    uint64_t between = 0;
    while (budget--) {
        auto nx = d_step(*bundle.ctx, cur);
        if (!nx) return false;  // tour ended without meeting t(x)
        cur = std::move(*nx);
        if (cur == target) return between > 0;
        ++between;
    }
    throw budget_error("singleton_flag: walk budget exhausted");
}

}  // namespace porder
