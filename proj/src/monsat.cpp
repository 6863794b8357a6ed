#include "porder/monsat.hpp"

#include <algorithm>

namespace porder {

namespace {

using Node = MonotoneFormula::Node;

struct Parser {
    const std::string& text;
    size_t pos = 0;
    uint32_t max_var = 0;

    explicit Parser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
                                     text[pos] == '\r'))
            ++pos;
    }

    [[noreturn]] void fail(const std::string& what) { throw ParseError(what, pos); }

    char peek() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        return text[pos];
    }

    std::unique_ptr<Node> parse_formula() {
        char c = peek();
        if (c == '!' || c == '~' || c == '-') fail("negation is not monotone syntax");
        if (c == '0' || c == '1') fail("constants are not monotone syntax");
        if (c == 'x') return parse_var();
        if (c != '(') fail("expected variable or '('");
        ++pos;
        auto left = parse_formula();
        char op = peek();
        if (op != '&' && op != '|') fail("expected '&' or '|'");
        ++pos;
        auto right = parse_formula();
        if (peek() != ')') fail("expected ')'");
        ++pos;
        auto node = std::make_unique<Node>();
        node->kind = op == '&' ? Node::Kind::and_ : Node::Kind::or_;
        node->left = std::move(left);
        node->right = std::move(right);
        return node;
    }

    std::unique_ptr<Node> parse_var() {
        ++pos;  // past 'x'
        if (pos >= text.size() || text[pos] < '1' || text[pos] > '9')
            fail("variable index must start with a nonzero digit");
        uint64_t idx = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            idx = idx * 10 + (text[pos] - '0');
            if (idx > 1'000'000) fail("variable index too large");
            ++pos;
        }
        auto node = std::make_unique<Node>();
        node->kind = Node::Kind::var;
        node->var = (uint32_t)idx;
        max_var = std::max(max_var, node->var);
        return node;
    }
};

void print_node(const Node& node, std::string& out) {
    switch (node.kind) {
        case Node::Kind::var:
            out += 'x';
            out += std::to_string(node.var);
            break;
        case Node::Kind::and_:
        case Node::Kind::or_:
            out += '(';
            print_node(*node.left, out);
            out += node.kind == Node::Kind::and_ ? '&' : '|';
            print_node(*node.right, out);
            out += ')';
            break;
    }
}

int eval_node(const Node& node, const Assignment& a) {
    switch (node.kind) {
        case Node::Kind::var:
            return a[node.var - 1] == '1';
        case Node::Kind::and_:
            return eval_node(*node.left, a) & eval_node(*node.right, a);
        case Node::Kind::or_:
            return eval_node(*node.left, a) | eval_node(*node.right, a);
    }
    return 0;
}

}  // namespace

std::string MonotoneFormula::canonical_text() const {
    std::string out;
    print_node(*root, out);
    return out;
}

MonotoneFormula parse_formula(const std::string& text) {
    Parser p(text);
    MonotoneFormula f;
    f.root = p.parse_formula();
    p.skip_ws();
    if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
    f.arity = p.max_var;
    return f;
}

int eval_formula(const MonotoneFormula& f, const Assignment& a, uint64_t* counter) {
    if (a.size() != f.arity) throw validation_error("eval_formula: arity mismatch");
    if (counter) ++*counter;
    return eval_node(*f.root, a);
}

std::optional<Assignment> next_assignment(const BoolFn& f, uint32_t n, const Assignment& a,
                                          int r) {
    if (n == 0 || a.size() != n) throw validation_error("next_assignment: arity mismatch");
    const char fill = r ? '1' : '0';
    Word b = a;
    if ((b == Word(n, '1') && f(b) != r) || f(Word(n, fill)) != r) return std::nullopt;
    auto padded = [&](const Word& prefix) { return prefix + Word(n - prefix.size(), fill); };
    while (!b.empty() && f(padded(b)) != r) {
        auto nx = lex_increment(b);
        b = nx ? *nx : Word(b.size(), '0');
        size_t one = b.find_last_of('1');
        b = one == Word::npos ? Word{} : b.substr(0, one + 1);
    }
    if (b.empty()) return std::nullopt;  // climbed past the root: nothing at or above a
    while (b.size() < n) {
        Word cand = b + '0' + Word(n - b.size() - 1, fill);
        b += f(cand) == r ? '0' : '1';
    }
    return b;
}

std::optional<Assignment> next_assignment(const MonotoneFormula& f, const Assignment& a, int r,
                                          uint64_t* query_counter) {
    return next_assignment(
        [&](const Assignment& b) { return eval_formula(f, b, query_counter); }, f.arity, a, r);
}

uint64_t count_monsat_bruteforce(const MonotoneFormula& f) {
    uint64_t count = 0;
    for_each_word_of_length(f.arity, [&](const Word& a) {
        if (eval_formula(f, a)) ++count;
    });
    return count;
}

uint64_t count_monsat_text(const std::string& text) {
    try {
        return count_monsat_bruteforce(parse_formula(text));
    } catch (const ParseError&) {
        return 0;
    }
}

Word formula_bits(const MonotoneFormula& f) {
    std::string text = f.canonical_text();
    Word bits;
    bits.reserve(text.size() * 8);
    for (unsigned char c : text)
        for (int i = 7; i >= 0; --i) bits += ((c >> i) & 1) ? '1' : '0';
    return bits;
}

namespace {

struct BlockKey {
    size_t k = 0;   // bit length of the formula segment
    Word fbits;     // formula text as bits
    int tag = 0;    // 0..4
    Word y;         // assignment section
};

std::optional<std::string> bits_to_text(const Word& bits) {
    if (bits.size() % 8 != 0) return std::nullopt;
    std::string text;
    text.reserve(bits.size() / 8);
    for (size_t i = 0; i < bits.size(); i += 8) {
        unsigned c = (unsigned)bits_value(std::string_view(bits).substr(i, 8));
        if (c < 0x20 || c > 0x7e) return std::nullopt;
        text += (char)c;
    }
    return text;
}

// Full structural + semantic membership check; returns the key only when the
// formula segment round-trips through the parser canonically.
std::optional<BlockKey> decode_block(const Word& v,
                                     const std::shared_ptr<const MonotoneFormula>& hint,
                                     const Word& hint_bits,
                                     std::shared_ptr<const MonotoneFormula>* formula_out) {
    size_t k = 0;
    while (k < v.size() && v[k] == '1') ++k;
    if (k == 0 || k % 8 != 0) return std::nullopt;
    if (v.size() < 2 * k + 5) return std::nullopt;
    if (v[k] != '0') return std::nullopt;
    size_t n = v.size() - 2 * k - 4;
    BlockKey key;
    key.k = k;
    key.fbits = v.substr(k + 1, k);
    uint64_t tag = bits_value(std::string_view(v).substr(2 * k + 1, 3));
    if (tag > 4) return std::nullopt;
    key.tag = (int)tag;
    key.y = v.substr(2 * k + 4);

    std::shared_ptr<const MonotoneFormula> formula;
    if (hint && key.fbits == hint_bits) {
        formula = hint;
    } else {
        auto text = bits_to_text(key.fbits);
        if (!text) return std::nullopt;
        try {
            auto parsed = std::make_shared<MonotoneFormula>(parse_formula(*text));
            if (parsed->canonical_text() != *text) return std::nullopt;
            formula = std::move(parsed);
        } catch (const ParseError&) {
            return std::nullopt;
        }
    }
    if (formula->arity != n) return std::nullopt;
    if (formula_out) *formula_out = formula;
    return key;
}

// Group of a block word: the five tag groups in order, then the appendix
// holding the 001-tagged unsatisfying and 011-tagged satisfying words.
int group_of(const MonotoneFormula& f, const BlockKey& key) {
    bool sat = eval_formula(f, key.y) == 1;
    switch (key.tag) {
        case 0: return 0;
        case 1: return sat ? 1 : 5;
        case 2: return 2;
        case 3: return sat ? 5 : 3;
        default: return 4;
    }
}

Word assemble_block_word(const BlockKey& key, int tag, const Word& y) {
    return Word(key.k, '1') + "0" + key.fbits + word_of(tag, 3) + y;
}

}  // namespace

OrderTriple build_monsat_order(const MonotoneFormula& f) {
    auto hint = std::make_shared<const MonotoneFormula>(parse_formula(f.canonical_text()));
    Word hint_bits = formula_bits(*hint);
    const uint32_t n = hint->arity;

    auto leq = [hint, hint_bits](const Word& a, const Word& b) {
        if (a == b) return true;
        std::shared_ptr<const MonotoneFormula> fa, fb;
        auto ka = decode_block(a, hint, hint_bits, &fa);
        auto kb = decode_block(b, hint, hint_bits, &fb);
        if (ka && kb && ka->fbits == kb->fbits) {
            int ga = group_of(*fa, *ka), gb = group_of(*fb, *kb);
            if (ga != gb) return ga < gb;
            if (ka->tag != kb->tag) return ka->tag < kb->tag;  // appendix mixes two tags
            return ka->y < kb->y;
        }
        return shortlex_less(a, b);
    };

    auto successor = [hint, hint_bits](const Word& v) -> std::optional<Word> {
        std::shared_ptr<const MonotoneFormula> formula;
        auto key = decode_block(v, hint, hint_bits, &formula);
        Word next_pos;
        if (key) {
            const auto& fml = *formula;
            const uint32_t arity = fml.arity;
            const Word ones(arity, '1'), zeros(arity, '0');
            auto first_with = [&](int r) { return *next_assignment(fml, zeros, r); };
            auto step_within = [&](int r) -> std::optional<Word> {
                if (key->y == ones) return std::nullopt;
                auto bumped = *lex_increment(key->y);
                return next_assignment(fml, bumped, r);
            };
            int group = group_of(fml, *key);
            std::optional<Word> nx;
            switch (group) {
                case 0:
                    nx = key->y == ones ? assemble_block_word(*key, 1, first_with(1))
                                        : assemble_block_word(*key, 0, *lex_increment(key->y));
                    break;
                case 1:
                    if (auto s = step_within(1)) nx = assemble_block_word(*key, 1, *s);
                    else nx = assemble_block_word(*key, 2, zeros);
                    break;
                case 2:
                    nx = key->y == ones ? assemble_block_word(*key, 3, first_with(0))
                                        : assemble_block_word(*key, 2, *lex_increment(key->y));
                    break;
                case 3:
                    if (auto s = step_within(0)) nx = assemble_block_word(*key, 3, *s);
                    else nx = assemble_block_word(*key, 4, zeros);
                    break;
                case 4:
                    nx = key->y == ones ? assemble_block_word(*key, 1, first_with(0))
                                        : assemble_block_word(*key, 4, *lex_increment(key->y));
                    break;
                default:  // appendix
                    if (key->tag == 1) {
                        if (auto s = step_within(0)) nx = assemble_block_word(*key, 1, *s);
                        else nx = assemble_block_word(*key, 3, first_with(1));
                    } else {
                        if (auto s = step_within(1)) nx = assemble_block_word(*key, 3, *s);
                        else nx = std::nullopt;  // block maximum: 011-tagged all-ones
                    }
                    break;
            }
            if (nx) return nx;
            next_pos = shortlex_successor(assemble_block_word(*key, 4, ones));
        } else {
            next_pos = shortlex_successor(v);
        }
        std::shared_ptr<const MonotoneFormula> fn;
        if (auto kn = decode_block(next_pos, hint, hint_bits, &fn))
            return assemble_block_word(*kn, 0, Word(fn->arity, '0'));
        return next_pos;
    };

    POrder order;
    order.leq = leq;
    order.successor = successor;
    order.precedes = [successor](const Word& a, const Word& b) {
        auto s = successor(a);
        return s && *s == b;
    };
    order.length_bound = Poly::identity();
    order.is_total = true;
    order.min_element = Word{};

    const size_t k = hint_bits.size();
    Word prefix = Word(k, '1') + "0" + hint_bits;
    OrderTriple triple;
    triple.spec.order = order;
    triple.spec.b = [prefix, n](const Word&) { return prefix + "000" + Word(n, '1'); };
    triple.spec.t = [prefix, n](const Word&) { return prefix + "010" + Word(n, '0'); };
    triple.target = "satisfying assignments of " + hint->canonical_text();
    triple.t_len_bound = Poly::constant(2 * k + 4 + n);
    triple.block_universe = [prefix, n](const Word&) {
        std::vector<Word> out;
        out.reserve(5u << n);
        for (int tag = 0; tag <= 4; ++tag)
            for_each_word_of_length(n, [&](const Word& y) {
                out.push_back(prefix + word_of(tag, 3) + y);
            });
        return out;
    };
    return triple;
}

uint64_t count_monsat_interval(const MonotoneFormula& f) {
    OrderTriple triple = build_monsat_order(f);
    uint64_t budget = (uint64_t{8} << f.arity) + 16;
    return interval_size_by_walk(triple.spec, Word{}, budget);
}

}  // namespace porder
