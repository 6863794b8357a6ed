#include "porder/tm.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace porder {

uint64_t EncodingParams::r(uint64_t n) const {
    uint64_t p = space.eval(n);
    if (p == 0) throw validation_error("EncodingParams: space bound is zero");
    uint64_t rr = 0;
    while ((uint64_t{1} << rr) < p) ++rr;
    return rr;
}

uint64_t EncodingParams::t(uint64_t n) const { return (uint64_t)m << r(n); }

uint64_t EncodingParams::s(uint64_t n) const { return m + r(n) + t(n); }

std::optional<uint64_t> EncodingParams::n_from_eid_len(uint64_t len) const {
    for (uint64_t n = 0; n <= len; ++n) {
        uint64_t el = eid_len(n);
        if (el == len) return n;
        if (el > len) break;
    }
    return std::nullopt;
}

std::vector<int> TmCodec::theta_hat_inv(const Word& w) const {
    if (w.size() % m != 0) throw validation_error("theta_hat_inv: ragged tape section");
    std::vector<int> out;
    out.reserve(w.size() / m);
    for (size_t i = 0; i < w.size(); i += m) out.push_back(code_symbol[bits_value(w.substr(i, m))]);
    return out;
}

Word TmCodec::theta_hat(const std::vector<int>& symbols) const {
    Word out;
    out.reserve(symbols.size() * m);
    for (int s : symbols) out += symbol_code[s];
    return out;
}

namespace {

TmCodec make_codec(const RestrictedTM& tm) {
    TmCodec c;
    c.m = tm.m;
    size_t count = size_t{1} << tm.m;
    c.state_code.assign(count, Word());
    c.symbol_code.assign(count, Word());
    c.code_state.assign(count, -1);
    c.code_symbol.assign(count, -1);

    auto assign = [&](std::vector<Word>& codes, std::vector<int>& inverse, int idx, uint64_t value) {
        codes[idx] = word_of(value, tm.m);
        inverse[value] = idx;
    };
    assign(c.state_code, c.code_state, tm.start, 0);
    assign(c.state_code, c.code_state, tm.final, count - 1);
    uint64_t next = 1;
    for (size_t i = 0; i < count; ++i) {
        if ((int)i == tm.start || (int)i == tm.final) continue;
        while (c.code_state[next] != -1) ++next;
        assign(c.state_code, c.code_state, (int)i, next);
    }

    assign(c.symbol_code, c.code_symbol, tm.sym_blank, 0);
    assign(c.symbol_code, c.code_symbol, tm.sym_zero, count - 2);
    assign(c.symbol_code, c.code_symbol, tm.sym_one, count - 1);
    next = 1;
    for (size_t i = 0; i < count; ++i) {
        if ((int)i == tm.sym_blank || (int)i == tm.sym_zero || (int)i == tm.sym_one) continue;
        while (c.code_symbol[next] != -1) ++next;
        assign(c.symbol_code, c.code_symbol, (int)i, next);
    }
    return c;
}

void validate_tm(const RestrictedTM& tm) {
    auto fail = [](const std::string& what) { throw validation_error("tm: " + what); };
    if (tm.m < 2) fail("m must be at least 2");
    size_t count = size_t{1} << tm.m;
    if (tm.state_names.size() != count) fail("state count is not 2^m");
    if (tm.symbol_names.size() != count) fail("symbol count is not 2^m");
    if (tm.start == tm.final) fail("start state equals final state");
    if (tm.space.eval(0) == 0) fail("space bound not positive");
    if (!tm.space.nondecreasing()) fail("space bound not nondecreasing");
    if (tm.delta.size() != count) fail("delta table ragged");
    for (size_t q = 0; q < count; ++q) {
        if (tm.delta[q].size() != count) fail("delta table ragged");
        for (size_t r = 0; r < count; ++r) {
            const auto& a = tm.delta[q][r];
            if ((int)q == tm.final) {
                if (a) fail("delta defined on the final state");
                continue;
            }
            if (!a) fail("delta undefined on a non-final state");
            if (a->state == tm.start) fail("delta moves into the start state");
            if (a->state < 0 || a->state >= (int)count) fail("delta target state out of range");
            if (a->symbol < 0 || a->symbol >= (int)count) fail("delta written symbol out of range");
            if (a->move != -1 && a->move != 1) fail("delta move not L or R");
        }
    }
}

}  // namespace

TmContext make_context(RestrictedTM tm) {
    validate_tm(tm);
    TmContext ctx;
    ctx.enc.m = tm.m;
    ctx.enc.space = tm.space;
    ctx.codec = make_codec(tm);
    ctx.tm = std::move(tm);
    return ctx;
}

uint64_t nu_symbols(const TmContext& ctx, const std::vector<int>& symbols) {
    std::string chars;
    chars.reserve(symbols.size());
    for (int s : symbols) {
        if (s == ctx.tm.sym_zero) chars += '0';
        else if (s == ctx.tm.sym_one) chars += '1';
        else if (s == ctx.tm.sym_blank) chars += 'B';
        else chars += '?';
    }
    return nu(chars);
}

uint64_t nu(const std::string& z) {
    uint64_t value = 0;
    bool prefix_in_sigma = true;  // the part read so far lies in Sigma*
    for (char c : z) {
        if (c == '0' || c == '1') {
            value = prefix_in_sigma ? 2 * value + (c == '1') : 0;
        } else if (c == 'B') {
            prefix_in_sigma = false;  // value carries over unchanged
        } else {
            value = 0;
            prefix_in_sigma = false;
        }
    }
    return value;
}

std::optional<std::tuple<Word, Word, int>> delta_prime(const TmContext& ctx, const Word& q,
                                                       const Word& r) {
    int qi = ctx.codec.phi_inv(q);
    if (qi == ctx.tm.final) return std::nullopt;
    int ri = ctx.codec.theta_inv(r);
    const auto& a = ctx.tm.delta[qi][ri];
    if (!a) throw validation_error("delta_prime: table hole on a non-final state");
    return std::tuple<Word, Word, int>{ctx.codec.phi(a->state), ctx.codec.theta(a->symbol),
                                       a->move};
}

Word initial_eid(const TmContext& ctx, const Word& x) {
    uint64_t n = x.size();
    uint64_t t = ctx.enc.t(n);
    if ((uint64_t)ctx.enc.m * n > t)
        throw width_error("initial_eid: input does not fit the encoded tape");
    Word tape;
    tape.reserve(t);
    for (char c : x) tape += ctx.codec.theta(c == '1' ? ctx.tm.sym_one : ctx.tm.sym_zero);
    tape += Word(t - tape.size(), '0');  // encoded blanks
    return x + Word(ctx.enc.m, '0') + Word(ctx.enc.s(n), '0') + Word(ctx.enc.r(n), '0') + tape;
}

std::optional<EidView> eid_view(const TmContext& ctx, const Word& v) {
    if (!is_bits(v)) return std::nullopt;
    auto n = ctx.enc.n_from_eid_len(v.size());
    if (!n) return std::nullopt;
    EidView view;
    view.n = *n;
    uint64_t m = ctx.enc.m, s = ctx.enc.s(*n), r = ctx.enc.r(*n), t = ctx.enc.t(*n);
    size_t pos = *n;
    view.x = v.substr(0, pos);
    view.q = v.substr(pos, m);
    view.c = v.substr(pos + m, s);
    view.w = v.substr(pos + m + s, r);
    view.tape = v.substr(pos + m + s + r, t);
    return view;
}

bool is_eid(const TmContext& ctx, const Word& v) { return eid_view(ctx, v).has_value(); }

std::optional<std::pair<Word, MuCase>> mu_traced(const TmContext& ctx, const Word& v) {
    auto view = eid_view(ctx, v);
    if (!view) return std::nullopt;
    const Word final_code(ctx.enc.m, '1');
    if (view->q == final_code) return std::nullopt;

    uint64_t r = ctx.enc.r(view->n);
    uint64_t head = bits_value(view->w);
    size_t m = ctx.enc.m;
    Word cell = view->tape.substr(head * m, m);
    auto act = delta_prime(ctx, view->q, cell);
    // act is always defined here: only the final code lacks moves.
    const auto& [q2, y2, move] = *act;
    bool clock_ok = view->c.find('0') != Word::npos;
    int64_t new_head = (int64_t)head + move;
    bool head_ok = new_head >= 0 && new_head < (int64_t)(uint64_t{1} << r);

    Word out = v;
    size_t base = view->x.size();
    if (clock_ok && head_ok) {
        std::copy(q2.begin(), q2.end(), out.begin() + base);
        Word c2 = *lex_increment(view->c);
        std::copy(c2.begin(), c2.end(), out.begin() + base + m);
        Word w2 = word_of((uint64_t)new_head, view->w.size());
        std::copy(w2.begin(), w2.end(), out.begin() + base + m + view->c.size());
        size_t tape_at = base + m + view->c.size() + view->w.size();
        std::copy(y2.begin(), y2.end(), out.begin() + tape_at + head * m);
        return std::pair<Word, MuCase>{std::move(out), MuCase::table_move};
    }
    std::copy(final_code.begin(), final_code.end(), out.begin() + base);
    return std::pair<Word, MuCase>{std::move(out), MuCase::forced_final};
}

std::optional<Word> mu(const TmContext& ctx, const Word& v) {
    auto traced = mu_traced(ctx, v);
    if (!traced) return std::nullopt;
    return std::move(traced->first);
}

std::vector<Word> mu_preimages(const TmContext& ctx, const Word& z) {
    std::vector<Word> out;
    auto view = eid_view(ctx, z);
    if (!view) return out;
    const size_t m = ctx.enc.m;
    const size_t count = size_t{1} << m;
    const size_t base = view->x.size();
    const size_t tape_at = base + m + view->c.size() + view->w.size();
    const uint64_t head_cells = uint64_t{1} << ctx.enc.r(view->n);
    const Word final_code(m, '1');

    // Table-move preimages: scan the finite table for entries landing on the
    // state of z with a consistent write under the head shift.
    int qz = ctx.codec.phi_inv(view->q);
    uint64_t head = bits_value(view->w);
    uint64_t clock = bits_value(view->c);
    if (clock >= 1) {
        for (size_t q = 0; q < count; ++q) {
            if ((int)q == ctx.tm.final) continue;
            for (size_t r = 0; r < count; ++r) {
                const auto& a = ctx.tm.delta[q][r];
                if (!a || a->state != qz) continue;
                int64_t prev_head = (int64_t)head - a->move;
                if (prev_head < 0 || prev_head >= (int64_t)head_cells) continue;
                Word written = ctx.codec.theta(a->symbol);
                if (z.compare(tape_at + prev_head * m, m, written) != 0) continue;
                Word y = z;
                Word qc = ctx.codec.phi((int)q);
                std::copy(qc.begin(), qc.end(), y.begin() + base);
                Word cprev = word_of(clock - 1, view->c.size());
                std::copy(cprev.begin(), cprev.end(), y.begin() + base + m);
                Word wprev = word_of((uint64_t)prev_head, view->w.size());
                std::copy(wprev.begin(), wprev.end(), y.begin() + base + m + view->c.size());
                Word rcode = ctx.codec.theta((int)r);
                std::copy(rcode.begin(), rcode.end(), y.begin() + tape_at + prev_head * m);
                out.push_back(std::move(y));
            }
        }
    }

    // Forced-final preimages: every non-final state variant whose table move
    // would have been blocked by the clock or the tape edge.
    if (view->q == final_code) {
        bool clock_ok = view->c.find('0') != Word::npos;
        Word cell = view->tape.substr(head * m, m);
        for (size_t q = 0; q + 1 < count; ++q) {  // final code is the last value
            Word qc = word_of(q, m);
            auto act = delta_prime(ctx, qc, cell);
            int64_t new_head = (int64_t)head + std::get<2>(*act);
            bool head_ok = new_head >= 0 && new_head < (int64_t)head_cells;
            if (clock_ok && head_ok) continue;
            Word y = z;
            std::copy(qc.begin(), qc.end(), y.begin() + base);
            out.push_back(std::move(y));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

RunResult run_tm(const TmContext& ctx, const Word& x) {
    Word cur = initial_eid(ctx, x);
    const Word final_code(ctx.enc.m, '1');
    RunResult res;
    uint64_t budget = (uint64_t{1} << ctx.enc.s(x.size())) + 2;
    while (true) {
        auto view = eid_view(ctx, cur);
        if (view->q == final_code) {
            res.value = nu_symbols(ctx, ctx.codec.theta_hat_inv(view->tape));
            return res;
        }
        auto traced = mu_traced(ctx, cur);
        if (!traced) throw error("run_tm: step undefined before the final state");
        if (traced->second == MuCase::forced_final)
            throw error("run_tm: model violation, clock or tape bound hit on a true run");
        cur = std::move(traced->first);
        if (++res.steps > budget) throw error("run_tm: step budget exceeded");
    }
}

namespace {

std::vector<std::string> split_list(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, sep)) {
        size_t a = item.find_first_not_of(" \t");
        size_t b = item.find_last_not_of(" \t");
        out.push_back(a == std::string::npos ? std::string{} : item.substr(a, b - a + 1));
    }
    return out;
}

}  // namespace

RestrictedTM load_tm(const std::string& text) {
    auto fail = [](const std::string& what) { throw validation_error("tm spec: " + what); };
    std::map<std::string, std::string> scalars;
    std::vector<std::string> delta_lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                fail("line without '=': " + line);
            continue;
        }
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key == "delta") delta_lines.push_back(value);
        else if (!scalars.emplace(key, value).second) fail("duplicate key " + key);
    }
    for (const char* key : {"m", "states", "symbols", "start", "final", "space_poly"})
        if (!scalars.count(key)) fail(std::string("missing key ") + key);

    RestrictedTM tm;
    tm.m = std::stoi(scalars["m"]);
    if (tm.m < 2 || tm.m > 8) fail("m out of range");
    tm.state_names = split_list(scalars["states"], ',');
    tm.symbol_names = split_list(scalars["symbols"], ',');

    auto index_of = [&fail](const std::vector<std::string>& names, const std::string& name,
                            const char* what) {
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) fail(std::string("unknown ") + what + " " + name);
        return (int)(it - names.begin());
    };
    tm.start = index_of(tm.state_names, scalars["start"], "state");
    tm.final = index_of(tm.state_names, scalars["final"], "state");
    tm.sym_blank = index_of(tm.symbol_names, "B", "symbol");
    tm.sym_zero = index_of(tm.symbol_names, "0", "symbol");
    tm.sym_one = index_of(tm.symbol_names, "1", "symbol");

    std::vector<uint64_t> coeffs;
    for (const auto& c : split_list(scalars["space_poly"], ',')) coeffs.push_back(std::stoull(c));
    tm.space = Poly(coeffs, scalars.count("space_floor") ? std::stoull(scalars["space_floor"]) : 0);

    size_t count = size_t{1} << tm.m;
    tm.delta.assign(count, std::vector<std::optional<RestrictedTM::Action>>(count));
    for (const auto& dl : delta_lines) {
        size_t arrow = dl.find("->");
        if (arrow == std::string::npos) fail("delta line without '->': " + dl);
        auto lhs = split_list(dl.substr(0, arrow), ',');
        auto rhs = split_list(dl.substr(arrow + 2), ',');
        if (lhs.size() != 2 || rhs.size() != 3) fail("malformed delta line: " + dl);
        int q = index_of(tm.state_names, lhs[0], "state");
        int r = index_of(tm.symbol_names, lhs[1], "symbol");
        RestrictedTM::Action a;
        a.state = index_of(tm.state_names, rhs[0], "state");
        a.symbol = index_of(tm.symbol_names, rhs[1], "symbol");
        if (rhs[2] == "L") a.move = -1;
        else if (rhs[2] == "R") a.move = +1;
        else fail("bad move in delta line: " + dl);
        if (tm.delta[q][r]) fail("duplicate delta entry: " + dl);
        tm.delta[q][r] = a;
    }
    validate_tm(tm);  // names every remaining structural violation
    return tm;
}

RestrictedTM load_tm_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("tm spec: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_tm(buf.str());
}

RestrictedTM toy_ones_tm() {
    // Two worker states; E marks cell 0 while the second cell is inspected.
    // Dummy entries for pairs no true run reaches loop in place; the clock
    // cuts them off.
    static const char* text = R"(
m = 2
states = q0,q1,q2,qf
symbols = B,0,1,E
start = q0
final = qf
space_poly = 0,1
space_floor = 2
delta = q0,B -> qf,0,R
delta = q0,0 -> q2,E,R
delta = q0,1 -> q1,1,R
delta = q0,E -> q1,E,L
delta = q1,B -> qf,B,L
delta = q1,0 -> qf,B,L
delta = q1,1 -> qf,0,L
delta = q1,E -> qf,0,R
delta = q2,B -> q1,B,L
delta = q2,0 -> q1,B,L
delta = q2,1 -> q2,B,L
delta = q2,E -> qf,1,R
)";
    return load_tm(text);
}

}  // namespace porder
