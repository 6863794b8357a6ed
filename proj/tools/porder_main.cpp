#include <chrono>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "porder/catalog.hpp"
#include "porder/cluster.hpp"
#include "porder/constructions.hpp"
#include "porder/divisors.hpp"
#include "porder/monsat.hpp"
#include "porder/tm.hpp"
#include "porder/traversal.hpp"

using namespace porder;

namespace {

struct ReportEntry {
    std::string name;
    std::string computed;
    std::string oracle;  // empty when there is nothing to compare against
    bool match = true;
};

struct RunReport {
    std::string subcommand;
    std::string instance;
    std::vector<ReportEntry> entries;
    std::vector<std::string> notes;
    double elapsed_ms = 0;

    void add(const std::string& name, const std::string& computed, const std::string& oracle) {
        entries.push_back({name, computed, oracle, computed == oracle});
    }
    void add_value(const std::string& name, const std::string& computed) {
        entries.push_back({name, computed, "", true});
    }
    template <typename A, typename B>
    void add(const std::string& name, A computed, B oracle) {
        add(name, std::to_string(computed), std::to_string(oracle));
    }
    bool ok() const {
        for (const auto& e : entries)
            if (!e.match) return false;
        return true;
    }
};

bool g_json = false;
bool g_timing = false;

int emit(const RunReport& report) {
    if (g_json) {
        nlohmann::json j;
        j["subcommand"] = report.subcommand;
        j["instance"] = report.instance;
        j["ok"] = report.ok();
        j["results"] = nlohmann::json::array();
        for (const auto& e : report.entries) {
            nlohmann::json r{{"name", e.name}, {"computed", e.computed}, {"match", e.match}};
            if (!e.oracle.empty()) r["oracle"] = e.oracle;
            j["results"].push_back(r);
        }
        j["notes"] = report.notes;
        if (g_timing) j["elapsed_ms"] = report.elapsed_ms;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << report.subcommand;
        if (!report.instance.empty()) std::cout << " [" << report.instance << "]";
        std::cout << "\n";
        for (const auto& e : report.entries) {
            std::cout << "  " << e.name << ": computed=" << e.computed;
            if (!e.oracle.empty())
                std::cout << " oracle=" << e.oracle << " match=" << (e.match ? "yes" : "NO");
            std::cout << "\n";
        }
        for (const auto& n : report.notes) std::cout << "  note: " << n << "\n";
        if (g_timing) std::cout << "  elapsed: " << report.elapsed_ms << " ms\n";
    }
    return report.ok() ? 0 : 1;
}

Word parse_word(const std::string& s) {
    if (s == "-" || s == "eps") return Word{};
    if (!is_bits(s)) throw validation_error("words are over {0,1}: " + s);
    return s;
}

uint64_t oracle_for_triple(const std::string& id, const OrderTriple&, const Word& x) {
    auto slash = id.find('/');
    std::string family = id.substr(0, slash), inst = id.substr(slash + 1);
    if (family == "sharp-p") return witness_count(witness_by_name(inst), x);
    if (family == "support") {
        if (inst == "divisor-witness") return witness_count(divisor_witness(), x);
        return witness_count(witness_by_name(inst), x);
    }
    if (family == "offset") {
        WitnessPredicate w = witness_by_name(inst);
        uint64_t p = w.p.eval(x.size());
        return witness_count(w, x) + (uint64_t{1} << p);
    }
    if (family == "offset-order") return 1 + 4;
    if (family == "fp" || family == "fp-order") {
        auto f = fp_by_name(family == "fp-order" ? "const3" : inst);
        return f.eval(x);
    }
    if (family == "upsv") {
        auto m = upsv_by_name(inst);
        return *m.path_output(x, m.accepting_path(x));
    }
    if (family == "increment") {
        if (inst == "prefix") return interval_size_bruteforce(shortlex_prefix_triple().spec, x) + 1;
        if (inst == "fp-len") return x.size() + 1;
        if (inst == "twice-prefix")
            return interval_size_bruteforce(shortlex_prefix_triple().spec, x) + 2;
    }
    if (family == "monsat") return count_monsat_bruteforce(parse_formula("(x1|x2)"));
    throw validation_error("no oracle for " + id);
}

int cmd_interval(const std::string& id, const Word& x, const std::string& mode, uint64_t budget) {
    RunReport report;
    report.subcommand = "interval";
    report.instance = id + " x=" + (x.empty() ? "eps" : x);
    OrderTriple triple = triple_by_id(id);
    uint64_t oracle = oracle_for_triple(id, triple, x);
    if (mode == "walk" || mode == "both") {
        uint64_t got = eval_triple(triple, x, EvalMode::walk, budget);
        report.add("interval-size/walk", got, oracle);
    }
    if (mode == "bruteforce" || mode == "both") {
        uint64_t got = eval_triple(triple, x, EvalMode::bruteforce, budget);
        report.add("interval-size/bruteforce", got, oracle);
    }
    report.notes.push_back("target: " + triple.target);
    return emit(report);
}

int cmd_monsat(const std::string& text, const std::string& mode, uint64_t) {
    RunReport report;
    report.subcommand = "monsat";
    report.instance = text;
    MonotoneFormula f;
    try {
        f = parse_formula(text);
    } catch (const ParseError& e) {
        report.add_value("count", "0");
        report.notes.push_back(std::string("not a monotone formula: ") + e.what());
        return emit(report);
    }
    uint64_t oracle = count_monsat_bruteforce(f);
    if (mode == "walk" || mode == "both")
        report.add("count/interval-walk", count_monsat_interval(f), oracle);
    if (mode == "bruteforce" || mode == "both")
        report.add("count/bruteforce", oracle, oracle);
    uint64_t queries = 0;
    auto least = next_assignment(f, Word(f.arity, '0'), 1, &queries);
    report.add_value("least-satisfying", least ? *least : "none");
    report.add_value("queries", std::to_string(queries));
    report.notes.push_back("query bound 2n+2 = " + std::to_string(2 * f.arity + 2));
    return emit(report);
}

int cmd_div(uint64_t m) {
    RunReport report;
    report.subcommand = "div";
    report.instance = std::to_string(m);
    uint64_t trial = count_divisors(m);
    report.add("divisors/trial-division", trial, trial);
    report.add("divisors/divisibility-interval", divcount_via_divisibility_interval(m), trial);
    if (m <= 4096) report.add("divisors/support-order", divcount_via_support_order(m), trial);
    else report.notes.push_back("support-order route skipped above 4096");
    report.add("is-prime", (uint64_t)is_prime(m), (uint64_t)(m >= 2 && trial == 0));
    return emit(report);
}

int cmd_tm_walk(const std::string& name, const std::string& file, const Word& x) {
    RunReport report;
    report.subcommand = "tm-walk";
    report.instance = (file.empty() ? name : file) + " x=" + (x.empty() ? "eps" : x);
    RestrictedTM tm = file.empty() ? (name == "ones2" ? toy_ones_tm() : throw validation_error(
                                                                            "unknown machine " + name))
                                   : load_tm_file(file);
    SpaceOrderBundle bundle = build_space_order(std::move(tm));
    uint64_t n = x.size();
    const auto& enc = bundle.ctx->enc;
    report.add_value("s", std::to_string(enc.s(n)));
    report.add_value("t", std::to_string(enc.t(n)));
    report.add_value("r", std::to_string(enc.r(n)));
    auto run = run_tm(*bundle.ctx, x);
    report.add_value("f(x)", std::to_string(run.value));
    report.add_value("steps", std::to_string(run.steps));
    uint64_t predicted = (uint64_t{2} << (2 * enc.s(n))) + run.value - 2;
    uint64_t walked = fpspace_interval_size(bundle, x);
    report.add("interval-size/tour-walk", walked, predicted);
    report.add("singleton-flag", (uint64_t)singleton_flag(bundle, x), (uint64_t)(run.value == 1));
    return emit(report);
}

int cmd_cluster(const std::string& name, const Word& x, const std::string& order_choice) {
    RunReport report;
    report.subcommand = "cluster";
    report.instance = name + " x=" + (x.empty() ? "eps" : x);
    ClusterWitness w = cluster_by_name(name);
    if (order_choice == "ift-prefix") {
        w.order = ift_to_cluster(shortlex_prefix_triple()).order;
        report.notes.push_back("order: derived from the shortlex prefix triple");
    }
    auto runs = cluster_partition(w.machine, w.order, x);
    std::ostringstream shape;
    for (const auto& run : runs) shape << (run.accepting ? "A" : "r") << run.paths.size() << " ";
    report.add_value("partition", shape.str());
    bool cluster = is_cluster(w.machine, w.order, x);
    report.add_value("is-cluster", cluster ? "yes" : "no");
    uint64_t expected = cluster_expected_count(name, x);
    report.add("accepting-paths", (uint64_t)acc_set(w.machine, x).size(), expected);
    if (cluster) {
        report.add("cl-count", cl_count(w, x), expected);
        auto nonempty = nonemptiness_detector(w);
        auto unique = uniqueness_detector(w);
        report.add("nonemptiness-detector", (uint64_t)!acc_set(nonempty, x).empty(),
                   (uint64_t)(expected > 0));
        report.add("uniqueness-detector", (uint64_t)!acc_set(unique, x).empty(),
                   (uint64_t)(expected == 1));
    }
    return emit(report);
}

void check_order_core(RunReport& report, uint64_t cap) {
    POrder sl = shortlex_order();
    auto axioms = verify_order_axioms(sl, words_upto(std::min<uint64_t>(cap, 7)));
    report.add("order-core/shortlex-axioms", (uint64_t)axioms.violations.size(), uint64_t{0});
    IntervalSpec spec{sl, [](const Word&) { return Word{}; }, [](const Word& x) { return x; }};
    bool walk_eq = true;
    for_each_word_upto(5, [&](const Word& x) {
        if (interval_size_by_walk(spec, x, 1 << 12) != interval_size_bruteforce(spec, x))
            walk_eq = false;
    });
    report.add("order-core/walk-vs-bruteforce", (uint64_t)walk_eq, uint64_t{1});
}

void check_constructions(RunReport& report, uint64_t cap) {
    uint64_t maxlen = std::min<uint64_t>(cap, 2);
    for (const std::string id :
         {"sharp-p/parity", "fp/len", "support/constant-k", "offset/constant-k", "upsv/const1",
          "increment/prefix"}) {
        OrderTriple triple = triple_by_id(id);
        bool ok = true;
        for_each_word_upto((size_t)maxlen, [&](const Word& x) {
            uint64_t want = oracle_for_triple(id, triple, x);
            if (interval_size_over(triple.spec, x, triple.block_universe(x)) != want) ok = false;
            if (triple.spec.order.has_successor() &&
                eval_triple(triple, x, EvalMode::walk) != want)
                ok = false;
        });
        report.add("constructions/" + id, (uint64_t)ok, uint64_t{1});
    }
}

void check_tm(RunReport& report, uint64_t) {
    auto ctx = make_context(toy_ones_tm());
    bool ok = true;
    for_each_word_upto(2, [&](const Word& x) {
        if (run_tm(ctx, x).value != popcount_word(x)) ok = false;
    });
    report.add("tm/ones-count", (uint64_t)ok, uint64_t{1});
}

void check_traversal(RunReport& report, uint64_t) {
    SpaceOrderBundle bundle = build_space_order(toy_ones_tm());
    bool ok = true;
    for (const Word& x : {Word{}, Word{"1"}, Word{"11"}}) {
        uint64_t f = run_tm(*bundle.ctx, x).value;
        uint64_t predicted = (uint64_t{2} << (2 * bundle.ctx->enc.s(x.size()))) + f - 2;
        if (fpspace_interval_size(bundle, x) != predicted) ok = false;
        if (singleton_flag(bundle, x) != (f == 1)) ok = false;
    }
    report.add("traversal/tour-identity", (uint64_t)ok, uint64_t{1});
}

void check_monsat(RunReport& report, uint64_t cap) {
    bool ok = true;
    uint64_t seed = 0x9e3779b97f4a7c15ull;
    auto rnd = [&seed]() {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        return seed;
    };
    uint64_t n = std::min<uint64_t>(std::max<uint64_t>(cap / 25, 3), 8);
    for (int trial = 0; trial < 50 && ok; ++trial) {
        std::string text;
        std::function<std::string(int)> gen = [&](int depth) -> std::string {
            if (depth == 0 || rnd() % 3 == 0) return "x" + std::to_string(rnd() % n + 1);
            std::string op = rnd() % 2 ? "&" : "|";
            return "(" + gen(depth - 1) + op + gen(depth - 1) + ")";
        };
        text = "(" + gen(3) + "|x" + std::to_string(n) + ")";
        MonotoneFormula f = parse_formula(text);
        if (count_monsat_interval(f) != count_monsat_bruteforce(f)) ok = false;
        for_each_word_of_length(f.arity, [&](const Word& a) {
            for (int r = 0; r <= 1; ++r) {
                uint64_t queries = 0;
                auto got = next_assignment(f, a, r, &queries);
                std::optional<Word> want;
                for_each_word_of_length(f.arity, [&](const Word& b) {
                    if (!want && b >= a && eval_formula(f, b) == r) want = b;
                });
                if (got != want || queries > 2 * f.arity + 2) ok = false;
            }
        });
    }
    report.add("monsat/figure-vs-oracle", (uint64_t)ok, uint64_t{1});
}

void check_divisors(RunReport& report, uint64_t cap) {
    bool ok = true;
    for (uint64_t m = 1; m <= cap; ++m) {
        uint64_t trial = count_divisors(m);
        if (divcount_via_divisibility_interval(m) != trial) ok = false;
        if (is_prime(m) != (m >= 2 && trial == 0)) ok = false;
        if (m <= std::min<uint64_t>(cap, 128) && divcount_via_support_order(m) != trial) ok = false;
    }
    report.add("divisors/three-routes", (uint64_t)ok, uint64_t{1});
}

void check_cluster(RunReport& report, uint64_t) {
    bool ok = true;
    for (const std::string name : {"range2", "empty2", "all2", "eps-even"}) {
        ClusterWitness w = cluster_by_name(name);
        for_each_word_upto(2, [&](const Word& x) {
            uint64_t expected = cluster_expected_count(name, x);
            if (!is_cluster(w.machine, w.order, x)) ok = false;
            else if (cl_count(w, x) != expected) ok = false;
            if (!acc_set(nonemptiness_detector(w), x).empty() != (expected > 0)) ok = false;
            if (!acc_set(uniqueness_detector(w), x).empty() != (expected == 1)) ok = false;
        });
    }
    ClusterWitness split = cluster_by_name("split2");
    if (is_cluster(split.machine, split.order, Word{"1"})) ok = false;
    report.add("cluster/catalog", (uint64_t)ok, uint64_t{1});
}

int cmd_check(const std::string& suite, uint64_t cap, uint64_t budget) {
    (void)budget;
    RunReport report;
    report.subcommand = "check";
    report.instance = suite;
    bool all = suite == "all";
    if (all || suite == "order-core") check_order_core(report, cap);
    if (all || suite == "constructions") check_constructions(report, cap);
    if (all || suite == "tm") check_tm(report, cap);
    if (all || suite == "traversal") check_traversal(report, cap);
    if (all || suite == "monsat") check_monsat(report, cap);
    if (all || suite == "divisors") check_divisors(report, cap);
    if (all || suite == "cluster") check_cluster(report, cap);
    if (report.entries.empty()) throw validation_error("unknown suite: " + suite);
    return emit(report);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"interval-size orders over binary words: constructions, counters, checks"};
    app.require_subcommand(1);
    std::string report_mode = "text";
    app.add_option("--report", report_mode, "text|json")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--timing", g_timing, "include elapsed time in reports");

    auto* interval = app.add_subcommand("interval", "interval size of a catalog order");
    std::string interval_id, interval_x = "eps", interval_mode = "both";
    uint64_t budget = uint64_t{1} << 22;
    interval->add_option("id", interval_id, "catalog id, e.g. fp/len")->required();
    interval->add_option("--x", interval_x, "input word (eps for empty)");
    interval->add_option("--mode", interval_mode, "walk|bruteforce|both")
        ->check(CLI::IsMember({"walk", "bruteforce", "both"}));
    interval->add_option("--budget", budget, "walk step budget");

    auto* monsat = app.add_subcommand("monsat", "count satisfying assignments two ways");
    std::string monsat_formula, monsat_mode = "both";
    monsat->add_option("formula", monsat_formula, "e.g. (x1|(x2&x3))")->required();
    monsat->add_option("--mode", monsat_mode, "walk|bruteforce|both")
        ->check(CLI::IsMember({"walk", "bruteforce", "both"}));

    auto* div = app.add_subcommand("div", "count nontrivial divisors three ways");
    uint64_t div_m = 0;
    div->add_option("m", div_m, "natural number")->required();

    auto* tmw = app.add_subcommand("tm-walk", "walk the traversal order of a machine");
    std::string tm_name = "ones2", tm_file, tm_x = "eps";
    tmw->add_option("--tm", tm_name, "built-in machine name");
    tmw->add_option("--tm-file", tm_file, "machine description file");
    tmw->add_option("--x", tm_x, "input word (eps for empty)");

    auto* cluster = app.add_subcommand("cluster", "partition, counts, and detectors");
    std::string cluster_name, cluster_x = "eps", cluster_order = "shortlex";
    cluster->add_option("machine", cluster_name, "catalog machine name")->required();
    cluster->add_option("--x", cluster_x, "input word (eps for empty)");
    cluster->add_option("--order", cluster_order, "shortlex|ift-prefix")
        ->check(CLI::IsMember({"shortlex", "ift-prefix"}));

    auto* check = app.add_subcommand("check", "run module invariant suites");
    std::string suite = "all";
    uint64_t cap = 200;
    check->add_option("--suite", suite,
                      "all|order-core|constructions|tm|traversal|monsat|divisors|cluster");
    check->add_option("--cap", cap, "size cap for sweeps");
    check->add_option("--budget", budget, "walk step budget");

    CLI11_PARSE(app, argc, argv);
    g_json = report_mode == "json";

    try {
        if (*interval) return cmd_interval(interval_id, parse_word(interval_x), interval_mode, budget);
        if (*monsat) return cmd_monsat(monsat_formula, monsat_mode, budget);
        if (*div) return cmd_div(div_m);
        if (*tmw) return cmd_tm_walk(tm_name, tm_file, parse_word(tm_x));
        if (*cluster) return cmd_cluster(cluster_name, parse_word(cluster_x), cluster_order);
        if (*check) return cmd_check(suite, cap, budget);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
