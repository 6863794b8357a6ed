#include "porder/catalog.hpp"

#include <algorithm>

#include "porder/divisors.hpp"
#include "porder/monsat.hpp"

namespace porder {

namespace {

WitnessPredicate base_parity() {
    WitnessPredicate w;
    w.p = Poly{1, 1};  // n + 1
    w.decider = [](const Word&, const Word& z) { return popcount_word(z) % 2 == 1; };
    return w;
}

WitnessPredicate base_majority() {
    WitnessPredicate w;
    w.p = Poly{1, 1};
    w.decider = [](const Word&, const Word& z) { return 2 * popcount_word(z) > z.size(); };
    return w;
}

WitnessPredicate base_monsat_witness() {
    WitnessPredicate w;
    w.p = Poly{3, 1};  // n + 3
    // First three bits satisfy x1 | (x2 & x3); the tail must be zero.
    w.decider = [](const Word&, const Word& z) {
        if (z.size() < 3) return false;
        if (z.find('1', 3) != Word::npos) return false;
        return z[0] == '1' || (z[1] == '1' && z[2] == '1');
    };
    return w;
}

WitnessPredicate base_constant3() {
    WitnessPredicate w;
    w.p = Poly{2, 1};  // n + 2
    w.decider = [](const Word&, const Word& z) { return bits_value(z) < 3; };
    return w;
}

}  // namespace

std::vector<std::string> witness_names() {
    return {"parity", "majority", "monsat-witness", "divisor-witness", "constant-k"};
}

WitnessPredicate witness_by_name(const std::string& name) {
    if (name == "parity") return normalize_witness(base_parity());
    if (name == "majority") return normalize_witness(base_majority());
    if (name == "monsat-witness") return normalize_witness(base_monsat_witness());
    if (name == "divisor-witness") return divisor_witness();
    if (name == "constant-k") return normalize_witness(base_constant3());
    throw validation_error("unknown witness: " + name);
}

std::vector<std::string> fp_names() { return {"len", "value", "const3"}; }

FPFunction fp_by_name(const std::string& name) {
    FPFunction f;
    if (name == "len") {
        f.p = Poly{2, 1};
        f.eval = [](const Word& x) { return (uint64_t)x.size(); };
        return f;
    }
    if (name == "value") {
        f.p = Poly{2, 1};
        f.eval = [](const Word& x) { return bits_value(x); };
        return f;
    }
    if (name == "const3") {
        f.p = Poly{3, 1};
        f.eval = [](const Word&) { return uint64_t{3}; };
        return f;
    }
    throw validation_error("unknown fp function: " + name);
}

std::vector<std::string> upsv_names() { return {"popcount-plus1", "value-plus1", "const1"}; }

UPSVMachine upsv_by_name(const std::string& name) {
    UPSVMachine m;
    m.p = Poly{1, 1};  // n + 1
    if (name == "popcount-plus1") {
        m.accepting_path = [](const Word& x) { return Word(x.size() + 1, '0'); };
        m.path_output = [](const Word& x, const Word& z) -> std::optional<uint64_t> {
            if (z != Word(x.size() + 1, '0')) return std::nullopt;
            return popcount_word(x) + 1;
        };
        return m;
    }
    if (name == "value-plus1") {
        m.accepting_path = [](const Word& x) { return x + "0"; };
        m.path_output = [](const Word& x, const Word& z) -> std::optional<uint64_t> {
            if (z != x + "0") return std::nullopt;
            return bits_value(x) + 1;
        };
        return m;
    }
    if (name == "const1") {
        m.accepting_path = [](const Word& x) { return Word(x.size() + 1, '0'); };
        m.path_output = [](const Word& x, const Word& z) -> std::optional<uint64_t> {
            if (z != Word(x.size() + 1, '0')) return std::nullopt;
            return 1;
        };
        return m;
    }
    throw validation_error("unknown upsv machine: " + name);
}

OrderTriple shortlex_prefix_triple() {
    OrderTriple triple;
    triple.spec.order = shortlex_order();
    triple.spec.b = [](const Word&) { return Word{}; };
    triple.spec.t = [](const Word& x) { return x; };
    triple.target = "shortlex rank";
    triple.t_len_bound = Poly::identity();
    triple.block_universe = [](const Word& x) { return words_upto(x.size() + 1); };
    return triple;
}

namespace {

// The fixed alias instance: every input owns one two-bit witness "01".
WitnessPredicate fixed_two_bit_witness() {
    WitnessPredicate w;
    w.p = Poly::constant(2);
    w.decider = [](const Word&, const Word& z) { return z == "01"; };
    w.normalized = true;  // 00 and 11 rejected by inspection
    return w;
}

}  // namespace

std::vector<std::string> triple_ids() {
    std::vector<std::string> ids;
    for (const auto& w : witness_names()) {
        ids.push_back("sharp-p/" + w);
        ids.push_back("offset/" + w);
        ids.push_back("support/" + w);
    }
    for (const auto& f : fp_names()) ids.push_back("fp/" + f);
    for (const auto& u : upsv_names()) ids.push_back("upsv/" + u);
    ids.push_back("increment/prefix");
    ids.push_back("increment/fp-len");
    ids.push_back("increment/twice-prefix");
    ids.push_back("monsat/or2");
    ids.push_back("fp-order/f=3");
    ids.push_back("offset-order/f=1,p=2");
    return ids;
}

OrderTriple triple_by_id(const std::string& id) {
    auto slash = id.find('/');
    if (slash == std::string::npos) throw validation_error("bad instance id: " + id);
    std::string family = id.substr(0, slash), inst = id.substr(slash + 1);
    if (family == "sharp-p") return build_sharp_p_order(witness_by_name(inst));
    if (family == "offset") return build_offset_order(witness_by_name(inst));
    if (family == "support") {
        if (inst == "divisor-witness")
            return build_support_aware_order(divisor_witness(), composite_support());
        SupportDecider always;
        always.in_support = [](const Word&) { return true; };  // these counts never vanish
        return build_support_aware_order(witness_by_name(inst), always);
    }
    if (family == "fp") return build_fp_order(fp_by_name(inst));
    if (family == "upsv") return build_upsv_order(upsv_by_name(inst));
    if (family == "increment") {
        if (inst == "prefix") return increment_order(shortlex_prefix_triple());
        if (inst == "fp-len") return increment_order(build_fp_order(fp_by_name("len")));
        if (inst == "twice-prefix")
            return increment_order(increment_order(shortlex_prefix_triple()));
        throw validation_error("unknown increment base: " + inst);
    }
    if (family == "monsat" && inst == "or2") return build_monsat_order(parse_formula("(x1|x2)"));
    if (family == "fp-order" && inst == "f=3") return build_fp_order(fp_by_name("const3"));
    if (family == "offset-order" && inst == "f=1,p=2")
        return build_offset_order(fixed_two_bit_witness());
    throw validation_error("unknown instance id: " + id);
}

namespace {

struct RangeSpec {
    uint64_t path_bits;
    // closed value range [lo(x), hi(x)]; empty when hi < lo
    std::function<uint64_t(const Word&)> lo, hi;
};

ClusterWitness make_range_cluster(const std::string& name, RangeSpec spec) {
    ClusterWitness w;
    w.name = name;
    w.machine.path_len = [bits = spec.path_bits](size_t) { return bits; };
    w.machine.accept = [spec](const Word& x, const Word& path) {
        uint64_t v = bits_value(path);
        return v >= spec.lo(x) && v <= spec.hi(x);
    };
    w.order = shortlex_order();
    return w;
}

}  // namespace

std::vector<std::string> cluster_names() {
    return {"range2", "range3", "range12", "empty2", "all2", "split2", "eps-even"};
}

ClusterWitness cluster_by_name(const std::string& name) {
    if (name == "range2")
        return make_range_cluster(
            name, {2, [](const Word&) { return uint64_t{1}; },
                   [](const Word& x) { return std::min<uint64_t>(3, popcount_word(x) + 1); }});
    if (name == "range3")
        return make_range_cluster(name, {3, [](const Word&) { return uint64_t{1}; },
                                         [](const Word& x) { return popcount_word(x) + 1; }});
    if (name == "range12")
        return make_range_cluster(name, {12, [](const Word&) { return uint64_t{5}; },
                                         [](const Word& x) { return 4 + bits_value(x) % 7 + 1; }});
    if (name == "empty2")
        return make_range_cluster(
            name, {2, [](const Word&) { return uint64_t{1}; }, [](const Word&) { return uint64_t{0}; }});
    if (name == "all2")
        return make_range_cluster(
            name, {2, [](const Word&) { return uint64_t{0}; }, [](const Word&) { return uint64_t{3}; }});
    if (name == "split2") {
        ClusterWitness w;
        w.name = name;
        w.machine.path_len = [](size_t) { return uint64_t{2}; };
        w.machine.accept = [](const Word&, const Word& path) {
            return path == "00" || path == "11";  // two runs: never a cluster
        };
        w.order = shortlex_order();
        return w;
    }
    if (name == "eps-even") {
        ClusterWitness w;
        w.name = name;
        w.machine.path_len = [](size_t) { return uint64_t{0}; };
        w.machine.accept = [](const Word& x, const Word& path) {
            return path.empty() && popcount_word(x) % 2 == 0;
        };
        w.order = shortlex_order();
        return w;
    }
    throw validation_error("unknown cluster machine: " + name);
}

Poly cluster_value_bound(const std::string& name) {
    if (name == "range2") return Poly::constant(4);
    if (name == "range3") return Poly{2, 1};  // |x| + 2 bounds popcount + 1
    if (name == "range12") return Poly::constant(8);
    if (name == "empty2" || name == "all2" || name == "split2") return Poly::constant(5);
    if (name == "eps-even") return Poly::constant(2);
    throw validation_error("unknown cluster machine: " + name);
}

uint64_t cluster_expected_count(const std::string& name, const Word& x) {
    if (name == "range2") return std::min<uint64_t>(3, popcount_word(x) + 1);
    if (name == "range3") return popcount_word(x) + 1;
    if (name == "range12") return bits_value(x) % 7 + 1;
    if (name == "empty2") return 0;
    if (name == "all2") return 4;
    if (name == "split2") return 2;
    if (name == "eps-even") return popcount_word(x) % 2 == 0 ? 1 : 0;
    throw validation_error("unknown cluster machine: " + name);
}

}  // namespace porder
