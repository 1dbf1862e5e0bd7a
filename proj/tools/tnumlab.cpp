// Copyright (c) tnumlab contributors.
// SPDX-License-Identifier: Apache-2.0

// tnumlab: evaluate operators, run verification sweeps, compare precision,
// benchmark, and emit fixtures. Exit codes: 0 success, 1 property failure,
// 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tnumlab.hpp"

namespace {

using namespace tnumlab;

constexpr int exit_ok = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Writes to `path`, or stdout when empty or "-".
void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open '" + path + "' for writing");
    f << text;
}

std::vector<OpId> parse_op_list(const std::string& text) {
    std::vector<OpId> ops;
    if (text == "all") return {all_ops.begin(), all_ops.end()};
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) ops.push_back(parse_op(item));
    if (ops.empty()) throw UsageError("no operators given");
    return ops;
}

std::pair<int, int> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const int w = std::stoi(text);
            return {w, w};
        }
        return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw UsageError("bad width range '" + text + "'");
    }
}

// Mutant used to confirm that the soundness harness catches a broken operator.
Tnum add_without_operand_masks(const Tnum& p, const Tnum& q) {
    const word m = width_mask(p.width());
    const word sv = (p.value() + q.value()) & m;
    const word sm = (p.mask() + q.mask()) & m;
    const word chi = ((sv + sm) & m) ^ sv;
    return Tnum::raw(sv & ~chi, chi, p.width());
}

// ---------------------------------------------------------------------------

struct EvalArgs {
    std::string op, p, q, format = "text";
    int width = 64;
    std::optional<unsigned> shift;
};

int run_eval(const EvalArgs& a) {
    const OpId op = parse_op(a.op);
    const Tnum p = parse(a.p, a.width);
    std::optional<Tnum> q;
    if (is_shift(op)) {
        if (!a.shift) throw UsageError(std::string(to_string(op)) + " needs --shift");
        if (!a.q.empty()) throw UsageError(std::string(to_string(op)) + " takes --shift, not --q");
    } else {
        if (a.q.empty()) throw UsageError(std::string(to_string(op)) + " needs --q");
        if (a.shift) throw UsageError(std::string(to_string(op)) + " does not take --shift");
        q = parse(a.q, a.width);
    }
    const Tnum r = evaluate(op, p, q, a.shift.value_or(0));
    if (a.format == "json") {
        std::cout << to_json(Fixture{op, a.width, p, q, a.shift, r}).dump() << '\n';
    } else {
        const bool hex = a.p.rfind("v=", 0) == 0;
        std::cout << (hex ? format_hex(r) : format(r)) << '\n';
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string op = "all", mode = "exhaustive", check = "soundness", out;
    int width = 6;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 0;
    bool mutant = false;
};

int run_verify(const VerifyArgs& a) {
    const std::vector<OpId> ops = a.mutant ? std::vector<OpId>{OpId::add} : parse_op_list(a.op);
    SweepMode mode;
    if (a.mode == "exhaustive")
        mode = SweepMode::exhaustive();
    else if (a.mode == "sample" || a.mode == "sampled")
        mode = SweepMode::sampled(a.samples, a.seed);
    else
        throw UsageError("--mode must be exhaustive or sample");

    Json reports = Json::array();
    bool ok = true;
    if (a.check == "soundness") {
        for (OpId op : ops) {
            AbstractOp f = AbstractOp::of(op);
            if (a.mutant) f.binary = add_without_operand_masks;
            const SoundnessReport r = check_soundness(f, a.width, mode);
            ok = ok && r.ok();
            Json j = to_json(r);
            if (a.mutant) j["mutant"] = "add_without_operand_masks";
            reports.push_back(std::move(j));
            std::cerr << to_string(op) << " width " << a.width << ": " << r.violation_count << " violations over "
                      << r.pairs_checked << " pairs\n";
        }
    } else if (a.check == "optimality") {
        for (OpId op : ops) {
            const OptimalityReport r = check_optimality(op, a.width);
            ok = ok && r.optimal();
            reports.push_back(to_json(r));
            std::cerr << to_string(op) << " width " << a.width << ": " << r.equal_pairs << "/" << r.total_pairs
                      << " optimal, " << r.unsound_pairs << " unsound\n";
        }
    } else if (a.check == "lemmas") {
        for (OpId op : ops) {
            if (op == OpId::add || op == OpId::sub) {
                const LemmaReport r = op == OpId::add ? check_add_lemmas(a.width) : check_sub_lemmas(a.width);
                ok = ok && r.ok();
                reports.push_back(to_json(r, to_string(op)));
            } else if (op == OpId::our_mul || op == OpId::our_mul_simplified) {
                LemmaReport r{a.width, 0, {}};
                r.lemmas.push_back(check_union_with_zero(a.width));
                r.lemmas.push_back(check_decomposed_summation(a.width, a.samples, a.seed));
                r.lemmas.push_back(check_partial_products(a.width, a.samples, a.seed));
                ok = ok && r.ok();
                reports.push_back(to_json(r, to_string(op)));
            }
        }
        if (reports.empty()) throw UsageError("lemmas exist for add, sub, and our_mul only");
    } else if (a.check == "galois") {
        const std::vector<GaloisLaw> laws = {
            check_alpha_monotone(std::min(a.width, 3)), check_gamma_monotone(a.width),
            check_extensive(std::min(a.width, 4)),      check_reductive(a.width),
            check_bitwise_exact(std::min(a.width, 4)),  check_smallest_member(a.width)};
        for (const auto& l : laws) {
            ok = ok && l.violations == 0;
            reports.push_back(Json{{"check", "galois"}, {"law", l.name}, {"width", l.width}, {"cases", l.cases},
                                   {"violations", l.violations}});
        }
    } else if (a.check == "counterexamples") {
        const CounterexampleSearch s = find_counterexamples(a.width, a.samples, a.seed);
        for (const auto& ce : s.found) {
            Json ops_json = Json::array();
            for (const auto& t : ce.operands) ops_json.push_back(tnum_json(t));
            const auto [lhs, rhs] = replay(ce);
            reports.push_back(Json{{"property", to_string(ce.property)},
                                   {"op", to_string(ce.op)},
                                   {"operands", ops_json},
                                   {"lhs", tnum_json(ce.lhs)},
                                   {"rhs", tnum_json(ce.rhs)},
                                   {"exhaustive", ce.exhaustive},
                                   {"replays", lhs == ce.lhs && rhs == ce.rhs && !(lhs == rhs)}});
        }
        for (const auto& nf : s.not_found) reports.push_back(Json{{"property", nf}, {"found", false}});
    } else {
        throw UsageError("--check must be soundness, optimality, lemmas, galois, or counterexamples");
    }
    emit(a.out, reports.dump(2) + "\n");
    return ok ? exit_ok : exit_fail;
}

// ---------------------------------------------------------------------------

struct PrecisionArgs {
    std::string a = "our_mul", b = "kern_mul", bitwidths, out;
    int width = 8;
};

int run_precision(const PrecisionArgs& args) {
    const OpId a = parse_op(args.a);
    const OpId b = parse_op(args.b);
    std::ostringstream csv;
    csv << precision_csv_header << '\n';
    if (!args.bitwidths.empty()) {
        const auto [lo, hi] = parse_range(args.bitwidths);
        if (lo < 1 || hi < lo || hi > max_precision_width)
            throw UsageError("--bitwidths must be lo..hi with 1 <= lo <= hi <= " + std::to_string(max_precision_width));
        std::vector<PrecisionSummary> sums;
        const auto rows = sweep_bitwidths(a, b, lo, hi, &sums);
        for (const auto& s : sums) write_precision_csv(csv, s);
        write_bitwidth_csv(csv, a, b, rows);
        for (const auto& r : rows)
            std::printf("width %d: pct_equal %.4f pct_differing_comparable %.4f pct_%s_more_precise %.4f\n", r.width,
                        r.pct_equal, r.pct_differing_comparable, args.a.c_str(), r.pct_a_more_precise);
    } else {
        if (args.width < 1 || args.width > max_precision_width)
            throw UsageError("--width must be in 1.." + std::to_string(max_precision_width));
        const PrecisionSummary s = sweep_exhaustive(a, b, args.width);
        write_precision_csv(csv, s);
        std::printf("width %d: total %llu equal %llu (fraction %.6f) %s_more_precise %llu %s_more_precise %llu "
                    "incomparable %llu\n",
                    s.width, static_cast<unsigned long long>(s.total_pairs),
                    static_cast<unsigned long long>(s.equal_count), s.pct_equal() / 100.0, args.a.c_str(),
                    static_cast<unsigned long long>(s.a_more_precise), args.b.c_str(),
                    static_cast<unsigned long long>(s.b_more_precise),
                    static_cast<unsigned long long>(s.incomparable));
    }
    if (!args.out.empty()) emit(args.out, csv.str());
    return exit_ok;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
    std::string ops = "kern_mul,bitwise_mul_opt,our_mul", sampler = "per_trit_uniform", timer = "auto", out, json;
    std::uint64_t pairs = 4'000'000;
    unsigned trials = 10;
    std::uint64_t seed = 0;
    std::optional<int> cpu;
};

int run_bench_cmd(const BenchArgs& a) {
    if (a.pairs == 0) throw UsageError("--pairs must be >= 1");
    if (a.trials == 0) throw UsageError("--trials must be >= 1");
    if (a.timer != "auto" && a.timer != "tsc" && a.timer != "clock") throw UsageError("--timer must be auto, tsc, or clock");
    BenchConfig cfg;
    cfg.ops = parse_op_list(a.ops);
    cfg.n_pairs = a.pairs;
    cfg.trials = a.trials;
    cfg.seed = a.seed;
    cfg.sampler = parse_sampler(a.sampler);
    cfg.pin_hint = a.cpu;
    cfg.allow_tsc = a.timer != "clock";
    const BenchReport r = run_bench(cfg);
    std::printf("seed %llu\n", static_cast<unsigned long long>(r.seed));
    std::printf("input_checksum %s\n", to_hex(r.input_checksum).c_str());
    std::printf("timer %s (%s)\n", std::string(to_string(r.timer.kind)).c_str(), r.timer.unit.c_str());
    for (const auto& o : r.ops)
        std::printf("%s mean %.2f p50 %llu p90 %llu p99 %llu\n", std::string(to_string(o.op)).c_str(), o.mean,
                    static_cast<unsigned long long>(o.p50), static_cast<unsigned long long>(o.p90),
                    static_cast<unsigned long long>(o.p99));
    if (!a.out.empty()) {
        std::ostringstream csv;
        write_bench_csv(csv, r);
        emit(a.out, csv.str());
    }
    if (!a.json.empty()) emit(a.json, to_json(r).dump(2) + "\n");
    bool audit_ok = true;
    for (const auto& o : r.ops) audit_ok = audit_ok && o.audit_mismatches == 0;
    return audit_ok ? exit_ok : exit_fail;
}

// ---------------------------------------------------------------------------

struct FixtureArgs {
    std::string op, out, sampler = "per_trit_uniform";
    int width = 64;
    std::uint64_t count = 1000;
    std::uint64_t seed = 0;
};

int run_fixtures(const FixtureArgs& a) {
    const auto fs = make_fixtures(parse_op(a.op), a.width, a.count, a.seed, parse_sampler(a.sampler));
    std::cerr << "seed " << a.seed << '\n';
    emit(a.out, fixtures_json(fs).dump(2) + "\n");
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tnum abstract domain toolkit"};
    app.require_subcommand(1);

    EvalArgs ev;
    auto* eval = app.add_subcommand("eval", "evaluate one operator");
    eval->add_option("--op", ev.op)->required();
    eval->add_option("--width", ev.width)->check(CLI::Range(1, 64));
    eval->add_option("--p", ev.p)->required();
    eval->add_option("--q", ev.q);
    eval->add_option("--shift", ev.shift);
    eval->add_option("--format", ev.format)->check(CLI::IsMember({"json", "text"}));

    VerifyArgs ve;
    auto* verify = app.add_subcommand("verify", "soundness, optimality, lemma, and law sweeps");
    verify->add_option("--op", ve.op);
    verify->add_option("--width", ve.width)->check(CLI::Range(1, 64));
    verify->add_option("--mode", ve.mode);
    verify->add_option("--samples", ve.samples);
    verify->add_option("--seed", ve.seed);
    verify->add_option("--check", ve.check);
    verify->add_option("--out", ve.out);
    verify->add_flag("--mutant", ve.mutant)->group("");

    PrecisionArgs pr;
    auto* precision = app.add_subcommand("precision", "exhaustive pairwise precision comparison");
    precision->add_option("--a", pr.a);
    precision->add_option("--b", pr.b);
    precision->add_option("--width", pr.width);
    precision->add_option("--bitwidths", pr.bitwidths);
    precision->add_option("--out", pr.out);

    BenchArgs be;
    auto* bench = app.add_subcommand("bench", "time operators on random width-64 pairs");
    bench->add_option("--ops", be.ops);
    bench->add_option("--pairs", be.pairs);
    bench->add_option("--trials", be.trials);
    bench->add_option("--seed", be.seed);
    bench->add_option("--sampler", be.sampler);
    bench->add_option("--cpu", be.cpu);
    bench->add_option("--timer", be.timer);
    bench->add_option("--out", be.out);
    bench->add_option("--json", be.json);

    FixtureArgs fx;
    auto* fixtures = app.add_subcommand("fixtures", "emit random input/output records as JSON");
    fixtures->add_option("--op", fx.op)->required();
    fixtures->add_option("--width", fx.width)->check(CLI::Range(1, 64));
    fixtures->add_option("--count", fx.count);
    fixtures->add_option("--seed", fx.seed);
    fixtures->add_option("--sampler", fx.sampler);
    fixtures->add_option("--out", fx.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*eval) return run_eval(ev);
        if (*verify) return run_verify(ve);
        if (*precision) return run_precision(pr);
        if (*bench) return run_bench_cmd(be);
        if (*fixtures) return run_fixtures(fx);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == Errc::TimerUnavailable ? exit_fail : exit_usage;
    }
    return exit_usage;
}
