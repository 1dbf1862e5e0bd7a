// Copyright (c) tnumlab contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

// JSON forms of reports and the fixture records consumed by external
// solver-based checkers.
//
// Fixture record:
//   {"op": "add", "width": 8,
//    "p": {"v": "0x..", "m": "0x.."}, "q": {...} | null,
//    "shift": int | null, "r": {"v": "0x..", "m": "0x.."}}
// Hex strings are lowercase and 0x-prefixed. Shift operators carry a null q
// and an integer shift; every other operator carries a q and a null shift.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tnumlab/bench.hpp"
#include "tnumlab/format.hpp"
#include "tnumlab/precision.hpp"
#include "tnumlab/verify.hpp"

namespace tnumlab {

using Json = nlohmann::ordered_json;

inline Json tnum_json(const Tnum& t) { return Json{{"v", to_hex(t.value())}, {"m", to_hex(t.mask())}}; }

inline Json mode_json(const SweepMode& m) {
    if (m.kind == SweepMode::Kind::exhaustive) return Json{{"kind", "exhaustive"}};
    return Json{{"kind", "sampled"}, {"count", m.count}, {"seed", m.seed}};
}

inline Json to_json(const SoundnessReport& r) {
    Json v = Json::array();
    for (const auto& w : r.violations)
        v.push_back(Json{{"p", tnum_json(w.p)},
                         {"q", w.q ? tnum_json(*w.q) : Json(nullptr)},
                         {"x", to_hex(w.x)},
                         {"y", to_hex(w.y)},
                         {"z", to_hex(w.z)},
                         {"r", tnum_json(w.r)}});
    return Json{{"check", "soundness"},
                {"op", to_string(r.op)},
                {"width", r.width},
                {"mode", mode_json(r.mode)},
                {"pairs_checked", r.pairs_checked},
                {"memberships_checked", r.memberships_checked},
                {"violation_count", r.violation_count},
                {"ill_formed_results", r.ill_formed_results},
                {"cross_check_pairs", r.cross_check_pairs},
                {"cross_check_mismatches", r.cross_check_mismatches},
                {"ok", r.ok()},
                {"violations", v}};
}

inline Json to_json(const OptimalityReport& r) {
    Json ex = Json::array();
    for (const auto& e : r.examples)
        ex.push_back(Json{{"p", tnum_json(e.p)},
                          {"q", e.q ? tnum_json(*e.q) : Json(nullptr)},
                          {"shift", e.q ? Json(nullptr) : Json(e.shift)},
                          {"result", tnum_json(e.result)},
                          {"optimal", tnum_json(e.optimal)}});
    return Json{{"check", "optimality"},
                {"op", to_string(r.op)},
                {"width", r.width},
                {"total_pairs", r.total_pairs},
                {"equal_pairs", r.equal_pairs},
                {"strictly_worse_pairs", r.strictly_worse_pairs},
                {"unsound_pairs", r.unsound_pairs},
                {"equal_fraction", r.equal_fraction()},
                {"examples", ex}};
}

inline Json to_json(const LemmaResult& l) {
    Json j{{"name", l.name}, {"cases", l.cases}, {"violations", l.violations}};
    if (l.witness) j["witness"] = Json::array({tnum_json(l.witness->first), tnum_json(l.witness->second)});
    return j;
}

inline Json to_json(const LemmaReport& r, std::string_view op) {
    Json ls = Json::array();
    for (const auto& l : r.lemmas) ls.push_back(to_json(l));
    return Json{{"check", "lemmas"}, {"op", op}, {"width", r.width}, {"pairs_checked", r.pairs_checked},
                {"ok", r.ok()}, {"lemmas", ls}};
}

inline Json to_json(const PrecisionSummary& s) {
    Json h = Json::array();
    for (const auto& [ratio, count] : s.histogram) h.push_back(Json{{"log2_ratio", ratio}, {"count", count}});
    return Json{{"width", s.width},
                {"opA", to_string(s.op_a)},
                {"opB", to_string(s.op_b)},
                {"total_pairs", s.total_pairs},
                {"equal_count", s.equal_count},
                {"a_more_precise", s.a_more_precise},
                {"b_more_precise", s.b_more_precise},
                {"incomparable", s.incomparable},
                {"pct_equal", s.pct_equal()},
                {"pct_differing_comparable", s.pct_differing_comparable()},
                {"pct_a_more_precise", s.pct_a_more_precise()},
                {"histogram", h}};
}

inline Json to_json(const BenchReport& r) {
    Json ops = Json::array();
    for (const auto& o : r.ops)
        ops.push_back(Json{{"op", to_string(o.op)},
                           {"samples", o.samples},
                           {"mean", o.mean},
                           {"p10", o.p10},
                           {"p50", o.p50},
                           {"p90", o.p90},
                           {"p99", o.p99},
                           {"output_checksum", to_hex(o.output_checksum)},
                           {"audit_mismatches", o.audit_mismatches}});
    return Json{{"timer", to_string(r.timer.kind)},
                {"unit", r.timer.unit},
                {"resolution", r.timer.resolution},
                {"seed", r.seed},
                {"sampler", to_string(r.sampler)},
                {"n_pairs", r.n_pairs},
                {"trials", r.trials},
                {"input_checksum", to_hex(r.input_checksum)},
                {"pinned_cpu", r.pinned_cpu ? Json(*r.pinned_cpu) : Json(nullptr)},
                {"audited_pairs", r.audited_pairs},
                {"ops", ops}};
}

// ---------------------------------------------------------------------------
// Fixtures

struct Fixture {
    OpId op;
    int width;
    Tnum p;
    std::optional<Tnum> q;
    std::optional<unsigned> shift;
    Tnum r;

    friend bool operator==(const Fixture&, const Fixture&) = default;
};

inline Json to_json(const Fixture& f) {
    return Json{{"op", to_string(f.op)},
                {"width", f.width},
                {"p", tnum_json(f.p)},
                {"q", f.q ? tnum_json(*f.q) : Json(nullptr)},
                {"shift", f.shift ? Json(*f.shift) : Json(nullptr)},
                {"r", tnum_json(f.r)}};
}

/// Seeded random fixtures with outputs computed by the library.
inline std::vector<Fixture> make_fixtures(OpId op, int width, std::uint64_t count, std::uint64_t seed,
                                          Sampler sampler = Sampler::per_trit_uniform) {
    check_width(width);
    Rng rng(seed);
    std::vector<Fixture> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const Tnum p = sample_tnum(width, rng, sampler);
        if (is_shift(op)) {
            const auto k = static_cast<unsigned>(rng() % (static_cast<word>(width) + 1));
            out.push_back({op, width, p, std::nullopt, k, apply_shift(op, p, k)});
        } else {
            const Tnum q = sample_tnum(width, rng, sampler);
            out.push_back({op, width, p, q, std::nullopt, apply(op, p, q)});
        }
    }
    return out;
}

inline Json fixtures_json(const std::vector<Fixture>& fs) {
    Json arr = Json::array();
    for (const auto& f : fs) arr.push_back(to_json(f));
    return arr;
}

namespace detail {

[[noreturn]] inline void schema_error(std::size_t index, const std::string& what) {
    throw Error(Errc::FixtureSchema, "fixture " + std::to_string(index) + ": " + what, index);
}

inline word hex_field(const Json& obj, const char* key, std::size_t index) {
    if (!obj.is_object() || !obj.contains(key) || !obj[key].is_string())
        schema_error(index, std::string("missing hex string '") + key + "'");
    const std::string s = obj[key].get<std::string>();
    if (s.size() < 3 || s.size() > 18 || s[0] != '0' || s[1] != 'x') schema_error(index, "bad hex '" + s + "'");
    word v = 0;
    for (std::size_t i = 2; i < s.size(); ++i) {
        const char c = s[i];
        int d;
        if (c >= '0' && c <= '9')
            d = c - '0';
        else if (c >= 'a' && c <= 'f')
            d = c - 'a' + 10;
        else
            schema_error(index, "hex must be lowercase digits: '" + s + "'");
        v = (v << 4) | static_cast<word>(d);
    }
    return v;
}

inline Tnum tnum_field(const Json& rec, const char* key, int width, std::size_t index) {
    if (!rec.contains(key)) schema_error(index, std::string("missing '") + key + "'");
    const Json& o = rec[key];
    try {
        return Tnum::make(hex_field(o, "v", index), hex_field(o, "m", index), width);
    } catch (const Error& e) {
        if (e.code() == Errc::FixtureSchema) throw;
        schema_error(index, std::string("'") + key + "': " + e.what());
    }
}

} // namespace detail

/// Validates and decodes a fixture array. Throws Errc::FixtureSchema with
/// the offending record index.
inline std::vector<Fixture> parse_fixtures(const Json& doc) {
    if (!doc.is_array()) throw Error(Errc::FixtureSchema, "fixture document must be an array");
    std::vector<Fixture> out;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const Json& rec = doc[i];
        if (!rec.is_object()) detail::schema_error(i, "record must be an object");
        for (const char* key : {"op", "width", "p", "q", "shift", "r"})
            if (!rec.contains(key)) detail::schema_error(i, std::string("missing '") + key + "'");
        if (!rec["op"].is_string()) detail::schema_error(i, "'op' must be a string");
        if (!rec["width"].is_number_integer()) detail::schema_error(i, "'width' must be an integer");
        OpId op;
        try {
            op = parse_op(rec["op"].get<std::string>());
        } catch (const Error&) {
            detail::schema_error(i, "unknown op");
        }
        const int width = rec["width"].get<int>();
        if (width < 1 || width > max_width) detail::schema_error(i, "width out of range");
        Fixture f{op, width, detail::tnum_field(rec, "p", width, i), std::nullopt, std::nullopt, Tnum::raw(0, 0, width)};
        if (is_shift(op)) {
            if (!rec["q"].is_null()) detail::schema_error(i, "shift fixtures need q = null");
            if (!rec["shift"].is_number_unsigned()) detail::schema_error(i, "'shift' must be a non-negative integer");
            f.shift = rec["shift"].get<unsigned>();
        } else {
            if (!rec["shift"].is_null()) detail::schema_error(i, "binary fixtures need shift = null");
            f.q = detail::tnum_field(rec, "q", width, i);
        }
        f.r = detail::tnum_field(rec, "r", width, i);
        out.push_back(f);
    }
    return out;
}

/// Whether the stored output matches a fresh evaluation.
inline bool fixture_consistent(const Fixture& f) {
    return evaluate(f.op, f.p, f.q, f.shift.value_or(0)) == f.r;
}

} // namespace tnumlab
