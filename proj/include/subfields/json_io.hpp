#ifndef SUBFIELDS_JSON_IO_HPP
#define SUBFIELDS_JSON_IO_HPP

/**
 * @file json_io.hpp
 * @brief Structured output: stable-schema JSON for search results plus a
 *        reader that reconstructs subfield records for revalidation.
 *        Big integers are serialized as decimal strings.
 */

#include <json.hpp>

#include <string>
#include <vector>

#include "subfields/field_search.hpp"

namespace subfields {

using nlohmann::json;

inline json to_json(const IntPoly& p) {
    json arr = json::array();
    for (long i = 0; i <= p.degree(); ++i) arr.push_back(p[i].get_str());
    if (p.is_zero()) arr.push_back("0");
    return arr;
}

inline json to_json(const RatPoly& p) {
    json arr = json::array();
    for (long i = 0; i <= p.degree(); ++i) arr.push_back(p[i].get_str());
    if (p.is_zero()) arr.push_back("0");
    return arr;
}

inline json to_json(const BlockSystem& b) {
    json arr = json::array();
    for (const auto& blk : b.blocks) {
        json inner = json::array();
        for (int x : blk) inner.push_back(x + 1);  // 1-based output
        arr.push_back(inner);
    }
    return arr;
}

inline json to_json(const SubfieldRecord& rec) {
    return json{{"degree", rec.degree()},
                {"g", to_json(rec.g)},
                {"h", to_json(rec.h)},
                {"blocks", to_json(rec.blocks)},
                {"principal", rec.principal_proven},
                {"shift", rec.invariant_shift.get_str()}};
}

inline json to_json(const PermGroup& g) {
    json gens = json::array();
    for (const auto& s : g.generators()) {
        json img = json::array();
        for (int i = 0; i < s.degree(); ++i) img.push_back(s[i] + 1);
        gens.push_back(img);
    }
    return json{{"degree", g.degree()}, {"order", g.order().get_str()}, {"generators", gens}};
}

inline json to_json(const InspectionResult& insp) {
    json sizes = json::array();
    for (long k : insp.possible_block_sizes) sizes.push_back(k);
    json reports = json::array();
    for (const auto& rep : insp.reports) {
        json type = json::array();
        for (long c : rep.cycle_type) type.push_back(c);
        reports.push_back(json{{"prime", rep.prime.get_str()}, {"cycle_type", type},
                               {"parity", rep.parity}});
    }
    return json{{"possible_block_sizes", sizes},
                {"lll_prime", insp.lll_prime.get_str()},
                {"splitting_prime", insp.splitting_prime.get_str()},
                {"order_divisor", insp.order_divisor_found.get_str()},
                {"group_is_even", insp.group_is_even == Evenness::kYes ? "yes" : "unknown"},
                {"splitting_degree", insp.splitting_degree},
                {"sampled_primes", reports}};
}

inline json to_json(const FieldSearchResult& result, const IntPoly& input) {
    json trace = json::array();
    for (const auto& call : result.trace) {
        json prl = json::array(), prb = json::array();
        for (long v : call.precision_trace.pr_l_history) prl.push_back(v);
        for (long v : call.precision_trace.pr_b_history) prb.push_back(v);
        trace.push_back(json{{"factor_index", call.factor_index},
                             {"factor_degree", call.factor_degree},
                             {"verdict", call.verdict == LatticeVerdict::kDoFactor ? "do factor"
                                                                                   : "skip factor"},
                             {"new_system", call.produced_new_system},
                             {"pr_L", prl},
                             {"pr_B", prb}});
    }
    json subfields_json = json::array();
    json generating = json::array();
    for (std::size_t i = 0; i < result.records.size(); ++i) {
        subfields_json.push_back(to_json(result.records[i]));
        if (result.records[i].principal_proven) generating.push_back(i);
    }
    json out{{"input", to_json(input)},
             {"no_subfields", result.no_subfields},
             {"lll_calls", result.lll_calls},
             {"lll_trace", trace},
             {"subfields", subfields_json},
             {"generating_set", json{{"count", generating.size()}, {"indices", generating}}},
             {"group", to_json(result.group)}};
    out["inspection"] = result.inspection.has_value() ? to_json(*result.inspection) : json();
    return out;
}

// ---------------------------------------------------------------------------
// Reading back.

inline IntPoly int_poly_from_json(const json& arr) {
    std::vector<Int> c;
    for (const auto& v : arr) c.emplace_back(v.get<std::string>());
    return IntPoly(std::move(c));
}

inline RatPoly rat_poly_from_json(const json& arr) {
    std::vector<Rat> c;
    for (const auto& v : arr) {
        Rat q(v.get<std::string>());
        q.canonicalize();
        c.push_back(std::move(q));
    }
    return RatPoly(std::move(c));
}

inline BlockSystem block_system_from_json(const json& arr, int n) {
    std::vector<int> cls(n, -1);
    int id = 0;
    for (const auto& blk : arr) {
        for (const auto& x : blk) cls[x.get<int>() - 1] = id;
        ++id;
    }
    return BlockSystem(n, cls);
}

/// Reconstruct every subfield record from a structured output document.
inline std::vector<SubfieldRecord> read_subfield_records(const json& doc) {
    std::vector<SubfieldRecord> out;
    const int n = static_cast<int>(doc.at("input").size()) - 1;
    for (const auto& item : doc.at("subfields")) {
        SubfieldRecord rec;
        rec.g = int_poly_from_json(item.at("g"));
        rec.h = rat_poly_from_json(item.at("h"));
        rec.blocks = block_system_from_json(item.at("blocks"), n);
        rec.principal_proven = item.at("principal").get<bool>();
        rec.invariant_shift = Int(item.at("shift").get<std::string>());
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace subfields

#endif  // SUBFIELDS_JSON_IO_HPP
