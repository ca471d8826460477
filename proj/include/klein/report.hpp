#pragma once

#include <string>

#include <json.hpp>

#include "klein/finite_field.hpp"
#include "klein/klein_geometry.hpp"
#include "klein/perm_group.hpp"
#include "klein/projective_space.hpp"
#include "klein/s6_outer.hpp"
#include "klein/staudt.hpp"

namespace klein {

using json = nlohmann::ordered_json;

inline json to_json(const Field& f) {
    return json{{"p", f.p()}, {"k", f.k()}, {"modulus", f.modulus()}, {"order", f.order()}};
}

inline json space_ref(const ProjSpace& s) {
    return json{{"p", s.field().p()}, {"k", s.field().k()}, {"n", s.dim()}};
}

inline json to_json(const Permutation& p) { return json(p.images()); }

inline json to_json(const PermGroup& g) {
    json gens = json::array();
    for (const auto& p : g.generators()) gens.push_back(p.images());
    return json{{"degree", g.degree()}, {"order", g.order()}, {"generators", std::move(gens)}};
}

inline json to_json(const SemilinearMap& f) {
    return json{{"matrix", f.A.a}, {"frobenius_exponent", f.h.j}};
}

/// Deterministic 64-bit fingerprint of a group's sorted element list, hex.
inline std::string group_fingerprint(const PermGroup& g) {
    std::uint64_t h = 1469598103934665603ull;
    for (const auto& p : g.elements())
        for (int x : p.images()) {
            h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Timing is excluded by default so that reports written with identical
/// arguments are byte-identical; pass include_timing to add duration_ms.
inline json to_json(const VerificationReport& r, bool include_timing = false) {
    json witnesses = json::array();
    for (const auto& w : r.witnesses) witnesses.push_back(w.images());
    json out{{"geometry", r.geometry},
             {"strategy", r.strategy},
             {"orders",
              {{"structural", r.structural_order},
               {"closure", r.closure_order},
               {"normalizer", r.normalizer_order}}},
             {"flags",
              {{"structural_in_normalizer", r.structural_in_normalizer},
               {"closure_in_normalizer", r.closure_in_normalizer},
               {"normalizer_in_closure", r.normalizer_in_closure}}},
             {"excluded_case", r.excluded_case},
             {"witnesses", std::move(witnesses)},
             {"samples", r.samples},
             {"seed", r.seed},
             {"sampled_closure_hits", r.sampled_closure_hits},
             {"pass", r.pass()}};
    if (include_timing) out["duration_ms"] = r.duration_ms;
    return out;
}

inline json to_json(const OuterAutReport& r) {
    json conjugates = json::array();
    for (std::size_t i = 0; i < r.conjugates.size(); ++i) {
        json gens = json::array();
        for (const auto& p : r.conjugates[i].generators()) gens.push_back(p.images());
        conjugates.push_back(json{{"label", i + 1},
                                  {"order", r.conjugates[i].order()},
                                  {"first_conjugator_rank", r.first_conjugator[i]},
                                  {"fingerprint", group_fingerprint(r.conjugates[i])},
                                  {"generators", std::move(gens)}});
    }
    json table = json::array();
    for (const auto& p : r.table) table.push_back(p.images());
    return json{{"degree", 6},
                {"group_order", r.conjugates.front().order()},
                {"index", 6},
                {"conjugates", std::move(conjugates)},
                {"table", std::move(table)},
                {"flags",
                 {{"is_homomorphism", r.is_homomorphism},
                  {"is_bijective", r.is_bijective},
                  {"fixes_stabilizer_image", r.fixes_stabilizer_image},
                  {"is_outer_no_fixed_point", r.is_outer_no_fixed_point},
                  {"is_outer_exhaustive", r.is_outer_exhaustive}}},
                {"witnesses",
                 {{"transposition", r.transposition_witness},
                  {"transposition_image_cycle_type", r.transposition_image_cycle_type}}},
                {"pass", r.pass()}};
}

/// Canonical file rendering: two-space indent plus trailing newline.
inline std::string render(const json& j) { return j.dump(2) + "\n"; }

} // namespace klein
