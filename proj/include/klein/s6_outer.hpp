#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "klein/common.hpp"
#include "klein/klein_geometry.hpp"
#include "klein/perm_group.hpp"
#include "klein/staudt.hpp"

namespace klein {

/// The exceptional automorphism of S_6, built from the projective line over
/// GF(5): the homography group has index 6 and exactly 6 conjugates
/// H_1..H_6, and conjugation permutes that set, giving a map F from S_6 to
/// itself that no inner automorphism matches.
struct OuterAutReport {
    std::vector<PermGroup> conjugates;            // H_1..H_6, first-encounter labels
    std::vector<std::uint64_t> first_conjugator;  // lex rank of the earliest conjugator
    std::vector<Permutation> table;               // table[r] = F(tau_r), tau_r the rank-r
                                                  // permutation of S_6 in lex order
    bool is_homomorphism = false;
    bool is_bijective = false;
    bool fixes_stabilizer_image = false;
    bool is_outer_no_fixed_point = false; // transitivity argument
    bool is_outer_exhaustive = false;     // table differs from all 720 inner maps
    std::vector<int> transposition_witness;          // a transposition tau ...
    std::vector<int> transposition_image_cycle_type; // ... and the cycle type of F(tau)

    bool is_outer() const { return is_outer_no_fixed_point && is_outer_exhaustive; }
    bool pass() const {
        return is_homomorphism && is_bijective && fixes_stabilizer_image && is_outer();
    }
};

struct OuterFlags {
    bool is_homomorphism = false;
    bool is_bijective = false;
    bool fixes_stabilizer_image = false;
    bool is_outer_no_fixed_point = false;
    bool is_outer_exhaustive = false;

    bool all() const {
        return is_homomorphism && is_bijective && fixes_stabilizer_image &&
               is_outer_no_fixed_point && is_outer_exhaustive;
    }
};

/// Label order for the six conjugates. first_encounter is the canonical
/// choice; reverse_encounter relabels H_i -> H_{7-i} and exists to show the
/// construction only moves by an inner automorphism under relabeling.
enum class ConjugateLabelOrder { first_encounter, reverse_encounter };

/// Recomputes every flag from the table and the stored conjugates alone.
inline OuterFlags verify_outer(const OuterAutReport& report) {
    OuterFlags flags;
    const std::uint64_t n = report.table.size();
    detail::ensure(n == 720, "table must cover all of S_6");
    const PermGroup& structural = report.conjugates.front(); // H_1 is the homography group

    std::vector<Permutation> s6;
    s6.reserve(n);
    for (std::uint64_t r = 0; r < n; ++r) s6.push_back(nth_permutation(6, r));

    // homomorphism over every ordered pair
    flags.is_homomorphism = true;
    for (std::uint64_t r = 0; r < n && flags.is_homomorphism; ++r) {
        for (std::uint64_t s = 0; s < n; ++s) {
            const std::uint64_t rs = permutation_rank(compose(s6[r], s6[s]));
            if (report.table[rs] != compose(report.table[r], report.table[s])) {
                flags.is_homomorphism = false;
                break;
            }
        }
    }

    // injectivity on a finite set gives bijectivity
    std::set<std::vector<int>> images;
    for (const auto& p : report.table) images.insert(p.images());
    flags.is_bijective = images.size() == n;

    // the image of the structural group fixes label 0 and fills the whole
    // label stabilizer (order 120 = |S_5|)
    std::set<std::vector<int>> structural_image;
    bool fixes_label = true;
    for (const auto& g : structural.elements()) {
        const Permutation& fg = report.table[permutation_rank(g)];
        if (fg(0) != 0) fixes_label = false;
        structural_image.insert(fg.images());
    }
    flags.fixes_stabilizer_image = fixes_label && structural_image.size() == 120;

    // structural argument: the homography group fixes no point, and every
    // conjugate of a fixed-point-free group is fixed-point-free, while the
    // image of the structural group fixes a label
    bool no_fixed_point = true;
    for (int p = 0; p < 6; ++p) {
        bool moved = false;
        for (const auto& g : structural.elements())
            if (g(p) != p) {
                moved = true;
                break;
            }
        if (!moved) no_fixed_point = false;
    }
    flags.is_outer_no_fixed_point = no_fixed_point && flags.fixes_stabilizer_image;

    // airtight check: compare the table against conjugation by every element
    flags.is_outer_exhaustive = true;
    for (std::uint64_t r = 0; r < n; ++r) {
        const Permutation& g = s6[r];
        const Permutation g_inv = g.inverse();
        bool differs = false;
        for (std::uint64_t s = 0; s < n; ++s) {
            if (report.table[s] != conjugate(g, s6[s], g_inv)) {
                differs = true;
                break;
            }
        }
        if (!differs) {
            flags.is_outer_exhaustive = false;
            break;
        }
    }
    return flags;
}

/// Builds the full construction: the homography group of the line over
/// GF(5), its six conjugates, the induced map on labels for every
/// permutation, and the verification flags.
inline OuterAutReport build_outer_automorphism(
    ConjugateLabelOrder order = ConjugateLabelOrder::first_encounter, int jobs = 1) {
    const Field f5 = Field::make(5, 1);
    const KleinGeometry geom = projective_geometry(f5, 1);
    detail::ensure(geom.point_count() == 6, "the line over GF(5) has 6 points");
    detail::ensure(geom.group.order() == 120, "expected 6*5*4 homographies");
    detail::ensure(factorial(6) / geom.group.order() == 6, "index of the homography group");

    OuterAutReport report;
    report.conjugates = conjugates_of(geom.group, 4000000, jobs);
    detail::ensure(report.conjugates.size() == 6, "expected exactly 6 conjugates");
    detail::ensure(report.conjugates.front() == geom.group,
                   "identity conjugator must label the group itself first");
    if (order == ConjugateLabelOrder::reverse_encounter)
        std::reverse(report.conjugates.begin(), report.conjugates.end());

    std::map<std::vector<std::vector<int>>, int> label_of;
    for (std::size_t i = 0; i < report.conjugates.size(); ++i) {
        std::vector<std::vector<int>> fp;
        for (const auto& h : report.conjugates[i].elements()) fp.push_back(h.images());
        label_of.emplace(std::move(fp), static_cast<int>(i));
    }

    // earliest conjugator per label, recomputed against the chosen order
    report.first_conjugator.assign(6, factorial(6));
    const std::uint64_t n = factorial(6);
    report.table.reserve(n);
    for (std::uint64_t r = 0; r < n; ++r) {
        const Permutation tau = nth_permutation(6, r);
        const Permutation tau_inv = tau.inverse();
        std::vector<int> label_images(6);
        for (int i = 0; i < 6; ++i) {
            std::vector<std::vector<int>> fp;
            fp.reserve(report.conjugates[static_cast<std::size_t>(i)].order());
            for (const auto& h : report.conjugates[static_cast<std::size_t>(i)].elements())
                fp.push_back(conjugate(tau, h, tau_inv).images());
            std::sort(fp.begin(), fp.end());
            const auto it = label_of.find(fp);
            detail::ensure(it != label_of.end(), "conjugate fell outside the six labels");
            label_images[static_cast<std::size_t>(i)] = it->second;
            if (i == 0 && report.first_conjugator[static_cast<std::size_t>(it->second)] == n)
                report.first_conjugator[static_cast<std::size_t>(it->second)] = r;
        }
        report.table.push_back(Permutation(std::move(label_images)));
    }

    const OuterFlags flags = verify_outer(report);
    report.is_homomorphism = flags.is_homomorphism;
    report.is_bijective = flags.is_bijective;
    report.fixes_stabilizer_image = flags.fixes_stabilizer_image;
    report.is_outer_no_fixed_point = flags.is_outer_no_fixed_point;
    report.is_outer_exhaustive = flags.is_outer_exhaustive;

    // witness: what happens to a transposition
    for (std::uint64_t r = 0; r < n; ++r) {
        const Permutation tau = nth_permutation(6, r);
        if (cycle_type(tau) == std::vector<int>{2, 1, 1, 1, 1}) {
            report.transposition_witness = tau.images();
            report.transposition_image_cycle_type = cycle_type(report.table[r]);
            break;
        }
    }
    return report;
}

} // namespace klein
