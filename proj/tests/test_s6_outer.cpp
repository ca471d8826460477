#include <catch2/catch_amalgamated.hpp>

#include "klein/s6_outer.hpp"
#include "oracles.hpp"

using namespace klein;

namespace {

const OuterAutReport& canonical_report() {
    static const OuterAutReport report = build_outer_automorphism();
    return report;
}

} // namespace

TEST_CASE("the homography group of the line over GF(5) has six conjugates") {
    const auto& r = canonical_report();
    REQUIRE(r.conjugates.size() == 6);
    CHECK(r.conjugates.front().order() == 120);
    CHECK(r.first_conjugator[0] == 0); // the identity labels the group itself
    for (const auto& h : r.conjugates) CHECK(h.order() == 120);
    // pairwise distinct element sets
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i + 1; j < 6; ++j) REQUIRE_FALSE(r.conjugates[i] == r.conjugates[j]);
}

TEST_CASE("the induced label map fixes the identity and passes every flag") {
    const auto& r = canonical_report();
    CHECK(r.table[0] == Permutation::identity(6)); // F(identity) = identity
    CHECK(r.is_homomorphism);
    CHECK(r.is_bijective);
    CHECK(r.fixes_stabilizer_image);
    CHECK(r.is_outer_no_fixed_point);
    CHECK(r.is_outer_exhaustive);
    CHECK(r.pass());
}

TEST_CASE("flags are recomputable from the stored table") {
    const auto& r = canonical_report();
    auto flags = verify_outer(r);
    CHECK(flags.all());
    CHECK(flags.is_homomorphism == r.is_homomorphism);
    CHECK(flags.is_outer_exhaustive == r.is_outer_exhaustive);
}

TEST_CASE("a transposition maps to a triple transposition") {
    const auto& r = canonical_report();
    REQUIRE(r.transposition_witness == std::vector<int>{0, 1, 2, 3, 5, 4}); // first in lex order
    CHECK(r.transposition_image_cycle_type == std::vector<int>{2, 2, 2});
    // the transposition class moves to a different class, which no inner
    // automorphism can do
    CHECK(r.transposition_image_cycle_type != std::vector<int>{2, 1, 1, 1, 1});
}

TEST_CASE("inner automorphisms preserve cycle types") {
    for (std::uint64_t r = 0; r < 720; r += 37) {
        const Permutation g = nth_permutation(6, r);
        const Permutation g_inv = g.inverse();
        for (std::uint64_t s = 0; s < 720; s += 11) {
            const Permutation tau = nth_permutation(6, s);
            REQUIRE(cycle_type(conjugate(g, tau, g_inv)) == cycle_type(tau));
        }
    }
}

TEST_CASE("the label map has trivial kernel") {
    const auto& r = canonical_report();
    for (std::uint64_t rank = 0; rank < 720; ++rank) {
        const bool maps_to_identity = r.table[rank] == Permutation::identity(6);
        REQUIRE(maps_to_identity == (rank == 0));
    }
}

TEST_CASE("every cycle type count is preserved by the label map") {
    // a bijective homomorphism permutes conjugacy classes, so class sizes match
    const auto& r = canonical_report();
    std::map<std::vector<int>, int> source, image;
    for (std::uint64_t rank = 0; rank < 720; ++rank) {
        source[cycle_type(nth_permutation(6, rank))]++;
        image[cycle_type(r.table[rank])]++;
    }
    REQUIRE(source == image);
    // the two swapped class pairs of the exceptional automorphism
    CHECK(source.at({2, 1, 1, 1, 1}) == source.at({2, 2, 2}));
    CHECK(source.at({6}) == source.at({3, 2, 1}));
}

TEST_CASE("relabeling the conjugates moves the map by an inner automorphism") {
    const auto& canonical = canonical_report();
    const auto relabeled = build_outer_automorphism(ConjugateLabelOrder::reverse_encounter);
    CHECK(verify_outer(relabeled).all());

    bool found = false;
    for (std::uint64_t z = 0; z < 720 && !found; ++z) {
        const Permutation zeta = nth_permutation(6, z);
        const Permutation zeta_inv = zeta.inverse();
        bool matches = true;
        for (std::uint64_t rank = 0; rank < 720; ++rank) {
            if (relabeled.table[rank] != conjugate(zeta, canonical.table[rank], zeta_inv)) {
                matches = false;
                break;
            }
        }
        found = matches;
    }
    CHECK(found);
}

TEST_CASE("partitioned conjugate scan builds the same report") {
    const auto parallel = build_outer_automorphism(ConjugateLabelOrder::first_encounter, 2);
    const auto& canonical = canonical_report();
    REQUIRE(parallel.table.size() == canonical.table.size());
    for (std::size_t i = 0; i < parallel.table.size(); ++i)
        REQUIRE(parallel.table[i] == canonical.table[i]);
    for (std::size_t i = 0; i < 6; ++i) REQUIRE(parallel.conjugates[i] == canonical.conjugates[i]);
}
