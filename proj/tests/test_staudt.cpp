#include <catch2/catch_amalgamated.hpp>

#include "klein/staudt.hpp"
#include "oracles.hpp"

using namespace klein;

namespace {

ProjSpace line_over(int p, int k) { return ProjSpace::enumerate(Field::make(p, k), 1); }

Matrix matrix_of(const ProjSpace& s, std::vector<int> entries) {
    return Matrix{s.dim() + 1, std::move(entries)};
}

} // namespace

TEST_CASE("projectivize identity") {
    auto s = line_over(5, 1);
    auto id = projectivize(s, {Matrix::identity(2), FieldAut{0}});
    CHECK(id == Permutation::identity(6));
}

TEST_CASE("projectivize rejects singular matrices") {
    auto s = line_over(5, 1);
    CHECK_THROWS_AS(projectivize(s, {matrix_of(s, {1, 2, 2, 4}), FieldAut{0}}),
                    std::invalid_argument);
}

TEST_CASE("the Frobenius permutation of the line over GF(4)") {
    auto s = line_over(2, 2);
    REQUIRE(s.size() == 5);
    auto frob = frobenius_permutation(s, FieldAut{1});
    // squaring swaps the two non-prime scalars, so (1,2) <-> (1,3); the
    // points (0,1), (1,0), (1,1) stay put
    CHECK(frob(s.id_of({0, 1})) == s.id_of({0, 1}));
    CHECK(frob(s.id_of({1, 0})) == s.id_of({1, 0}));
    CHECK(frob(s.id_of({1, 1})) == s.id_of({1, 1}));
    CHECK(frob(s.id_of({1, 2})) == s.id_of({1, 3}));
    CHECK(frob(s.id_of({1, 3})) == s.id_of({1, 2}));
}

TEST_CASE("diagonal matrices act as homotheties on the line") {
    auto s = line_over(5, 1);
    auto patch = AffinePatch::of(s);
    auto perm = projectivize(s, {matrix_of(s, {1, 0, 0, 2}), FieldAut{0}});
    CHECK(perm == line_homothety(patch, 2));
    CHECK(perm(patch.point_for({0})) == patch.point_for({0}));
    CHECK(perm(patch.infinity_ids()[0]) == patch.infinity_ids()[0]);
}

TEST_CASE("semilinear composition matches permutation composition") {
    auto s = line_over(2, 2);
    const Field& f = s.field();
    std::vector<SemilinearMap> maps;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    Matrix m = matrix_of(s, {a, b, c, d});
                    if (mat_det(f, m) == 0) continue;
                    for (int j = 0; j < 2; ++j) maps.push_back({m, FieldAut{j}});
                }
    REQUIRE(maps.size() == 360); // |GL_2(4)| * 2
    for (std::size_t i = 0; i < maps.size(); i += 17)
        for (std::size_t j = 0; j < maps.size(); j += 13) {
            auto lhs = projectivize(s, compose_semilinear(f, maps[i], maps[j]));
            auto rhs = compose(projectivize(s, maps[i]), projectivize(s, maps[j]));
            REQUIRE(lhs == rhs);
        }
}

TEST_CASE("composing the Frobenius twist with itself gives a plain map") {
    auto s = line_over(2, 2);
    const Field& f = s.field();
    SemilinearMap frob{Matrix::identity(2), FieldAut{1}};
    auto square = compose_semilinear(f, frob, frob);
    CHECK(square.h.j == 0);
    CHECK(square.A == Matrix::identity(2));
    SemilinearMap some{matrix_of(s, {1, 2, 0, 1}), FieldAut{1}};
    auto same = compose_semilinear(f, some, SemilinearMap{Matrix::identity(2), FieldAut{0}});
    CHECK(projectivize(s, same) == projectivize(s, some));
}

TEST_CASE("projectivized matrix group orders") {
    // frozen from the classical order formulas
    CHECK(pgl_group(line_over(5, 1)).order() == 120);
    CHECK(pgl_group(line_over(2, 2)).order() == 60);
    CHECK(pgl_group(ProjSpace::enumerate(Field::make(2, 1), 2)).order() == 168);
    CHECK(pgl_group(line_over(5, 1)).order() == oracle::pgl_order(2, 5));
    CHECK(pgl_group(line_over(2, 2)).order() == oracle::pgl_order(2, 4));
}

TEST_CASE("semilinear group orders are |PGL| * k") {
    auto s5 = line_over(5, 1);
    auto pgl5 = pgl_group(s5);
    auto pgammal5 = pgammal_group(s5);
    CHECK(pgammal5.order() == 120);
    CHECK(pgammal5 == pgl5); // trivial Galois group over a prime field

    auto s4 = line_over(2, 2);
    CHECK(pgammal_group(s4).order() == 120); // 60 * 2, and that is all of S_5
    auto s8 = line_over(2, 3);
    CHECK(pgammal_group(s8).order() == 1512); // 504 * 3
    CHECK(pgammal_group(s8).order() == oracle::pgl_order(2, 8) * 3);
}

TEST_CASE("the semilinear-to-linear index divides the extension degree") {
    for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
        auto s = line_over(p, k);
        auto pgl = pgl_group(s);
        auto pgammal = pgammal_group(s);
        REQUIRE(pgammal.order() % pgl.order() == 0);
        CHECK(pgammal.order() / pgl.order() == static_cast<std::uint64_t>(k));
        for (const auto& g : pgl.elements()) REQUIRE(pgammal.contains(g));
    }
}

TEST_CASE("the Frobenius permutation normalizes the homography group") {
    auto s = line_over(2, 2);
    auto pgl = pgl_group(s);
    CHECK(normalizes(frobenius_permutation(s, FieldAut{1}), pgl));
}

TEST_CASE("translations and homotheties on the line over GF(5)") {
    auto s = line_over(5, 1);
    auto patch = AffinePatch::of(s);

    CHECK(line_translation(patch, 0) == Permutation::identity(6));
    CHECK_THROWS_AS(line_homothety(patch, 0), std::invalid_argument);

    auto t2 = line_translation(patch, 2);
    CHECK(t2(patch.point_for({0})) == patch.point_for({2}));
    int fixed = 0;
    for (int i = 0; i < 6; ++i)
        if (t2(i) == i) ++fixed;
    CHECK(fixed == 1); // the point at infinity is the unique fixed point
    CHECK(t2(patch.infinity_ids()[0]) == patch.infinity_ids()[0]);

    auto s2 = line_homothety(patch, 2);
    CHECK(s2(patch.point_for({1})) == patch.point_for({2}));
    CHECK(s2(patch.point_for({2})) == patch.point_for({4}));
    CHECK(s2(patch.point_for({0})) == patch.point_for({0}));
    CHECK(s2(patch.infinity_ids()[0]) == patch.infinity_ids()[0]);

    // both families are homographies
    auto pgl = pgl_group(s);
    for (int mu = 0; mu < 5; ++mu) {
        CHECK(pgl.contains(line_translation(patch, mu)));
        if (mu != 0) CHECK(pgl.contains(line_homothety(patch, mu)));
    }
}

TEST_CASE("scalar extraction from trivial and Frobenius permutations") {
    auto s4 = line_over(2, 2);
    CHECK(extract_field_aut(s4, Permutation::identity(5)) == std::vector<int>{0, 1, 2, 3});
    CHECK(extract_field_aut(s4, frobenius_permutation(s4, FieldAut{1})) ==
          std::vector<int>{0, 1, 3, 2}); // the squaring table of GF(4)
}

TEST_CASE("homographies of the line over GF(5) induce the identity scalar map") {
    auto s = line_over(5, 1);
    auto pgl = pgl_group(s);
    for (const auto& g : pgl.elements())
        REQUIRE(extract_field_aut(s, g) == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("scalar action checks pass on the identity and on semilinear maps") {
    auto s = line_over(2, 2);
    CHECK(check_scalar_action(s, Permutation::identity(5),
                              extract_field_aut(s, Permutation::identity(5)))
              .all());
    auto pgammal = pgammal_group(s);
    for (const auto& g : pgammal.elements()) {
        auto h = extract_field_aut(s, g);
        auto flags = check_scalar_action(s, g, h);
        REQUIRE(flags.all());
    }
}

TEST_CASE("a non-normalizing line bijection fails at least one scalar flag") {
    auto s = line_over(5, 1);
    auto pgammal = pgammal_group(s);
    // first permutation outside the Staudt group in lexicographic order
    std::uint64_t rank = 0;
    while (pgammal.contains(nth_permutation(6, rank))) ++rank;
    auto phi = nth_permutation(6, rank);
    CHECK_FALSE(normalizes(phi, pgl_group(s)));
    auto flags = check_scalar_action(s, phi, extract_field_aut(s, phi));
    CHECK_FALSE(flags.all());
}

TEST_CASE("decomposition round-trips semilinear maps") {
    auto s = line_over(2, 2);
    const Field& f = s.field();
    SemilinearMap original{matrix_of(s, {1, 2, 3, 2}), FieldAut{1}};
    REQUIRE(mat_det(f, original.A) != 0);
    auto phi = projectivize(s, original);
    auto back = decompose_staudt(s, phi);
    REQUIRE(back.has_value());
    CHECK(back->h == original.h); // exactly the same twist
    CHECK(projectivize(s, *back) == phi);
}

TEST_CASE("decomposition succeeds exactly on the Staudt group") {
    auto s5 = line_over(5, 1);
    auto pgammal5 = pgammal_group(s5);
    for (std::uint64_t r = 0; r < factorial(6); ++r) {
        auto phi = nth_permutation(6, r);
        REQUIRE(decompose_staudt(s5, phi).has_value() == pgammal5.contains(phi));
    }

    auto s4 = line_over(2, 2);
    auto pgammal4 = pgammal_group(s4);
    REQUIRE(pgammal4.order() == factorial(5)); // exhausts S_5 ...
    for (std::uint64_t r = 0; r < factorial(5); ++r)
        REQUIRE(decompose_staudt(s4, nth_permutation(5, r)).has_value());

    // ... so the negative witness lives on the Fano plane instead
    auto fano = ProjSpace::enumerate(Field::make(2, 1), 2);
    auto pgl_fano = pgl_group(fano);
    std::optional<Permutation> witness;
    for (std::uint64_t r = 0; r < factorial(7) && !witness; ++r) {
        auto phi = nth_permutation(7, r);
        if (oracle::cycle_type(phi.images()) == std::vector<int>{7} && !pgl_fano.contains(phi))
            witness = phi;
    }
    REQUIRE(witness.has_value()); // a 7-cycle outside the homography group
    CHECK_FALSE(decompose_staudt(fano, *witness).has_value());

    for (const auto& g : pgl_fano.elements())
        REQUIRE(decompose_staudt(fano, g).has_value());
}

TEST_CASE("line census of the Fano plane") {
    auto fano = ProjSpace::enumerate(Field::make(2, 1), 2);
    auto lines = all_lines(fano);
    REQUIRE(lines.size() == 7);
    for (const auto& line : lines) REQUIRE(line.size() == 3);
}

TEST_CASE("homographies preserve alignment; a line-breaking swap does not") {
    auto fano = ProjSpace::enumerate(Field::make(2, 1), 2);
    auto pgl_fano = pgl_group(fano);
    for (const auto& g : pgl_fano.elements()) REQUIRE(is_collineation(fano, g));

    // swap two points of one line, fix the other five points
    const int a = fano.id_of({0, 1, 0});
    const int b = fano.id_of({1, 0, 0});
    std::vector<int> im(7);
    for (int i = 0; i < 7; ++i) im[i] = i;
    std::swap(im[a], im[b]);
    CHECK_FALSE(is_collineation(fano, Permutation(im)));

    auto line = line_over(5, 1);
    CHECK_THROWS_AS(is_collineation(line, Permutation::identity(6)), std::invalid_argument);
}

TEST_CASE("frame closure enumerates exactly the Fano collineations") {
    auto fano = ProjSpace::enumerate(Field::make(2, 1), 2);
    auto collineations = all_collineations_by_frames(fano);
    auto pgl = pgl_group(fano);
    REQUIRE(collineations.size() == 168);
    CHECK(std::vector<Permutation>(pgl.elements()) == collineations);
}

TEST_CASE("frame closure counts the collineations of the plane over GF(3)") {
    auto plane = ProjSpace::enumerate(Field::make(3, 1), 2);
    auto collineations = all_collineations_by_frames(plane);
    REQUIRE(collineations.size() == 5616); // = |PGL_3(3)|, trivial Galois group
    REQUIRE(collineations.size() == oracle::pgl_order(3, 3));
    auto pgl = pgl_group(plane);
    CHECK(std::vector<Permutation>(pgl.elements()) == collineations);
    CHECK_THROWS_AS(all_collineations_by_frames(ProjSpace::enumerate(Field::make(2, 2), 2)),
                    std::invalid_argument); // frame closure needs a prime field
}

TEST_CASE("matrix-derived generators close to the full homography group") {
    auto s = line_over(5, 1);
    auto gens = std::vector<Permutation>{
        projectivize(s, {matrix_of(s, {1, 0, 1, 1}), FieldAut{0}}), // x -> x + 1
        projectivize(s, {matrix_of(s, {1, 0, 0, 2}), FieldAut{0}}), // x -> 2x
        projectivize(s, {matrix_of(s, {0, 1, 1, 0}), FieldAut{0}}), // x -> 1/x
    };
    auto g = PermGroup::generate(gens);
    CHECK(g.order() == 120);
    CHECK(g == pgl_group(s));
}

TEST_CASE("the two-point stabilizer orbit is the homothety orbit") {
    auto s = line_over(5, 1);
    auto patch = AffinePatch::of(s);
    auto pgl = pgl_group(s);
    const int p0 = patch.point_for({0});
    const int pinf = patch.infinity_ids()[0];
    const int p1 = patch.point_for({1});
    auto orbit = stabilizer_orbit(pgl, {p0, pinf}, p1);
    CHECK(orbit == std::set<int>{patch.point_for({1}), patch.point_for({2}),
                                 patch.point_for({3}), patch.point_for({4})});
}

TEST_CASE("transpositions of the line over GF(5) do not normalize the homographies") {
    auto s = line_over(5, 1);
    auto pgl = pgl_group(s);
    // a homography fixing three points is the identity, so no transposition
    // is a homography; pick one and watch a generator conjugate outside
    std::vector<int> im{1, 0, 2, 3, 4, 5};
    Permutation t(im);
    CHECK_FALSE(pgl.contains(t));
    CHECK_FALSE(normalizes(t, pgl));
}
