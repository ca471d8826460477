#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "klein/projective_space.hpp"
#include "oracles.hpp"

using klein::AffinePatch;
using klein::Field;
using klein::ProjSpace;

namespace {

ProjSpace make_space(int p, int k, int n) { return ProjSpace::enumerate(Field::make(p, k), n); }

} // namespace

TEST_CASE("point counts match the formula and the raw dedupe oracle") {
    struct Row {
        int p, k, n;
        int expected;
    };
    // expected values frozen from oracle::raw_point_dedupe over schoolbook tables
    for (auto [p, k, n, expected] : {Row{5, 1, 1, 6}, Row{2, 1, 2, 7}, Row{3, 1, 2, 13},
                                     Row{2, 2, 1, 5}, Row{2, 3, 1, 9}, Row{3, 2, 1, 10},
                                     Row{7, 1, 1, 8}, Row{2, 2, 2, 21}}) {
        auto s = make_space(p, k, n);
        REQUIRE(s.size() == expected);
        auto f = s.field();
        auto mul = oracle::schoolbook_mul_table(p, k, f.modulus());
        REQUIRE(oracle::raw_point_dedupe(mul, n) == static_cast<std::uint64_t>(expected));
        REQUIRE(static_cast<std::uint64_t>(expected) ==
                oracle::projective_point_count(static_cast<std::uint64_t>(f.order()), n));
    }
}

TEST_CASE("point ids follow lexicographic order of canonical coordinates") {
    auto s = make_space(5, 1, 1);
    REQUIRE(s.size() == 6);
    CHECK(s.point(0).coords == std::vector<int>{0, 1});
    CHECK(s.point(1).coords == std::vector<int>{1, 0});
    CHECK(s.point(2).coords == std::vector<int>{1, 1});
    CHECK(s.point(3).coords == std::vector<int>{1, 2});
    CHECK(s.point(4).coords == std::vector<int>{1, 3});
    CHECK(s.point(5).coords == std::vector<int>{1, 4});
}

TEST_CASE("every coordinate vector resolves to its canonical point") {
    auto s = make_space(3, 1, 2);
    for (int id = 0; id < s.size(); ++id) {
        const auto& c = s.point(id).coords;
        for (int scalar = 1; scalar < 3; ++scalar) {
            std::vector<int> v(c.size());
            for (std::size_t i = 0; i < c.size(); ++i) v[i] = s.field().mul(scalar, c[i]);
            REQUIRE(s.id_of(v) == id);
        }
    }
    CHECK_THROWS_AS(s.id_of(std::vector<int>{0, 0, 0}), std::invalid_argument);
}

TEST_CASE("enumeration cap is enforced") {
    CHECK_THROWS_AS(ProjSpace::enumerate(Field::make(2, 1), 12), klein::cap_exceeded);
}

TEST_CASE("collinearity on the Fano plane") {
    auto s = make_space(2, 1, 2);
    const int e1 = s.id_of({1, 0, 0});
    const int e2 = s.id_of({0, 1, 0});
    const int e3 = s.id_of({0, 0, 1});
    const int e12 = s.id_of({1, 1, 0});
    CHECK_FALSE(s.collinear_rank(e1, e2, e3));
    CHECK(s.collinear_rank(e1, e2, e12));
    CHECK_THROWS_AS(s.collinear_rank(e1, e1, e2), std::invalid_argument);
}

TEST_CASE("the projective line is a single line") {
    auto s = make_space(5, 1, 1);
    for (int a = 0; a < s.size(); ++a)
        for (int b = a + 1; b < s.size(); ++b) {
            REQUIRE(s.line_through(a, b).size() == 6);
            for (int c = b + 1; c < s.size(); ++c) REQUIRE(s.collinear_rank(a, b, c));
        }
}

TEST_CASE("collinear_rank is symmetric in its arguments") {
    auto s = make_space(2, 1, 2);
    for (int a = 0; a < s.size(); ++a)
        for (int b = 0; b < s.size(); ++b)
            for (int c = 0; c < s.size(); ++c) {
                if (a == b || a == c || b == c) continue;
                const bool v = s.collinear_rank(a, b, c);
                REQUIRE(s.collinear_rank(b, a, c) == v);
                REQUIRE(s.collinear_rank(c, b, a) == v);
                REQUIRE(s.collinear_rank(a, c, b) == v);
            }
}

TEST_CASE("line sizes and the one-line-per-pair property") {
    for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}}) {
        auto s = make_space(p, 1, n);
        const int q = s.field().order();
        std::map<std::pair<int, int>, std::vector<int>> line_of_pair;
        std::set<std::vector<int>> lines;
        for (int a = 0; a < s.size(); ++a)
            for (int b = a + 1; b < s.size(); ++b) {
                auto line = s.line_through(a, b);
                REQUIRE(static_cast<int>(line.size()) == q + 1);
                line_of_pair[{a, b}] = line;
                lines.insert(line);
            }
        // two distinct points lie on exactly one line: the line through any
        // pair of points of a line is that same line
        for (const auto& line : lines)
            for (std::size_t i = 0; i < line.size(); ++i)
                for (std::size_t j = i + 1; j < line.size(); ++j)
                    REQUIRE(line_of_pair[{line[i], line[j]}] == line);
        // line census: P_2 has as many lines as points
        if (n == 2) REQUIRE(lines.size() == static_cast<std::size_t>(s.size()));
    }
    auto s = make_space(3, 1, 2);
    CHECK_THROWS_AS(s.line_through(2, 2), std::invalid_argument);
}

TEST_CASE("affine patch splits the space at x0 = 0") {
    struct Row {
        int p, k, n, affine, infinity;
    };
    for (auto [p, k, n, affine, infinity] :
         {Row{5, 1, 1, 5, 1}, Row{3, 1, 2, 9, 4}, Row{2, 1, 2, 4, 3}, Row{2, 2, 1, 4, 1}}) {
        auto s = make_space(p, k, n);
        auto patch = AffinePatch::of(s);
        REQUIRE(patch.affine_count() == affine);
        REQUIRE(static_cast<int>(patch.infinity_ids().size()) == infinity);
        for (int id : patch.infinity_ids()) REQUIRE(s.point(id).coords[0] == 0);
        for (int id : patch.affine_ids()) {
            REQUIRE(s.point(id).coords[0] == 1);
            REQUIRE(patch.point_for(patch.affine_coords(id)) == id);
        }
    }
}

TEST_CASE("affine coordinates agree with homogeneous ones") {
    auto s = make_space(3, 1, 2);
    auto patch = AffinePatch::of(s);
    for (int a0 = 0; a0 < 3; ++a0)
        for (int a1 = 0; a1 < 3; ++a1) {
            int id = patch.point_for({a0, a1});
            REQUIRE(s.point(id).coords == std::vector<int>{1, a0, a1});
        }
}
