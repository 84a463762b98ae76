#include <doctest.h>

#include <random>
#include <set>

#include "costas/construct.hpp"
#include "costas/io.hpp"
#include "costas/welch.hpp"

using namespace costas;
using namespace costas::welch;

namespace {

gf::FieldCtx f27() { return gf::FieldCtx(3, {1, 0, 2, 1}); }
gf::FieldCtx f25() { return gf::FieldCtx(5, {1, 1, 2}); }

WelchParams table6() {
    auto ctx = f27();
    return WelchParams{ctx, ctx.make({0, 1, 0}), 1, std::nullopt};
}

WelchParams table7() {
    auto ctx = f25();
    return WelchParams{ctx, ctx.make({2, 0}), 1, gf::BasisMatrix(5, {{3, 1}, {0, 2}})};
}

}  // namespace

TEST_CASE("Table 6 rows") {
    const auto rows = welch_rows(table6());
    REQUIRE(rows.size() == 26);
    CHECK(rows[0] == std::vector<gf::Coeff>{0, 1, 0});
    CHECK(rows[1] == std::vector<gf::Coeff>{1, 0, 0});
    CHECK(rows[2] == std::vector<gf::Coeff>{0, 1, 2});

    const DotSet rect = welch_rect(table6());
    CHECK(rect.shape() == Shape{26, 3, 3, 3});
    CHECK(rect.dots()[2] == Point{2, 0, 1, 2});
    CHECK(verify_costas(rect).is_costas);

    const DotSet cube = welch_cube(table6());
    CHECK(cube.shape() == Shape(6, 3));
    CHECK(cube.dots()[0] == Point{0, 0, 1, 0, 1, 0});
    CHECK(verify_costas(cube).is_costas);
    CHECK(verify_costas(add_corner_dot(cube)).is_costas);
    CHECK(classify(add_corner_dot(cube)).permutation == Flag::yes);
}

TEST_CASE("Table 7 uses the recomputed inverse") {
    const auto rows = welch_rows(table7());
    // g^1 = 2x -> (2,0) B^-1 = (4,3)
    CHECK(rows[0] == std::vector<gf::Coeff>{4, 3});
    CHECK(verify_costas(welch_cube(table7())).is_costas);
    CHECK(verify_costas(add_corner_dot(welch_cube(table7()))).is_costas);
}

TEST_CASE("Table 8 corner dots") {
    auto ctx = f27();
    const auto b = ctx.make({2, 0, 0});
    WelchParams w{ctx, b, 1, std::nullopt};
    CHECK(welch_rows(w)[0] == std::vector<gf::Coeff>{2, 0, 0});
    CHECK_FALSE(verify_costas(welch_rect_corner(w)).is_costas);
    w.basis = gf::normal_basis_from(ctx, b).matrix;
    CHECK(welch_rows(w)[0] == std::vector<gf::Coeff>{1, 0, 0});
    CHECK(verify_costas(welch_rect(w)).is_costas);
    CHECK_FALSE(verify_costas(welch_rect_corner(w)).is_costas);
    CHECK(verify_costas(add_corner_dot(welch_cube(w))).is_costas);
}

TEST_CASE("cubes are almost permutation hypercubes") {
    for (const auto& w : {table6(), table7()}) {
        const DotSet cube = welch_cube(w);
        const std::size_t m = w.ctx.m();
        std::set<Point> left, right;
        for (const auto& p : cube.dots()) {
            left.insert(Point(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(m)));
            right.insert(Point(p.begin() + static_cast<std::ptrdiff_t>(m), p.end()));
        }
        CHECK(left.size() == w.ctx.q() - 1);
        CHECK(right.size() == w.ctx.q() - 1);
        CHECK_FALSE(left.count(Point(m, 0)));
        CHECK_FALSE(right.count(Point(m, 0)));
    }
}

TEST_CASE("Welch permutations") {
    const auto r6 = welch_perm(table6());
    CHECK(r6.perm.order() == 26);
    CHECK(r6.perm[0] == 2);  // (0,1,0) -> 3, 0-based 2
    CHECK(r6.perm[1] == 8);  // (1,0,0) -> 9
    CHECK_FALSE(r6.report.is_costas);
    CHECK_FALSE(welch_perm(table7()).report.is_costas);

    // m = 1 gives the ordinary exponential Welch array
    const gf::FieldCtx f11(11, {1, 0});
    const auto r = welch_perm(WelchParams{f11, f11.make({2}), 0, std::nullopt});
    CHECK(r.report.is_costas);
    CHECK(r.perm == welch_w1(11, 2, 0));
}

TEST_CASE("the printed least-significant-first Welch permutations also fail") {
    for (const char* name : {"/table6_perm.txt", "/table7_perm.txt"}) {
        std::vector<int> map;
        for (const auto& row : io::read_table_file(std::string(COSTAS_FIXTURE_DIR) + name)) map.push_back(row[1] - 1);
        CHECK_FALSE(verify_costas(Permutation(map).to_dotset()).is_costas);
    }
}

TEST_CASE("shift family") {
    const auto fam = welch_shift_family(table6());
    REQUIRE(fam.size() == 26);
    CHECK(fam[0] == welch_cube(table6()));
    std::set<std::vector<Point>> distinct;
    for (const auto& d : fam) {
        CHECK(verify_costas(d).is_costas);
        distinct.insert(d.sorted().dots());
    }
    CHECK(distinct.size() == 26);
    // shifting by k from offset c equals shifting by k - k' from offset c + k'
    const WelchParams w = table6();
    CHECK(welch_shift(w, 7) == welch_shift(WelchParams{w.ctx, w.g, w.c + 3, std::nullopt}, 4));
    CHECK(welch_shift(w, 25) == welch_shift(WelchParams{w.ctx, w.g, 0, std::nullopt}, 0));
    CHECK_THROWS(welch_shift(table6(), 26));
}

TEST_CASE("basis change acts on the field block") {
    std::mt19937_64 rng(2);
    auto ctx = f25();
    const auto g = ctx.make({2, 0});
    const gf::BasisMatrix b1(5, {{3, 1}, {0, 2}});
    const gf::BasisMatrix b2(5, {{1, 2}, {3, 3}});
    const auto r1 = welch_rows(WelchParams{ctx, g, 0, b1});
    const auto r2 = welch_rows(WelchParams{ctx, g, 0, b2});
    const gf::Matrix link = gf::mat_mul(5, b1.entries(), b2.inverse());
    for (std::size_t i = 0; i < r1.size(); ++i) CHECK(gf::row_times(5, r1[i], link) == r2[i]);
}

TEST_CASE("rotational structure") {
    auto ctx = f27();
    CHECK(rotational_check(ctx, gf::normal_basis_from(ctx, ctx.make({2, 0, 0})).matrix));
    const gf::FieldCtx f9(3, {1, 0, 1});
    CHECK_FALSE(rotational_check(f9, gf::BasisMatrix::identity(3, 2)));
    const gf::FieldCtx f7(7, {1, 0});
    CHECK(rotational_check(f7, gf::BasisMatrix::identity(7, 1)));
}

TEST_CASE("validation") {
    auto ctx = f27();
    CHECK_THROWS(welch_rect(WelchParams{ctx, ctx.one(), 0, std::nullopt}));
    CHECK_THROWS(welch_rect(WelchParams{ctx, ctx.make({0, 1, 0}), 26, std::nullopt}));
    CHECK_THROWS(welch_rect(WelchParams{ctx, ctx.make({0, 1, 0}), 0, gf::BasisMatrix::identity(3, 2)}));
}
