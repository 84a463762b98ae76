#include <doctest.h>

#include <random>

#include "costas/construct.hpp"
#include "costas/io.hpp"
#include "costas/reshape.hpp"

using namespace costas;

TEST_CASE("radix schemes") {
    CHECK(RadixScheme::parse("4x4x2").radices() == std::vector<int>{4, 4, 2});
    CHECK(RadixScheme::parse("5x5").order() == 25);
    CHECK_THROWS(RadixScheme({1, 5}));
    CHECK_THROWS(RadixScheme::parse("5x"));
    CHECK_THROWS(RadixScheme::parse("axb"));
}

TEST_CASE("expand and collapse") {
    const RadixScheme s33({3, 3});
    CHECK(expand(7, s33) == std::vector<int>{2, 1});
    CHECK(expand(10, RadixScheme({5, 5})) == std::vector<int>{2, 0});
    CHECK(collapse(std::vector<int>{2, 1}, s33) == 7);
    CHECK(collapse(std::vector<int>{-1, 2}, s33) == -1);
    CHECK_THROWS(collapse(std::vector<int>{3, 0}, s33));
    CHECK_THROWS(expand(9, s33));
    CHECK_THROWS(expand(-1, s33));

    const RadixScheme mixed({2, 3, 4});
    for (std::int64_t i = 0; i < mixed.order(); ++i) CHECK(collapse(expand(i, mixed), mixed) == i);
}

TEST_CASE("radix factorizations") {
    const auto f = radix_factorizations(12);
    // 12, 2x6, 6x2, 3x4, 4x3, 2x2x3, 2x3x2, 3x2x2
    CHECK(f.size() == 8);
    for (const auto& s : f) CHECK(s.order() == 12);
    CHECK(radix_factorizations(7).size() == 1);
}

TEST_CASE("reshape_even of Table 3") {
    const Permutation perm = io::read_permutation_file(COSTAS_FIXTURE_DIR "/table3_perm.txt");
    const DotSet d = reshape_even(perm, RadixScheme({5, 5}));
    CHECK(d.shape() == Shape{5, 5, 5, 5});
    CHECK(d.size() == 25);
    CHECK(verify_costas(d).is_costas);
    CHECK(classify(d).permutation == Flag::yes);
    // row 0 -> 10 prints as "0 0 0 2": V(0) = (0,0), V(10) = (2,0) least significant first
    CHECK(d.dots()[0] == Point{0, 0, 2, 0});
}

TEST_CASE("single radix reshape is the identity") {
    const Permutation w = welch_w1(11, 2, 0);
    CHECK(reshape_even(w, RadixScheme({10})) == w.to_dotset());
}

TEST_CASE("reshape rejects non-Costas input unless told not to") {
    const Permutation id = Permutation::identity(4);
    CHECK_THROWS(reshape_even(id, RadixScheme({2, 2})));
    CHECK(reshape_even(id, RadixScheme({2, 2}), ReshapeOptions{true}).size() == 4);
    CHECK_THROWS(reshape_even(welch_w1(7, 3, 0), RadixScheme({2, 2})));
}

TEST_CASE("reshape difference vectors collapse to the originals") {
    const Permutation g = golomb_g2(gf::FieldCtx::with_default_modulus(2, 5));  // order 30
    for (const auto& scheme : radix_factorizations(30)) {
        const DotSet d = reshape_even(g, scheme);
        CHECK(verify_costas(d).is_costas);
        const std::size_t m = scheme.size();
        for (std::size_t a = 0; a < d.size(); a += 3) {
            for (std::size_t b = a + 1; b < d.size(); b += 5) {
                std::vector<int> left(m), right(m);
                for (std::size_t j = 0; j < m; ++j) {
                    left[j] = d.dots()[a][j] - d.dots()[b][j];
                    right[j] = d.dots()[a][m + j] - d.dots()[b][m + j];
                }
                CHECK(collapse(left, scheme) == static_cast<std::int64_t>(a) - static_cast<std::int64_t>(b));
                CHECK(collapse(right, scheme) == g[a] - g[b]);
            }
        }
    }
}

TEST_CASE("reshaping squares keeps them incomplete") {
    const DotSet sq = embed_incomplete(welch_w1(7, 3, 0), 8);
    const DotSet d = reshape_even(sq, RadixScheme({2, 4}));
    CHECK(verify_costas(d).is_costas);
    CHECK(classify(d).permutation == Flag::no);
    CHECK(embed_incomplete(welch_w1(7, 3, 0), 6) == welch_w1(7, 3, 0).to_dotset());
    CHECK_THROWS(embed_incomplete(welch_w1(7, 3, 0), 5));
}

TEST_CASE("reshape_odd reproduces the printed Table 4 cube before repair") {
    const Permutation perm = io::read_permutation_file(COSTAS_FIXTURE_DIR "/table4_perm.txt");
    const HeuristicReport rep = reshape_odd(perm, 9, 1);
    CHECK(rep.intermediate.shape() == Shape{3, 9, 3, 9});
    CHECK(verify_costas(rep.intermediate).is_costas);
    CHECK(rep.raw.shape() == Shape{9, 9, 9});
    CHECK(rep.raw.size() == 27);
    // row i = 1 -> g(1) = 2: combined 3*0 + 0, then v1(i) = 1, v1(g) = 2
    CHECK(rep.raw.dots()[1] == Point{0, 1, 2});
    CHECK(rep.pre_repair_fraction > 0.95);
    CHECK(verify_costas(rep.result).is_costas);
    CHECK(rep.result.size() + rep.removed.size() == 27);
    for (const auto& p : rep.removed) CHECK_FALSE(rep.result.contains(p));
}

TEST_CASE("reshape_odd preconditions") {
    const Permutation perm = welch_w1(29, 2, 0);  // order 28
    CHECK_THROWS(reshape_odd(perm, 9, 1));
    CHECK_THROWS(reshape_odd(perm, 8, 1));
    CHECK_THROWS(reshape_odd(perm, 4, 0));
}

TEST_CASE("repair removes the worst dot first") {
    DotSet d({3, 3}, {{0, 0}, {1, 1}, {2, 2}});
    const auto removed = repair_costas(d);
    CHECK(removed == std::vector<Point>{{1, 1}});
    CHECK(d.size() == 2);
}

TEST_CASE("extending a dimension keeps Costas") {
    const DotSet cube = reshape_even(welch_w1(17, 3, 0), RadixScheme({4, 4}));
    const std::vector<int> zeros(cube.size(), 0);
    const DotSet flat = extend_dimension(cube, 4, std::span<const int>(zeros));
    CHECK(flat.dim() == 5);
    CHECK(verify_costas(flat).is_costas);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const DotSet r = extend_dimension(cube, 4, std::nullopt, seed);
        CHECK(verify_costas(r).is_costas);
        CHECK(r == extend_dimension(cube, 4, std::nullopt, seed));
    }
    CHECK_THROWS(extend_dimension(cube, 4, std::nullopt, std::nullopt));
    const std::vector<int> bad(cube.size(), 4);
    CHECK_THROWS(extend_dimension(cube, 4, std::span<const int>(bad)));
}
