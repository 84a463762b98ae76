#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "costas/construct.hpp"
#include "costas/search.hpp"

using namespace costas;
using namespace costas::search;

namespace {

// Oracle: all ordered differences of a point list.
std::vector<Point> differences(const std::vector<Point>& dots) {
    std::set<Point> out;
    for (const auto& a : dots)
        for (const auto& b : dots)
            if (a != b) {
                Point d(a.size());
                for (std::size_t j = 0; j < a.size(); ++j) d[j] = a[j] - b[j];
                out.insert(d);
            }
    return {out.begin(), out.end()};
}

Point random_point(std::mt19937_64& rng, const Shape& shape) {
    Point p;
    for (int s : shape) p.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(s)));
    return p;
}

}  // namespace

TEST_CASE("splitmix64 reference values") {
    // first outputs of the reference generator seeded with 0
    CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
    CHECK(restart_seed(5, 0) != restart_seed(5, 1));
}

TEST_CASE("incremental packer agrees with the from-scratch verifier") {
    std::mt19937_64 rng(11);
    const std::vector<Shape> shapes{{7}, {5, 5}, {3, 4}, {4, 4, 4}, {2, 3, 4}, {3, 3, 3, 3}};
    for (int t = 0; t < 400; ++t) {
        const Shape& shape = shapes[t % shapes.size()];
        IncrementalPacker packer(shape);
        std::vector<Point> kept;
        for (int k = 0; k < 12; ++k) {
            const Point p = random_point(rng, shape);
            std::vector<Point> trial = kept;
            trial.push_back(p);
            bool expect = std::find(kept.begin(), kept.end(), p) == kept.end();
            if (expect) expect = verify_costas(DotSet(shape, trial)).is_costas;
            CHECK(packer.try_add(p) == expect);
            if (expect) kept = trial;
            CHECK(packer.dots() == kept);
            CHECK(packer.difference_set() == differences(kept));
        }
        packer.clear();
        CHECK(packer.size() == 0);
        CHECK(packer.difference_set().empty());
    }
}

TEST_CASE("packer validates") {
    CHECK_THROWS(IncrementalPacker(Shape{}));
    CHECK_THROWS(IncrementalPacker(Shape{3, 0}));
    IncrementalPacker p({3, 3});
    CHECK_THROWS(p.try_add({3, 0}));
    CHECK_THROWS(p.try_add({0}));
}

TEST_CASE("a 2x2 box holds three dots") {
    // brute force over all subsets
    std::size_t best = 0;
    const std::vector<Point> cells{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    for (unsigned mask = 0; mask < 16; ++mask) {
        std::vector<Point> s;
        for (unsigned b = 0; b < 4; ++b)
            if (mask >> b & 1) s.push_back(cells[b]);
        if (verify_costas(DotSet({2, 2}, s)).is_costas) best = std::max(best, s.size());
    }
    CHECK(best == 3);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        SearchConfig cfg{{2, 2}, 20, seed};
        const auto res = greedy_pack(cfg);
        CHECK(res.best.size() == 3);
        CHECK(verify_costas(res.best).is_costas);
        std::uint64_t total = 0;
        for (auto [k, v] : res.histogram) total += v;
        CHECK(total == 20);
    }
}

TEST_CASE("search is deterministic and thread independent") {
    SearchConfig cfg{{4, 4, 4}, 60, 42};
    const auto a = greedy_pack(cfg);
    const auto b = greedy_pack(cfg);
    CHECK(a.best == b.best);
    CHECK(a.histogram == b.histogram);
    cfg.threads = 4;
    const auto c = greedy_pack(cfg);
    CHECK(c.best == a.best);
    CHECK(c.histogram == a.histogram);
    CHECK(verify_costas(a.best).is_costas);
    CHECK_THROWS(greedy_pack(SearchConfig{{3, 3}, 0, 1}));
}

TEST_CASE("one-dimensional search yields a Golomb ruler") {
    const auto res = greedy_pack(SearchConfig{{30}, 50, 3});
    std::vector<long long> marks;
    const DotSet sorted = res.best.sorted();
    for (const auto& p : sorted.dots()) marks.push_back(p[0]);
    CHECK(is_golomb_ruler(marks));
    CHECK(marks.size() >= 5);
}

TEST_CASE("candidate lists are clipped to the box") {
    SearchConfig cfg{{3, 3}, 10, 1};
    cfg.candidates = {{0, 0}, {5, 5}, {1, 2}, {0, 0}};
    const auto res = greedy_pack(cfg);
    CHECK(res.best.size() == 2);
    cfg.candidates = {{7, 7}};
    CHECK(greedy_pack(cfg).best.size() == 0);
}

TEST_CASE("slice generators") {
    const gf::FieldCtx f5(5, {1, 0});
    CHECK(slice_candidates(3, SliceParams{f5}).size() == 16);
    for (int v = 1; v <= 4; ++v) {
        const DotSet d = slice_dotset(v, SliceParams{f5});
        CHECK(d.shape() == Shape(3, 4));
        CHECK(d.size() > 0);
    }
    // variant 1: a^i + a^j + a^k = 0 has exactly one k whenever a^i + a^j != 0
    const gf::FieldCtx f7(7, {1, 0});
    CHECK(slice_candidates(1, SliceParams{f7}).size() == 36 - 6);
    CHECK_THROWS(slice_candidates(5, SliceParams{f5}));
    CHECK_THROWS(slice_candidates(2, SliceParams{gf::FieldCtx(3, {1, 0, 1})}));
    CHECK_THROWS(slice_candidates(3, SliceParams{f5, 3, {f5.make({4})}, {}}));
}

TEST_CASE("slice sets are not Costas") {
    for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
        const gf::FieldCtx f(p, {1, 0});
        for (int v = 1; v <= 4; ++v) CHECK_FALSE(verify_costas(slice_dotset(v, SliceParams{f})).is_costas);
    }
}

TEST_CASE("sieved search never beats the full lattice by construction") {
    const gf::FieldCtx f7(7, {1, 0});
    SearchConfig full{{6, 6, 6}, 40, 9};
    SearchConfig sieved = full;
    sieved.candidates = slice_candidates(1, SliceParams{f7});
    const auto a = greedy_pack(full);
    const auto b = greedy_pack(sieved);
    CHECK(verify_costas(b.best).is_costas);
    for (const auto& p : b.best.dots()) CHECK(std::find(sieved.candidates.begin(), sieved.candidates.end(), p) != sieved.candidates.end());
    CHECK(b.best.size() <= a.best.size());
}

TEST_CASE("overlap and blank lines") {
    const DotSet a({3, 3}, {{0, 0}, {1, 2}});
    const DotSet b({3, 3}, {{1, 2}, {2, 1}});
    CHECK(overlap(a, b) == 1);
    CHECK_THROWS(overlap(a, DotSet({3, 4}, {})));
    const auto bl = blank_lines(a);
    CHECK(bl.rows == std::vector<int>{2});
    CHECK(bl.columns == std::vector<int>{1});
    CHECK(blank_lines(welch_w1(7, 3, 0).to_dotset()).rows.empty());
    CHECK_THROWS(blank_lines(DotSet({2, 2, 2}, {})));
}
