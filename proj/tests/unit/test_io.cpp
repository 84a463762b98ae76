#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "costas/errors.hpp"
#include "costas/io.hpp"

using namespace costas;

namespace {

std::size_t format_error_line(const std::string& text) {
    std::istringstream in(text);
    try {
        io::read_dotset(in);
    } catch (const FormatError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST_CASE("TSV round trip") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 50; ++t) {
        Shape shape;
        for (int j = 0; j < 1 + t % 5; ++j) shape.push_back(1 + static_cast<int>(rng() % 7));
        std::set<Point> pts;
        for (int k = 0; k < 10; ++k) {
            Point p;
            for (int s : shape) p.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(s)));
            pts.insert(p);
        }
        const DotSet d(shape, std::vector<Point>(pts.begin(), pts.end()));
        for (bool one : {false, true}) {
            io::WriteOptions opts{one, nlohmann::json{{"tool", "test"}}};
            std::istringstream in(io::to_tsv(d, opts));
            CHECK(io::read_dotset(in) == d);
        }
    }
}

TEST_CASE("TSV header and body") {
    const DotSet d({2, 3}, {{1, 2}});
    CHECK(io::to_tsv(d) == "# dim=2 shape=2,3\n1\t2\n");
    CHECK(io::to_tsv(d, {true, {}}) == "# dim=2 shape=2,3 base=1\n2\t3\n");
    std::istringstream in("# dim=2 shape=2,3\n# a comment\n\n1 2\r\n");
    CHECK(io::read_dotset(in) == d);
}

TEST_CASE("format errors name the line") {
    CHECK(format_error_line("") == 1);
    CHECK(format_error_line("0\t1\n") == 1);
    CHECK(format_error_line("# dim=2\n") == 1);
    CHECK(format_error_line("# dim=2 shape=3,3 colour=red\n") == 1);
    CHECK(format_error_line("# dim=2 shape=3,3\n0\t1\n0\tx\n") == 3);
    CHECK(format_error_line("# dim=2 shape=3,3\n0\t1\n\n0\t1\t2\n") == 4);
    CHECK(format_error_line("# dim=2 shape=3,3\n0\t3\n") == 2);
    CHECK(format_error_line("# dim=2 shape=3,3 base=1\n0\t1\n") == 2);
    CHECK(format_error_line("# dim=2 shape=3,3\n0\t1\n0\t1\n") == 3);
    std::istringstream in("# dim=2 shape=3,3\n0\tx\n");
    CHECK_THROWS_WITH_AS(io::read_dotset(in), doctest::Contains("line 2"), FormatError);
    CHECK_THROWS_AS(io::read_dotset_file("/nonexistent/file.tsv"), Error);
}

TEST_CASE("permutation formats") {
    std::istringstream a("2,0,1\n");
    CHECK(io::read_permutation(a).map() == std::vector<int>{2, 0, 1});
    std::istringstream b("# idx val\n0 2\n2 1\n1 0\n");
    CHECK(io::read_permutation(b).map() == std::vector<int>{2, 0, 1});
    std::ostringstream out;
    io::write_permutation(out, Permutation({1, 2, 0}));
    CHECK(out.str() == "1,2,0\n");
    std::istringstream round(out.str());
    CHECK(io::read_permutation(round).map() == std::vector<int>{1, 2, 0});

    std::istringstream bad1("0,0,1\n");
    CHECK_THROWS_AS(io::read_permutation(bad1), FormatError);
    std::istringstream bad2("0 1\n0 2\n");
    CHECK_THROWS_AS(io::read_permutation(bad2), FormatError);
    std::istringstream bad3("0 1 2\n1 0\n");
    CHECK_THROWS_AS(io::read_permutation(bad3), FormatError);
    std::istringstream empty("# nothing\n");
    CHECK_THROWS_AS(io::read_permutation(empty), FormatError);
}

TEST_CASE("matrices and tables") {
    std::istringstream m("3,1\n0 2\n");
    CHECK(io::read_matrix(m) == gf::Matrix{{3, 1}, {0, 2}});
    std::istringstream ragged("1,2\n3\n");
    CHECK_THROWS_AS(io::read_matrix(ragged), FormatError);
    std::istringstream neg("1,-2\n");
    CHECK_THROWS_AS(io::read_matrix(neg), FormatError);
    std::istringstream t("1 2 3\n\n# c\n4 5\n");
    CHECK(io::read_table(t) == std::vector<std::vector<int>>{{1, 2, 3}, {4, 5}});
}

TEST_CASE("report json") {
    const auto rep = verify_costas(DotSet({3, 3}, {{0, 0}, {1, 1}, {2, 2}}));
    const auto j = io::to_json(rep);
    CHECK(j["is_costas"] == false);
    CHECK(j["collisions"][0]["difference"] == nlohmann::json({1, 1}));
    const auto c = io::to_json(classify(DotSet({2, 2}, {{0, 0}, {1, 1}})));
    CHECK(c["permutation"] == "yes");
}
