#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "costas/io.hpp"

using namespace costas;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name, const std::string& body) {
    const fs::path p = fs::temp_directory_path() / ("costas-cli-" + name);
    std::ofstream(p) << body;
    return p;
}

DotSet parse_tsv(const std::string& text) {
    std::istringstream in(text);
    return io::read_dotset(in);
}

}  // namespace

TEST_CASE("toeplitz output round trips with provenance") {
    const Run r = run({"toeplitz", "--n", "4", "--m", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("# provenance=") != std::string::npos);
    CHECK(r.out.find("\"format_version\":\"1\"") != std::string::npos);
    CHECK(parse_tsv(r.out) == toeplitz_hypercube(4, 5));
    const Run one = run({"--one-based", "toeplitz", "--n", "4", "--m", "5"});
    CHECK(one.out.find("base=1") != std::string::npos);
    CHECK(one.out.find("1\t4\t3\t2\t1\n") != std::string::npos);
    CHECK(parse_tsv(one.out) == toeplitz_hypercube(4, 5));
}

TEST_CASE("verify exit codes") {
    const fs::path good = temp_file("good.tsv", io::to_tsv(welch_w1(7, 3, 0).to_dotset()));
    const fs::path bad = temp_file("bad.tsv", "# dim=2 shape=3,3\n0\t0\n1\t1\n2\t2\n");
    const fs::path broken = temp_file("broken.tsv", "# dim=2 shape=3,3\n0\tq\n");
    const Run a = run({"verify", good.string()});
    CHECK(a.code == 0);
    CHECK(nlohmann::json::parse(a.out)["is_costas"] == true);
    const Run b = run({"verify", bad.string()});
    CHECK(b.code == 1);
    CHECK(nlohmann::json::parse(b.out)["collisions"].size() == 1);
    const Run c = run({"verify", broken.string()});
    CHECK(c.code == 2);
    CHECK(c.err.find("line 2") != std::string::npos);
    const fs::path perm = temp_file("perm.txt", "1,3,2,0\n");
    CHECK(run({"verify", "--perm", perm.string()}).code == 0);
    const Run cls = run({"classify", "--perm", perm.string()});
    CHECK(nlohmann::json::parse(cls.out)["permutation"] == "yes");
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"toeplitz", "--n", "5", "--m", "4"}).code == 2);
    CHECK(run({"toeplitz", "--n", "x", "--m", "4"}).code == 2);
    CHECK(run({"search", "--shape", "3x0"}).code == 2);
    CHECK(run({"welch", "--p", "3", "--m", "3", "--modulus", "1,0,1"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("reshape and welch subcommands") {
    const fs::path perm = temp_file("w17.txt", "");
    const fs::path small = temp_file("w7.txt", "");
    {
        std::ofstream f(perm);
        io::write_permutation(f, welch_w1(17, 3, 0));
        std::ofstream g(small);
        io::write_permutation(g, welch_w1(7, 3, 0));
    }
    const Run r = run({"reshape-even", "--perm", perm.string(), "--radices", "4x4"});
    CHECK(r.code == 0);
    CHECK(verify_costas(parse_tsv(r.out)).is_costas);
    const Run odd = run({"reshape-odd", "--perm", small.string(), "--n", "4", "--m", "1"});
    CHECK(odd.code == 0);
    CHECK(parse_tsv(odd.out).dim() == 3);
    CHECK(odd.out.find("\"embedded_from\":6") != std::string::npos);
    CHECK(run({"reshape-odd", "--perm", perm.string(), "--n", "4", "--m", "1"}).code == 2);
    const Run w = run({"welch", "--p", "3", "--m", "3", "--modulus", "1,0,2,1", "--g", "0,1,0", "--c", "1", "--cube"});
    CHECK(w.code == 0);
    CHECK(parse_tsv(w.out).size() == 26);
    const Run wp = run({"welch-perm", "--p", "3", "--m", "3", "--modulus", "1,0,2,1", "--g", "0,1,0", "--c", "1"});
    CHECK(wp.code == 0);
    CHECK(run({"w1", "--p", "11"}).code == 0);
    CHECK(run({"g2", "--p", "3", "--m", "3"}).code == 0);
}

TEST_CASE("search writes a Costas set and statistics") {
    const Run r = run({"search", "--shape", "4x4x4", "--restarts", "20", "--seed", "7", "--threads", "1"});
    CHECK(r.code == 0);
    const DotSet d = parse_tsv(r.out);
    CHECK(verify_costas(d).is_costas);
    const auto stats = nlohmann::json::parse(r.err);
    CHECK(stats["dots"] == d.size());
    CHECK(stats["seed"] == 7);
    const Run again = run({"search", "--shape", "4x4x4", "--restarts", "20", "--seed", "7", "--threads", "1"});
    CHECK(parse_tsv(again.out) == d);
    const Run sieved = run({"search", "--shape", "5x5x5", "--restarts", "10", "--seed", "1", "--sieve", "golomb"});
    CHECK(sieved.code == 0);
    CHECK(verify_costas(parse_tsv(sieved.out)).is_costas);
}

TEST_CASE("applicability") {
    const Run r = run({"applicability", "--n", "4", "--m", "1"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["forms"][0]["satisfied"] == true);
    const Run s = run({"applicability", "scan", "--form", "1", "--n", "2..20", "--m", "4"});
    CHECK(s.code == 0);
    std::vector<int> ns;
    const auto parsed = nlohmann::json::parse(s.out);
    for (const auto& w : parsed["solutions"]) ns.push_back(w["n"].get<int>());
    CHECK(ns == std::vector<int>{2, 4, 6, 16, 20});
    CHECK(run({"applicability", "--n", "2", "--m", "70"}).code == 2);
}

TEST_CASE("fixtures verify-all") {
    const Run r = run({"fixtures", "verify-all"});
    CHECK(r.code == 0);
    CHECK(r.out.find("21/21 tables reproduced") != std::string::npos);
    CHECK(run({"fixtures", "verify-all", "--dir", "/nonexistent/dir"}).code == 2);
}
