#include "costas/fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "costas/errors.hpp"
#include "costas/gf.hpp"
#include "costas/io.hpp"
#include "costas/reshape.hpp"
#include "costas/welch.hpp"

#ifndef COSTAS_FIXTURE_DIR
#define COSTAS_FIXTURE_DIR "fixtures"
#endif

namespace costas::fixtures {

using nlohmann::json;

namespace {

struct Mismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Mismatch(what);
}

int from_digits_reversed(int v, int p, int m) {
    int out = 0;
    for (int k = 0; k < m; ++k) {
        out = out * p + v % p;
        v /= p;
    }
    require(v == 0, "value has more than m base-p digits");
    return out;
}

welch::WelchParams welch_params(const json& gen) {
    const auto p = gen.at("p").get<std::uint32_t>();
    gf::FieldCtx ctx(p, gf::parse_poly(gen.at("modulus").get<std::string>()));
    welch::WelchParams w{ctx, ctx.make(gf::parse_poly(gen.at("g").get<std::string>())), gen.value("c", 0ULL),
                         std::nullopt};
    if (gen.contains("basis")) {
        w.basis = gf::BasisMatrix(p, gen.at("basis").get<gf::Matrix>());
    } else if (gen.contains("normal_basis_of")) {
        w.basis = gf::normal_basis_from(ctx, ctx.make(gf::parse_poly(gen.at("normal_basis_of").get<std::string>())))
                      .matrix;
    }
    return w;
}

DotSet odd_stage(const json& gen, const std::filesystem::path& dir, std::size_t* removed) {
    const Permutation perm = io::read_permutation_file((dir / gen.at("perm").get<std::string>()).string());
    const DotSet square = gen.contains("embed") ? embed_incomplete(perm, gen.at("embed").get<int>()) : perm.to_dotset();
    HeuristicReport rep = reshape_odd(square, gen.at("n").get<int>(), gen.at("m").get<int>());
    if (removed) *removed = rep.removed.size();
    const std::string stage = gen.at("stage").get<std::string>();
    if (stage == "intermediate") return rep.intermediate;
    if (stage == "raw") return rep.raw;
    return rep.result;
}

std::string point_text(const Point& p) {
    std::ostringstream os;
    for (std::size_t j = 0; j < p.size(); ++j) os << (j ? " " : "") << p[j];
    return os.str();
}

void compare_dots(const DotSet& want, const std::vector<Point>& rows, bool as_set) {
    require(rows.size() == want.size(),
            "expected " + std::to_string(want.size()) + " rows, found " + std::to_string(rows.size()));
    if (as_set) {
        for (const auto& r : rows) require(want.contains(r), "row not in generated set: " + point_text(r));
        return;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        require(rows[i] == want.dots()[i], "row " + std::to_string(i + 1) + " is " + point_text(rows[i]) +
                                               ", generated " + point_text(want.dots()[i]));
    }
}

void check_expect(const json& expect, const DotSet& d, std::optional<std::size_t> removed,
                  const std::optional<DotSet>& with_corner = std::nullopt) {
    if (expect.is_null()) return;
    const VerifyReport rep = verify_costas(d);
    if (expect.contains("costas")) require(rep.is_costas == expect["costas"].get<bool>(), "Costas status differs");
    if (expect.contains("distinct")) {
        require(rep.n_distinct == expect["distinct"].get<std::size_t>(),
                "distinct differences: " + std::to_string(rep.n_distinct));
    }
    if (expect.contains("dots")) require(d.size() == expect["dots"].get<std::size_t>(), "dot count differs");
    if (expect.contains("removed")) {
        require(removed && *removed == expect["removed"].get<std::size_t>(), "repair removed dots");
    }
    const Classification cls = classify(d);
    if (expect.contains("permutation")) {
        const json& want = expect["permutation"];
        const Flag f = want.is_boolean() ? (want.get<bool>() ? Flag::yes : Flag::no) : Flag::not_applicable;
        require(cls.permutation == f, std::string("permutation flag is ") + to_string(cls.permutation));
    }
    if (expect.contains("strict")) {
        require((cls.strict == Flag::yes) == expect["strict"].get<bool>(), "strictness differs");
    }
    if (expect.contains("corner_costas")) {
        bool ok = false;
        if (with_corner) {
            ok = verify_costas(*with_corner).is_costas;
        } else {
            try {
                ok = verify_costas(add_corner_dot(d)).is_costas;
            } catch (const DuplicateDotError&) {
            }
        }
        require(ok == expect["corner_costas"].get<bool>(), "corner-dot Costas status differs");
    }
}

void check_table(const json& entry, const std::filesystem::path& dir) {
    const json& gen = entry.at("generator");
    const std::string kind = gen.at("kind").get<std::string>();
    const std::string file = (dir / entry.at("file").get<std::string>()).string();
    const Layout layout = parse_layout(entry.value("layout", "none"));
    const bool as_set = entry.value("compare", "ordered") == "set";
    const json expect = entry.value("expect", json());

    if (kind == "targets") {
        const auto rows = io::read_table_file(file);
        require(!rows.empty(), "empty table");
        for (const auto& r : rows) {
            require(r.size() == gen.at("columns").get<std::size_t>(), "wrong column count");
        }
        return;
    }

    std::vector<Point> rows;
    int p = 0, m = 0;
    if (kind == "welch_perm") {
        p = gen.at("p").get<int>();
        m = static_cast<int>(gf::parse_poly(gen.at("modulus").get<std::string>()).size()) - 1;
    }
    for (auto& r : io::read_table_file(file)) rows.push_back(normalize_row(std::move(r), layout, p, m));

    if (kind == "permutation" || kind == "welch_perm") {
        std::vector<int> map(rows.size(), -1);
        for (const auto& r : rows) {
            require(r.size() == 2 && r[0] >= 0 && static_cast<std::size_t>(r[0]) < map.size(), "bad permutation row");
            map[static_cast<std::size_t>(r[0])] = r[1];
        }
        Permutation perm;
        try {
            perm = Permutation(map);
        } catch (const std::invalid_argument&) {
            throw Mismatch("rows do not form a permutation");
        }
        if (kind == "welch_perm") {
            const auto gen_perm = welch::welch_perm(welch_params(gen)).perm;
            for (std::size_t i = 0; i < map.size(); ++i) {
                require(i < gen_perm.map().size() && gen_perm[i] == map[i],
                        "permutation differs at index " + std::to_string(i));
            }
            require(gen_perm.order() == perm.order(), "permutation order differs");
        }
        check_expect(expect, perm.to_dotset(), std::nullopt);
        return;
    }

    if (kind == "given") {
        DotSet d;
        try {
            d = DotSet(entry.at("shape").get<Shape>(), rows);
        } catch (const std::exception& e) {
            throw Mismatch(e.what());
        }
        check_expect(expect, d, std::nullopt);
        return;
    }

    DotSet want;
    std::optional<std::size_t> removed;
    std::optional<DotSet> with_corner;
    if (kind == "toeplitz") {
        want = toeplitz_hypercube(gen.at("n").get<int>(), gen.at("m").get<int>());
    } else if (kind == "reshape_even") {
        const Permutation perm = io::read_permutation_file((dir / gen.at("perm").get<std::string>()).string());
        want = reshape_even(perm, RadixScheme::parse(gen.at("radices").get<std::string>()));
    } else if (kind == "reshape_odd") {
        std::size_t r = 0;
        want = odd_stage(gen, dir, &r);
        removed = r;
    } else if (kind == "welch_rect") {
        want = welch::welch_rect(welch_params(gen));
        with_corner = welch::welch_rect_corner(welch_params(gen));
    } else if (kind == "welch_cube") {
        want = welch::welch_cube(welch_params(gen));
    } else {
        throw Error("manifest: unknown generator kind '" + kind + "'");
    }
    compare_dots(want, rows, as_set);
    check_expect(expect, want, removed, with_corner);
}

}  // namespace

Layout parse_layout(std::string_view name) {
    static const std::pair<std::string_view, Layout> names[] = {
        {"none", Layout::none},
        {"one_based", Layout::one_based},
        {"reversed_halves", Layout::reversed_halves},
        {"odd_intermediate", Layout::odd_intermediate},
        {"odd_cube", Layout::odd_cube},
        {"index_one_based", Layout::index_one_based},
        {"index_one_based_reversed_field", Layout::index_one_based_reversed_field},
        {"reversed_right_half", Layout::reversed_right_half},
        {"welch_perm_reversed_digits", Layout::welch_perm_reversed_digits},
    };
    for (const auto& [n, l] : names) {
        if (n == name) return l;
    }
    throw std::invalid_argument("unknown fixture layout '" + std::string(name) + "'");
}

std::vector<int> normalize_row(std::vector<int> row, Layout layout, int p, int m) {
    const auto half = static_cast<std::ptrdiff_t>(row.size() / 2);
    switch (layout) {
        case Layout::none: break;
        case Layout::one_based:
            for (int& v : row) --v;
            break;
        case Layout::reversed_halves:
            std::reverse(row.begin(), row.begin() + half);
            std::reverse(row.begin() + half, row.end());
            break;
        case Layout::odd_intermediate: std::reverse(row.begin(), row.begin() + half); break;
        case Layout::odd_cube: {
            const auto mm = half;  // row has 2m+1 entries
            std::vector<int> out;
            out.push_back(row[static_cast<std::size_t>(mm)]);
            out.insert(out.end(), row.rbegin() + static_cast<std::ptrdiff_t>(row.size()) - mm, row.rend());
            out.insert(out.end(), row.begin() + mm + 1, row.end());
            row = std::move(out);
            break;
        }
        case Layout::index_one_based:
            if (!row.empty()) --row[0];
            break;
        case Layout::index_one_based_reversed_field:
            if (!row.empty()) {
                --row[0];
                std::reverse(row.begin() + 1, row.end());
            }
            break;
        case Layout::reversed_right_half: std::reverse(row.begin() + half, row.end()); break;
        case Layout::welch_perm_reversed_digits:
            if (row.size() != 2 || p < 2 || m < 1) throw std::invalid_argument("welch permutation row needs p, m");
            row = {row[0] - 1, from_digits_reversed(row[1], p, m) - 1};
            break;
    }
    return row;
}

std::filesystem::path default_dir() { return COSTAS_FIXTURE_DIR; }

std::vector<TableResult> verify_all(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw Error("fixture directory not found: " + dir.string());
    std::ifstream in(dir / "manifest.json");
    if (!in) throw Error("fixture manifest not found: " + (dir / "manifest.json").string());
    json manifest;
    try {
        in >> manifest;
    } catch (const json::exception& e) {
        throw Error(std::string("fixture manifest unreadable: ") + e.what());
    }

    std::vector<TableResult> out;
    for (const auto& entry : manifest) {
        TableResult r;
        r.id = entry.value("id", "?");
        try {
            check_table(entry, dir);
            r.pass = true;
        } catch (const std::exception& e) {
            r.detail = e.what();
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace costas::fixtures
