#include "costas/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "costas/errors.hpp"

namespace costas::io {

namespace {

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return in;
}

bool parse_int(std::string_view tok, int& out) {
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return !tok.empty() && ec == std::errc{} && ptr == tok.data() + tok.size();
}

std::vector<int> split_ints(const std::string& line, std::size_t lineno, const char* seps) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        const std::size_t start = line.find_first_not_of(seps, pos);
        if (start == std::string::npos) break;
        const std::size_t end = std::min(line.find_first_of(seps, start), line.size());
        int v = 0;
        if (!parse_int(std::string_view(line).substr(start, end - start), v)) {
            throw FormatError("expected an integer, got '" + line.substr(start, end - start) + "'", lineno);
        }
        out.push_back(v);
        pos = end;
    }
    return out;
}

std::string trim_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t") == std::string::npos; }

}  // namespace

void write_dotset(std::ostream& out, const DotSet& d, const WriteOptions& opts) {
    out << "# dim=" << d.dim() << " shape=";
    for (std::size_t j = 0; j < d.dim(); ++j) out << (j ? "," : "") << d.shape()[j];
    if (opts.one_based) out << " base=1";
    out << '\n';
    if (!opts.provenance.is_null()) out << "# provenance=" << opts.provenance.dump() << '\n';
    const int shift = opts.one_based ? 1 : 0;
    for (const auto& p : d.dots()) {
        for (std::size_t j = 0; j < p.size(); ++j) out << (j ? "\t" : "") << p[j] + shift;
        out << '\n';
    }
}

std::string to_tsv(const DotSet& d, const WriteOptions& opts) {
    std::ostringstream os;
    write_dotset(os, d, opts);
    return os.str();
}

DotSet read_dotset(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw FormatError("empty input, expected '# dim=... shape=...' header", 1);
    line = trim_cr(line);
    ++lineno;
    if (line.rfind('#', 0) != 0) throw FormatError("missing '# dim=... shape=...' header", lineno);

    std::istringstream hs(line.substr(1));
    std::string tok;
    int dim = -1;
    int base = 0;
    Shape shape;
    while (hs >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw FormatError("malformed header token '" + tok + "'", lineno);
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        if (key == "dim") {
            if (!parse_int(val, dim) || dim < 1) throw FormatError("bad dim '" + val + "'", lineno);
        } else if (key == "shape") {
            shape = split_ints(val, lineno, ",");
        } else if (key == "base") {
            if (!parse_int(val, base) || (base != 0 && base != 1)) throw FormatError("base must be 0 or 1", lineno);
        } else {
            throw FormatError("unknown header key '" + key + "'", lineno);
        }
    }
    if (dim < 1 || shape.size() != static_cast<std::size_t>(dim)) {
        throw FormatError("header needs dim=<m> and an m-entry shape", lineno);
    }

    std::vector<Point> dots;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim_cr(line);
        if (blank(line) || line.front() == '#') continue;
        Point p = split_ints(line, lineno, " \t");
        if (p.size() != shape.size()) {
            throw FormatError("expected " + std::to_string(dim) + " coordinates, got " + std::to_string(p.size()),
                              lineno);
        }
        for (std::size_t j = 0; j < p.size(); ++j) {
            p[j] -= base;
            if (p[j] < 0 || p[j] >= shape[j]) throw FormatError("coordinate outside the shape", lineno);
        }
        dots.push_back(std::move(p));
    }
    try {
        return DotSet(std::move(shape), std::move(dots));
    } catch (const DuplicateDotError& e) {
        throw FormatError(e.what(), lineno);
    }
}

DotSet read_dotset_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_dotset(in);
}

Permutation read_permutation(std::istream& in) {
    std::vector<std::pair<std::size_t, std::vector<int>>> rows;
    std::string line;
    std::size_t lineno = 0;
    bool comma_list = false;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim_cr(line);
        if (blank(line) || line.front() == '#') continue;
        comma_list = line.find(',') != std::string::npos;
        rows.emplace_back(lineno, split_ints(line, lineno, " \t,&"));
    }
    if (rows.empty()) throw FormatError("no permutation data", lineno + 1);

    if (rows.size() == 1 && comma_list) {
        try {
            return Permutation(rows.front().second);
        } catch (const std::invalid_argument& e) {
            throw FormatError(e.what(), rows.front().first);
        }
    }
    std::vector<int> map(rows.size(), -1);
    for (const auto& [ln, r] : rows) {
        if (r.size() != 2) throw FormatError("expected 'index value'", ln);
        if (r[0] < 0 || static_cast<std::size_t>(r[0]) >= map.size() || map[static_cast<std::size_t>(r[0])] != -1) {
            throw FormatError("index out of range or repeated", ln);
        }
        map[static_cast<std::size_t>(r[0])] = r[1];
    }
    try {
        return Permutation(std::move(map));
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what(), rows.back().first);
    }
}

Permutation read_permutation_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_permutation(in);
}

void write_permutation(std::ostream& out, const Permutation& perm) {
    for (std::size_t i = 0; i < perm.map().size(); ++i) out << (i ? "," : "") << perm[i];
    out << '\n';
}

std::vector<std::vector<int>> read_table(std::istream& in) {
    std::vector<std::vector<int>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim_cr(line);
        if (blank(line) || line.front() == '#') continue;
        rows.push_back(split_ints(line, lineno, " \t"));
    }
    return rows;
}

std::vector<std::vector<int>> read_table_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_table(in);
}

gf::Matrix read_matrix(std::istream& in) {
    gf::Matrix m;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim_cr(line);
        if (blank(line) || line.front() == '#') continue;
        std::vector<gf::Coeff> row;
        for (int v : split_ints(line, lineno, " \t,")) {
            if (v < 0) throw FormatError("matrix entries must be non-negative", lineno);
            row.push_back(static_cast<gf::Coeff>(v));
        }
        if (!m.empty() && row.size() != m.front().size()) throw FormatError("ragged matrix row", lineno);
        m.push_back(std::move(row));
    }
    return m;
}

gf::Matrix read_matrix_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_matrix(in);
}

nlohmann::json to_json(const VerifyReport& rep) {
    nlohmann::json j;
    j["is_costas"] = rep.is_costas;
    j["n_dots"] = rep.n_dots;
    j["n_pairs"] = rep.n_pairs;
    j["n_distinct"] = rep.n_distinct;
    j["distinct_fraction"] = rep.distinct_fraction;
    j["collisions"] = nlohmann::json::array();
    for (const auto& c : rep.collisions) {
        nlohmann::json pairs = nlohmann::json::array();
        for (auto [a, b] : c.pairs) pairs.push_back({a, b});
        j["collisions"].push_back({{"difference", c.difference}, {"pairs", pairs}});
    }
    return j;
}

nlohmann::json to_json(const Classification& c) {
    return {{"permutation", to_string(c.permutation)},
            {"strict", to_string(c.strict)},
            {"incomplete", to_string(c.incomplete)},
            {"left_half", to_string(c.left_half)},
            {"right_half", to_string(c.right_half)}};
}

}  // namespace costas::io
