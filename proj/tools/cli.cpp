#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "costas/applicability.hpp"
#include "costas/construct.hpp"
#include "costas/dotset.hpp"
#include "costas/errors.hpp"
#include "costas/fixtures.hpp"
#include "costas/gf.hpp"
#include "costas/io.hpp"
#include "costas/reshape.hpp"
#include "costas/search.hpp"
#include "costas/welch.hpp"

namespace costas::cli {

namespace {

using nlohmann::json;

constexpr const char* kFormatVersion = "1";

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

unsigned threads_from_env() {
    const char* v = std::getenv("COSTAS_THREADS");
    if (!v || !*v) return 0;
    try {
        return static_cast<unsigned>(std::stoul(v));
    } catch (const std::exception&) {
        throw UsageError(std::string("COSTAS_THREADS must be a non-negative integer, got '") + v + "'");
    }
}

Shape parse_shape(const std::string& text) {
    Shape shape;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, 'x')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(tok, &used);
            if (used != tok.size() || v < 1) throw std::invalid_argument("");
            shape.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("bad shape '" + text + "', expected e.g. 5x5x5");
        }
    }
    if (shape.empty()) throw UsageError("empty shape");
    return shape;
}

// "a..b" or "a"
std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
    try {
        const auto dots = text.find("..");
        if (dots == std::string::npos) {
            const auto v = std::stoull(text);
            return {v, v};
        }
        return {std::stoull(text.substr(0, dots)), std::stoull(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw UsageError("bad range '" + text + "', expected a..b");
    }
}

struct Output {
    bool one_based = false;
    std::string path;
};

void emit_dotset(const DotSet& d, json prov, const Output& o, std::ostream& out) {
    prov["format_version"] = kFormatVersion;
    const io::WriteOptions opts{o.one_based, std::move(prov)};
    if (o.path.empty()) {
        io::write_dotset(out, d, opts);
        return;
    }
    std::ofstream f(o.path);
    if (!f) throw Error("cannot write " + o.path);
    io::write_dotset(f, d, opts);
}

void emit_permutation(const Permutation& perm, json prov, const Output& o, std::ostream& out) {
    prov["format_version"] = kFormatVersion;
    auto write = [&](std::ostream& s) {
        s << "# provenance=" << prov.dump() << '\n';
        io::write_permutation(s, perm);
    };
    if (o.path.empty()) {
        write(out);
        return;
    }
    std::ofstream f(o.path);
    if (!f) throw Error("cannot write " + o.path);
    write(f);
}

struct FieldArgs {
    std::uint32_t p = 0;
    unsigned m = 1;
    std::string modulus;
    std::string g;
    std::uint64_t c = 0;
    std::string basis_file;
    bool normal = false;
    std::string normal_of;
};

void add_field_options(CLI::App* sub, FieldArgs& f, bool with_basis) {
    sub->add_option("--p", f.p, "field characteristic")->required();
    sub->add_option("--m", f.m, "extension degree")->default_val(1);
    sub->add_option("--modulus", f.modulus, "monic modulus, coefficients MSB first, e.g. 1,0,2,1");
    sub->add_option("--g", f.g, "primitive element, coefficients MSB first (default: first primitive)");
    sub->add_option("--c", f.c, "exponent shift")->default_val(0);
    if (with_basis) {
        auto* b = sub->add_option("--basis", f.basis_file, "file with the m basis rows");
        auto* n = sub->add_flag("--normal-basis", f.normal, "use the first normal basis");
        auto* nb = sub->add_option("--normal-basis-of", f.normal_of, "normal basis from the conjugates of this element");
        b->excludes(n)->excludes(nb);
        n->excludes(nb);
    }
}

gf::FieldCtx make_ctx(const FieldArgs& f) {
    if (f.modulus.empty()) return gf::FieldCtx::with_default_modulus(f.p, f.m);
    gf::Poly mod = gf::parse_poly(f.modulus);
    if (mod.size() != f.m + 1) throw UsageError("--modulus has degree " + std::to_string(mod.size() - 1) +
                                                "; --m is " + std::to_string(f.m));
    return gf::FieldCtx(f.p, std::move(mod));
}

gf::FieldElem make_elem(const gf::FieldCtx& ctx, const std::string& text) {
    return ctx.make(gf::parse_poly(text));
}

welch::WelchParams make_welch(const FieldArgs& f, json& prov) {
    gf::FieldCtx ctx = make_ctx(f);
    gf::FieldElem g = f.g.empty() ? gf::find_primitive_root(ctx) : make_elem(ctx, f.g);
    welch::WelchParams w{ctx, g, f.c, std::nullopt};
    json params = {{"p", f.p},
                   {"m", f.m},
                   {"modulus", gf::format_poly(ctx.modulus())},
                   {"g", gf::format_poly(g.coeffs)},
                   {"c", f.c}};
    if (!f.basis_file.empty()) {
        w.basis = gf::BasisMatrix(f.p, io::read_matrix_file(f.basis_file));
    } else if (f.normal) {
        w.basis = gf::find_normal_basis(ctx).matrix;
    } else if (!f.normal_of.empty()) {
        w.basis = gf::normal_basis_from(ctx, make_elem(ctx, f.normal_of)).matrix;
    }
    if (w.basis) params["basis"] = w.basis->entries();
    prov["params"] = params;
    return w;
}

// Smallest prime power >= lo.
std::uint64_t prime_power_at_least(std::uint64_t lo) {
    for (std::uint64_t q = std::max<std::uint64_t>(lo, 2);; ++q) {
        if (applicability::perfect_power(q)) return q;
    }
}

struct Sieve {
    int variant = 1;
    std::uint64_t q = 0;  // 0: automatic
};

Sieve parse_sieve(std::string text) {
    if (text.rfind("golomb", 0) == 0) {
        text = text.substr(6);
        if (!text.empty() && text.front() == ':') text = text.substr(1);
    }
    Sieve s;
    if (text.empty()) return s;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ':')) {
        if (tok.size() == 2 && tok[0] == 'v' && tok[1] >= '1' && tok[1] <= '4') {
            s.variant = tok[1] - '0';
        } else if (tok.rfind("q=", 0) == 0) {
            try {
                s.q = std::stoull(tok.substr(2));
            } catch (const std::exception&) {
                throw UsageError("bad sieve field size '" + tok + "'");
            }
        } else {
            throw UsageError("bad sieve token '" + tok + "', expected golomb[:vN][:q=Q]");
        }
    }
    return s;
}

std::vector<Point> sieve_candidates(const Sieve& s, const Shape& shape, json& desc) {
    const int side = *std::max_element(shape.begin(), shape.end());
    std::uint64_t q = s.q;
    if (s.variant == 1) {
        if (q == 0) q = prime_power_at_least(static_cast<std::uint64_t>(side) + 2);
    } else {
        if (shape.size() != 3) throw UsageError("sieve variants 2-4 produce 3-D candidates");
        if (q == 0) {
            q = static_cast<std::uint64_t>(side) + 2;
            while (!gf::is_prime(q)) ++q;
        }
    }
    const auto pp = applicability::perfect_power(q);
    if (!pp) throw UsageError("sieve field size " + std::to_string(q) + " is not a prime power");
    if (q - 1 < static_cast<std::uint64_t>(side)) throw UsageError("sieve field too small for the shape");
    search::SliceParams params{gf::FieldCtx::with_default_modulus(static_cast<std::uint32_t>(pp->p), pp->k),
                               static_cast<unsigned>(shape.size()),
                               {},
                               {}};
    desc = {{"kind", "golomb-sieve"}, {"variant", s.variant}, {"q", q}};
    return search::slice_candidates(s.variant, params);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Costas hypercube toolkit", "costas"};
    app.require_subcommand(1);
    Output output;
    app.add_flag("--one-based", output.one_based, "print coordinates starting at 1");
    app.add_option("-o,--output", output.path, "write the artifact here instead of standard output");

    // verify / classify
    std::string in_path;
    bool in_perm = false;
    auto* verify = app.add_subcommand("verify", "check the Costas property (exit 1 if it fails)");
    verify->add_option("file", in_path, "dot set TSV")->required();
    verify->add_flag("--perm", in_perm, "input is a permutation file");
    auto* classify = app.add_subcommand("classify", "structural classification of a dot set");
    classify->add_option("file", in_path, "dot set TSV")->required();
    classify->add_flag("--perm", in_perm, "input is a permutation file");

    // reshaping
    std::string perm_path, radices;
    int n = 0, m = 0;
    std::string stage = "result";
    bool unsafe = false;
    auto* reshape_even_cmd = app.add_subcommand("reshape-even", "reshape a Costas permutation into an even-dimensional hypercube");
    reshape_even_cmd->add_option("--perm", perm_path, "permutation file")->required();
    reshape_even_cmd->add_option("--radices", radices, "e.g. 5x5")->required();
    reshape_even_cmd->add_flag("--unsafe-skip-check", unsafe, "do not verify the input");
    auto* reshape_odd_cmd = app.add_subcommand("reshape-odd", "odd-dimension reshaping heuristic with repair");
    reshape_odd_cmd->add_option("--perm", perm_path, "permutation file (smaller orders are padded)")->required();
    reshape_odd_cmd->add_option("--n", n, "cube side, a perfect square")->required();
    reshape_odd_cmd->add_option("--m", m, "output dimension is 2m+1")->required();
    reshape_odd_cmd->add_option("--stage", stage, "intermediate, raw or result")
        ->check(CLI::IsMember({"intermediate", "raw", "result"}));
    reshape_odd_cmd->add_flag("--unsafe-skip-check", unsafe, "do not verify the input");

    std::vector<std::string> rest_paths;
    auto* lift = app.add_subcommand("lift", "strict hypercube from stacked Costas permutations");
    lift->add_option("--perm", perm_path, "first permutation")->required();
    lift->add_option("--with", rest_paths, "further permutations of the same order")->required();

    auto* toeplitz = app.add_subcommand("toeplitz", "strict hypercube from cyclic shifts");
    toeplitz->add_option("--n", n, "number of dots")->required();
    toeplitz->add_option("--m", m, "dimension, m >= n")->required();

    // Welch family
    FieldArgs fa;
    bool cube = false, corner = false;
    std::optional<std::uint64_t> shift;
    auto* welch_cmd = app.add_subcommand("welch", "Welch hyper-rectangle or hypercube over GF(p^m)");
    add_field_options(welch_cmd, fa, true);
    welch_cmd->add_flag("--cube", cube, "emit the hypercube instead of the hyper-rectangle");
    welch_cmd->add_flag("--corner", corner, "add the corner dot");
    welch_cmd->add_option("--shift", shift, "cyclic shift k of the hypercube (implies --cube)");
    auto* welch_perm_cmd = app.add_subcommand("welch-perm", "the permutation i-1 -> V^-1(f(i))-1");
    add_field_options(welch_perm_cmd, fa, true);

    std::uint32_t w1_g = 0;
    auto* w1 = app.add_subcommand("w1", "exponential Welch permutation of order p-1");
    w1->add_option("--p", fa.p, "prime")->required();
    w1->add_option("--g", w1_g, "primitive root (default: smallest)");
    w1->add_option("--c", fa.c, "shift")->default_val(0);
    std::string alpha, beta;
    auto* g2 = app.add_subcommand("g2", "Lempel-Golomb permutation of order q-2");
    g2->add_option("--p", fa.p, "characteristic")->required();
    g2->add_option("--m", fa.m, "extension degree")->default_val(1);
    g2->add_option("--modulus", fa.modulus, "monic modulus, MSB first");
    g2->add_option("--alpha", alpha, "first primitive element");
    g2->add_option("--beta", beta, "second primitive element");

    // search
    std::string shape_text, sieve_text, stats_path;
    std::uint64_t restarts = 100, seed = 0;
    std::optional<unsigned> threads;
    auto* search_cmd = app.add_subcommand("search", "Monte Carlo greedy packing");
    search_cmd->add_option("--shape", shape_text, "e.g. 5x5x5")->required();
    search_cmd->add_option("--restarts", restarts, "number of restarts")->default_val(100)->check(CLI::PositiveNumber);
    search_cmd->add_option("--seed", seed, "64-bit seed")->default_val(0);
    search_cmd->add_option("--sieve", sieve_text, "golomb[:v1..v4][:q=Q] candidate sieve");
    search_cmd->add_option("--threads", threads, "worker threads (default: COSTAS_THREADS or all cores)");
    search_cmd->add_option("--stats", stats_path, "also write the statistics JSON here");

    // applicability
    std::uint64_t an = 0;
    unsigned am = 0;
    auto* appl = app.add_subcommand("applicability", "which 2-D constructions give order n^m");
    appl->add_option("--n", an, "base");
    appl->add_option("--m", am, "exponent");
    int form = 1;
    std::string n_range, m_range;
    auto* scan = appl->add_subcommand("scan", "all solutions of one form in a range");
    scan->add_option("--form", form, "1, 2 or 3")->required()->check(CLI::Range(1, 3));
    scan->add_option("--n", n_range, "a..b")->required();
    scan->add_option("--m", m_range, "a..b or a single value")->required();

    // fixtures
    std::string fixture_dir = fixtures::default_dir().string();
    auto* fx = app.add_subcommand("fixtures", "reference table management");
    fx->require_subcommand(1);
    auto* verify_all = fx->add_subcommand("verify-all", "rebuild every table and compare");
    verify_all->add_option("--dir", fixture_dir, "fixture directory");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        auto load = [&]() { return in_perm ? io::read_permutation_file(in_path).to_dotset() : io::read_dotset_file(in_path); };
        const ReshapeOptions ropts{unsafe};

        if (verify->parsed()) {
            const DotSet d = load();
            const VerifyReport rep = verify_costas(d);
            out << io::to_json(rep).dump(2) << '\n';
            return rep.is_costas ? 0 : 1;
        }
        if (classify->parsed()) {
            const DotSet d = load();
            json j = io::to_json(costas::classify(d));
            j["is_costas"] = verify_costas(d).is_costas;
            out << j.dump(2) << '\n';
            return 0;
        }
        if (reshape_even_cmd->parsed()) {
            const Permutation perm = io::read_permutation_file(perm_path);
            const RadixScheme scheme = RadixScheme::parse(radices);
            const DotSet d = reshape_even(perm, scheme, ropts);
            emit_dotset(d, {{"generator", "reshape-even"}, {"params", {{"perm", perm_path}, {"radices", radices}}}},
                        output, out);
            return 0;
        }
        if (reshape_odd_cmd->parsed()) {
            const Permutation perm = io::read_permutation_file(perm_path);
            int root = 1;
            while ((root + 1) * (root + 1) <= n) ++root;
            if (n < 4 || root * root != n) throw UsageError("--n must be a perfect square >= 4");
            std::int64_t side = root;
            for (int k = 0; k < m; ++k) side *= n;
            if (perm.order() > side) {
                throw UsageError("permutation order " + std::to_string(perm.order()) + " exceeds the side " +
                                 std::to_string(side));
            }
            const DotSet square =
                perm.order() < side ? embed_incomplete(perm, static_cast<int>(side)) : perm.to_dotset();
            const HeuristicReport rep = reshape_odd(square, n, m, ropts);
            json prov = {{"generator", "reshape-odd"},
                         {"params", {{"perm", perm_path}, {"n", n}, {"m", m}, {"stage", stage}}},
                         {"embedded_from", perm.order()},
                         {"pre_repair_fraction", rep.pre_repair_fraction},
                         {"removed", rep.removed}};
            const DotSet& d = stage == "intermediate" ? rep.intermediate : (stage == "raw" ? rep.raw : rep.result);
            emit_dotset(d, prov, output, out);
            return 0;
        }
        if (lift->parsed()) {
            const Permutation g1 = io::read_permutation_file(perm_path);
            std::vector<Permutation> rest;
            for (const auto& p : rest_paths) rest.push_back(io::read_permutation_file(p));
            emit_dotset(lifted_hypercube(g1, rest),
                        {{"generator", "lift"}, {"params", {{"perm", perm_path}, {"with", rest_paths}}}}, output, out);
            return 0;
        }
        if (toeplitz->parsed()) {
            emit_dotset(toeplitz_hypercube(n, m), {{"generator", "toeplitz"}, {"params", {{"n", n}, {"m", m}}}},
                        output, out);
            return 0;
        }
        if (welch_cmd->parsed()) {
            json prov = {{"generator", "welch"}};
            const welch::WelchParams w = make_welch(fa, prov);
            DotSet d;
            if (shift) {
                d = welch::welch_shift(w, *shift);
                prov["params"]["shift"] = *shift;
                cube = true;
            } else if (cube) {
                d = welch::welch_cube(w);
            } else {
                d = corner ? welch::welch_rect_corner(w) : welch::welch_rect(w);
            }
            if (cube && corner) d = add_corner_dot(d);
            prov["params"]["cube"] = cube;
            prov["params"]["corner"] = corner;
            emit_dotset(d, prov, output, out);
            return 0;
        }
        if (welch_perm_cmd->parsed()) {
            json prov = {{"generator", "welch-perm"}};
            const welch::WelchParams w = make_welch(fa, prov);
            const welch::WelchPermResult r = welch::welch_perm(w);
            prov["is_costas"] = r.report.is_costas;
            emit_permutation(r.perm, prov, output, out);
            return 0;
        }
        if (w1->parsed()) {
            std::uint32_t g = w1_g;
            if (g == 0) {
                const auto roots = primitive_roots_mod(fa.p);
                if (roots.empty()) throw UsageError("--p must be an odd prime");
                g = roots.front();
            }
            emit_permutation(welch_w1(fa.p, g, static_cast<std::uint32_t>(fa.c)),
                             {{"generator", "w1"}, {"params", {{"p", fa.p}, {"g", g}, {"c", fa.c}}}}, output, out);
            return 0;
        }
        if (g2->parsed()) {
            const gf::FieldCtx ctx = make_ctx(fa);
            const gf::FieldElem a = alpha.empty() ? gf::find_primitive_root(ctx) : make_elem(ctx, alpha);
            const gf::FieldElem b = beta.empty() ? a : make_elem(ctx, beta);
            emit_permutation(golomb_g2(ctx, a, b),
                             {{"generator", "g2"},
                              {"params",
                               {{"p", fa.p},
                                {"m", fa.m},
                                {"modulus", gf::format_poly(ctx.modulus())},
                                {"alpha", gf::format_poly(a.coeffs)},
                                {"beta", gf::format_poly(b.coeffs)}}}},
                             output, out);
            return 0;
        }
        if (search_cmd->parsed()) {
            search::SearchConfig cfg;
            cfg.shape = parse_shape(shape_text);
            cfg.restarts = restarts;
            cfg.seed = seed;
            cfg.threads = threads ? *threads : threads_from_env();
            json cand = {{"kind", "full-lattice"}};
            if (!sieve_text.empty()) {
                cfg.candidates = sieve_candidates(parse_sieve(sieve_text), cfg.shape, cand);
                cfg.candidate_label = "golomb-sieve";
            }
            const search::SearchResult res = search::greedy_pack(cfg);
            json hist = json::object();
            for (auto [k, v] : res.histogram) hist[std::to_string(k)] = v;
            json prov = {{"generator", "search"},
                         {"params", {{"shape", cfg.shape}, {"restarts", restarts}, {"candidates", cand}}},
                         {"seed", seed},
                         {"prng", res.prng_id},
                         {"dots", res.best.size()}};
            emit_dotset(res.best, prov, output, out);
            json stats = {{"dots", res.best.size()},
                          {"histogram", hist},
                          {"elapsed_seconds", res.elapsed_seconds},
                          {"seed", seed},
                          {"prng", res.prng_id}};
            err << stats.dump() << '\n';
            if (!stats_path.empty()) {
                std::ofstream f(stats_path);
                if (!f) throw Error("cannot write " + stats_path);
                f << stats.dump(2) << '\n';
            }
            return 0;
        }
        if (appl->parsed()) {
            if (scan->parsed()) {
                const auto [n_lo, n_hi] = parse_range(n_range);
                const auto [m_lo, m_hi] = parse_range(m_range);
                json rows = json::array();
                for (const auto& w : applicability::scan_solutions(form, n_lo, n_hi, static_cast<unsigned>(m_lo),
                                                                   static_cast<unsigned>(m_hi))) {
                    rows.push_back({{"n", w.n}, {"m", w.m}, {"p", w.p}, {"k", w.k}});
                }
                out << json{{"form", form}, {"solutions", rows}}.dump(2) << '\n';
                return 0;
            }
            if (an == 0 || am == 0) throw UsageError("applicability needs --n and --m (or the scan subcommand)");
            const auto rep = applicability::check_applicability(an, am);
            json forms = json::array();
            for (const auto& f : rep.forms) {
                json j = {{"form", f.form}, {"value", f.value}, {"satisfied", f.satisfied},
                          {"constructions", f.constructions}};
                if (f.witness) j["witness"] = {{"p", f.witness->p}, {"k", f.witness->k}};
                forms.push_back(j);
            }
            out << json{{"n", rep.n}, {"m", rep.m}, {"order", rep.order}, {"forms", forms}}.dump(2) << '\n';
            return 0;
        }
        if (verify_all->parsed()) {
            const auto results = fixtures::verify_all(fixture_dir);
            std::size_t failed = 0;
            for (const auto& r : results) {
                out << (r.pass ? "PASS " : "FAIL ") << r.id;
                if (!r.pass) out << ": " << r.detail;
                out << '\n';
                failed += r.pass ? 0 : 1;
            }
            out << results.size() - failed << "/" << results.size() << " tables reproduced\n";
            return failed == 0 ? 0 : 1;
        }
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace costas::cli
