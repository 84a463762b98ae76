#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "costas/applicability.hpp"
#include "costas/construct.hpp"
#include "costas/errors.hpp"
#include "costas/reshape.hpp"
#include "costas/search.hpp"
#include "costas/welch.hpp"

namespace py = pybind11;
using namespace costas;

namespace {

py::dict report_dict(const VerifyReport& r) {
    py::list collisions;
    for (const auto& c : r.collisions) {
        py::dict d;
        d["difference"] = c.difference;
        d["pairs"] = c.pairs;
        collisions.append(d);
    }
    py::dict d;
    d["is_costas"] = r.is_costas;
    d["n_dots"] = r.n_dots;
    d["n_pairs"] = r.n_pairs;
    d["n_distinct"] = r.n_distinct;
    d["distinct_fraction"] = r.distinct_fraction;
    d["collisions"] = collisions;
    return d;
}

welch::WelchParams welch_params(std::uint32_t p, const gf::Poly& modulus, const gf::Poly& g, std::uint64_t c,
                                const std::optional<gf::Matrix>& basis) {
    gf::FieldCtx ctx(p, modulus);
    welch::WelchParams w{ctx, ctx.make(g), c, std::nullopt};
    if (basis) w.basis = gf::BasisMatrix(p, *basis);
    return w;
}

gf::FieldCtx field(std::uint32_t p, unsigned m, const std::optional<gf::Poly>& modulus) {
    return modulus ? gf::FieldCtx(p, *modulus) : gf::FieldCtx::with_default_modulus(p, m);
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Costas hypercube constructions and checks";

    // translators run newest first, so the base class goes first
    py::register_exception<Error>(mod, "CostasError", PyExc_RuntimeError);
    py::register_exception<FormatError>(mod, "FormatError", PyExc_ValueError);
    py::register_exception<OverflowError>(mod, "IntegerOverflowError", PyExc_OverflowError);

    py::class_<DotSet>(mod, "DotSet")
        .def(py::init<Shape, std::vector<Point>>(), py::arg("shape"), py::arg("dots"))
        .def_property_readonly("shape", &DotSet::shape)
        .def_property_readonly("dots", &DotSet::dots)
        .def_property_readonly("dim", &DotSet::dim)
        .def("__len__", &DotSet::size)
        .def("__contains__", &DotSet::contains)
        .def("sorted", &DotSet::sorted)
        .def("__eq__", [](const DotSet& a, const DotSet& b) { return a == b; })
        .def("__repr__", [](const DotSet& d) {
            return "DotSet(shape=" + py::repr(py::cast(d.shape())).cast<std::string>() + ", " +
                   std::to_string(d.size()) + " dots)";
        });

    mod.def("verify_costas", [](const DotSet& d) { return report_dict(verify_costas(d)); }, py::arg("dots"));
    mod.def(
        "classify",
        [](const DotSet& d) {
            const Classification c = classify(d);
            py::dict out;
            out["permutation"] = to_string(c.permutation);
            out["strict"] = to_string(c.strict);
            out["incomplete"] = to_string(c.incomplete);
            out["left_half"] = to_string(c.left_half);
            out["right_half"] = to_string(c.right_half);
            return out;
        },
        py::arg("dots"));

    mod.def(
        "welch_w1", [](std::uint32_t p, std::uint32_t g, std::uint32_t c) { return welch_w1(p, g, c).map(); },
        py::arg("p"), py::arg("g"), py::arg("c") = 0);
    mod.def(
        "golomb_g2",
        [](std::uint32_t p, unsigned m, std::optional<gf::Poly> modulus) {
            return golomb_g2(field(p, m, modulus)).map();
        },
        py::arg("p"), py::arg("m") = 1, py::arg("modulus") = std::nullopt);
    mod.def("toeplitz_hypercube", &toeplitz_hypercube, py::arg("n"), py::arg("m"));

    mod.def(
        "reshape_even",
        [](const std::vector<int>& perm, const std::vector<int>& radices) {
            return reshape_even(Permutation(perm), RadixScheme(radices));
        },
        py::arg("perm"), py::arg("radices"));
    mod.def(
        "reshape_odd",
        [](const std::vector<int>& perm, int n, int m, std::optional<int> side) {
            const Permutation g(perm);
            const HeuristicReport r =
                reshape_odd(side ? embed_incomplete(g, *side) : g.to_dotset(), n, m);
            py::dict out;
            out["intermediate"] = r.intermediate;
            out["raw"] = r.raw;
            out["result"] = r.result;
            out["removed"] = r.removed;
            out["pre_repair_fraction"] = r.pre_repair_fraction;
            return out;
        },
        py::arg("perm"), py::arg("n"), py::arg("m"), py::arg("side") = std::nullopt);

    mod.def(
        "welch_rect",
        [](std::uint32_t p, const gf::Poly& modulus, const gf::Poly& g, std::uint64_t c,
           std::optional<gf::Matrix> basis) { return welch::welch_rect(welch_params(p, modulus, g, c, basis)); },
        py::arg("p"), py::arg("modulus"), py::arg("g"), py::arg("c") = 0, py::arg("basis") = std::nullopt);
    mod.def(
        "welch_cube",
        [](std::uint32_t p, const gf::Poly& modulus, const gf::Poly& g, std::uint64_t c,
           std::optional<gf::Matrix> basis) { return welch::welch_cube(welch_params(p, modulus, g, c, basis)); },
        py::arg("p"), py::arg("modulus"), py::arg("g"), py::arg("c") = 0, py::arg("basis") = std::nullopt);
    mod.def(
        "welch_perm",
        [](std::uint32_t p, const gf::Poly& modulus, const gf::Poly& g, std::uint64_t c,
           std::optional<gf::Matrix> basis) {
            const auto r = welch::welch_perm(welch_params(p, modulus, g, c, basis));
            return py::make_tuple(r.perm.map(), r.report.is_costas);
        },
        py::arg("p"), py::arg("modulus"), py::arg("g"), py::arg("c") = 0, py::arg("basis") = std::nullopt);

    mod.def(
        "greedy_pack",
        [](const Shape& shape, std::uint64_t restarts, std::uint64_t seed, std::vector<Point> candidates,
           unsigned threads) {
            search::SearchConfig cfg{shape, restarts, seed, std::move(candidates)};
            cfg.threads = threads;
            search::SearchResult r;
            {
                py::gil_scoped_release release;
                r = search::greedy_pack(cfg);
            }
            py::dict out;
            out["best"] = r.best;
            out["histogram"] = r.histogram;
            out["seed"] = r.seed;
            out["prng"] = r.prng_id;
            out["elapsed_seconds"] = r.elapsed_seconds;
            return out;
        },
        py::arg("shape"), py::arg("restarts") = 100, py::arg("seed") = 0,
        py::arg("candidates") = std::vector<Point>{}, py::arg("threads") = 1);
    mod.def(
        "slice_candidates",
        [](int variant, std::uint32_t p, unsigned m, unsigned dims) {
            search::SliceParams sp{gf::FieldCtx::with_default_modulus(p, m), dims};
            return search::slice_candidates(variant, sp);
        },
        py::arg("variant"), py::arg("p"), py::arg("m") = 1, py::arg("dims") = 3);

    mod.def(
        "check_applicability",
        [](std::uint64_t n, unsigned m) {
            const auto rep = applicability::check_applicability(n, m);
            py::list forms;
            for (const auto& f : rep.forms) {
                py::dict d;
                d["form"] = f.form;
                d["value"] = f.value;
                d["satisfied"] = f.satisfied;
                d["constructions"] = f.constructions;
                if (f.witness) d["witness"] = py::make_tuple(f.witness->p, f.witness->k);
                else d["witness"] = py::none();
                forms.append(d);
            }
            return forms;
        },
        py::arg("n"), py::arg("m"));
    mod.def(
        "scan_solutions",
        [](int form, std::uint64_t n_lo, std::uint64_t n_hi, unsigned m_lo, unsigned m_hi) {
            py::list out;
            for (const auto& w : applicability::scan_solutions(form, n_lo, n_hi, m_lo, m_hi))
                out.append(py::make_tuple(w.n, w.m, w.p, w.k));
            return out;
        },
        py::arg("form"), py::arg("n_lo"), py::arg("n_hi"), py::arg("m_lo"), py::arg("m_hi"));
}
