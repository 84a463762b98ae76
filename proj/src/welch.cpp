#include "costas/welch.hpp"

#include <stdexcept>

namespace costas::welch {

namespace {

const gf::BasisMatrix& basis_or_identity(const WelchParams& w, std::optional<gf::BasisMatrix>& storage) {
    if (w.basis) {
        if (w.basis->size() != w.ctx.m() || w.basis->p() != w.ctx.p()) {
            throw std::invalid_argument("basis matrix does not match the field");
        }
        return *w.basis;
    }
    storage.emplace(gf::BasisMatrix::identity(w.ctx.p(), w.ctx.m()));
    return *storage;
}

// Base-p digits of i, most significant first, m of them.
Point base_p_digits(std::uint64_t i, std::uint32_t p, unsigned m) {
    Point out(m);
    for (unsigned k = m; k-- > 0;) {
        out[k] = static_cast<int>(i % p);
        i /= p;
    }
    return out;
}

DotSet cube_from_rows(const WelchParams& w, const std::vector<std::vector<gf::Coeff>>& rows, std::uint64_t k) {
    const unsigned m = w.ctx.m();
    const std::uint64_t n = w.ctx.q() - 1;
    std::vector<Point> dots;
    dots.reserve(n);
    for (std::uint64_t i = 1; i <= n; ++i) {
        Point p = base_p_digits(i, w.ctx.p(), m);
        const auto& f = rows[(i - 1 + k) % n];
        p.insert(p.end(), f.begin(), f.end());
        dots.push_back(std::move(p));
    }
    return DotSet(Shape(2 * m, static_cast<int>(w.ctx.p())), std::move(dots));
}

}  // namespace

std::vector<std::vector<gf::Coeff>> welch_rows(const WelchParams& w) {
    std::optional<gf::BasisMatrix> storage;
    const gf::BasisMatrix& basis = basis_or_identity(w, storage);
    std::vector<std::vector<gf::Coeff>> rows;
    rows.reserve(w.ctx.q() - 1);
    for (const auto& e : gf::powers_of(w.ctx, w.g, w.c)) rows.push_back(basis.to_basis(e.coeffs));
    return rows;
}

DotSet welch_rect(const WelchParams& w) {
    const auto rows = welch_rows(w);
    const int p = static_cast<int>(w.ctx.p());
    Shape shape{static_cast<int>(w.ctx.q() - 1)};
    shape.insert(shape.end(), w.ctx.m(), p);
    std::vector<Point> dots;
    dots.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        Point pt{static_cast<int>(i)};
        pt.insert(pt.end(), rows[i].begin(), rows[i].end());
        dots.push_back(std::move(pt));
    }
    return DotSet(std::move(shape), std::move(dots));
}

DotSet welch_rect_corner(const WelchParams& w) {
    const auto rows = welch_rows(w);
    Shape shape{static_cast<int>(w.ctx.q())};
    shape.insert(shape.end(), w.ctx.m(), static_cast<int>(w.ctx.p()));
    std::vector<Point> dots{Point(w.ctx.m() + 1, 0)};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        Point pt{static_cast<int>(i + 1)};
        pt.insert(pt.end(), rows[i].begin(), rows[i].end());
        dots.push_back(std::move(pt));
    }
    return DotSet(std::move(shape), std::move(dots));
}

DotSet welch_cube(const WelchParams& w) { return cube_from_rows(w, welch_rows(w), 0); }

DotSet welch_shift(const WelchParams& w, std::uint64_t k) {
    if (k > w.ctx.q() - 2) throw std::invalid_argument("shift k must lie in 0..q-2");
    return cube_from_rows(w, welch_rows(w), k);
}

std::vector<DotSet> welch_shift_family(const WelchParams& w) {
    const auto rows = welch_rows(w);
    std::vector<DotSet> out;
    out.reserve(rows.size());
    for (std::uint64_t k = 0; k < rows.size(); ++k) out.push_back(cube_from_rows(w, rows, k));
    return out;
}

WelchPermResult welch_perm(const WelchParams& w) {
    const auto rows = welch_rows(w);
    std::vector<int> map;
    map.reserve(rows.size());
    for (const auto& f : rows) {
        std::uint64_t v = 0;
        for (auto digit : f) v = v * w.ctx.p() + digit;
        map.push_back(static_cast<int>(v) - 1);
    }
    Permutation perm(std::move(map));
    VerifyReport report = verify_costas(perm.to_dotset());
    return WelchPermResult{std::move(perm), std::move(report)};
}

bool rotational_check(const gf::FieldCtx& ctx, const gf::BasisMatrix& basis) {
    if (basis.size() != ctx.m() || basis.p() != ctx.p()) throw std::invalid_argument("basis does not match the field");
    const unsigned m = ctx.m();
    for (std::uint64_t idx = 1; idx < ctx.q(); ++idx) {
        const gf::FieldElem x = ctx.element_at(idx);
        const auto coords = basis.to_basis(x.coeffs);
        const auto coords_p = basis.to_basis(ctx.pow(x, ctx.p()).coeffs);
        for (unsigned i = 0; i < m; ++i) {
            if (coords_p[(i + 1) % m] != coords[i]) return false;
        }
    }
    return true;
}

}  // namespace costas::welch
