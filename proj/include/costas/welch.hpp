#pragma once

// The Welch construction over GF(p^m).
//
// f_B(i) = F(g^(i-1+c) mod P) B^{-1} for i = 1..q-1, where F reads off the
// coefficient vector (most significant first) and B is an optional change of
// basis. The dots (i-1, f_B(i)) form a Costas hyper-rectangle and the dots
// (V(i), f_B(i)) a Costas hypercube of side p, V being the base-p expansion
// of the 1-based index i into m digits.

#include <cstdint>
#include <optional>
#include <vector>

#include "costas/construct.hpp"
#include "costas/dotset.hpp"
#include "costas/gf.hpp"

namespace costas::welch {

struct WelchParams {
    gf::FieldCtx ctx;
    gf::FieldElem g;
    std::uint64_t c = 0;
    std::optional<gf::BasisMatrix> basis;  // identity when absent
};

// The field-coordinate rows f_B(1..q-1). Validates g and c.
std::vector<std::vector<gf::Coeff>> welch_rows(const WelchParams& w);

// (m+1)-dimensional, shape (q-1, p, ..., p).
DotSet welch_rect(const WelchParams& w);

// The rectangle indexed by i = 1..q-1 with the origin added in front, shape
// (q, p, ..., p). Analog of W0 for the hyper-rectangle.
DotSet welch_rect_corner(const WelchParams& w);

// 2m-dimensional, side p.
DotSet welch_cube(const WelchParams& w);

// Member k of the cyclic-shift family: dots (V(i), f_B(i (+) k)).
DotSet welch_shift(const WelchParams& w, std::uint64_t k);

// All q-1 members, k = 0..q-2.
std::vector<DotSet> welch_shift_family(const WelchParams& w);

struct WelchPermResult {
    Permutation perm;
    VerifyReport report;
};

// i-1 -> V^{-1}(f_B(i)) - 1 with V^{-1} the most-significant-first base-p
// value. Not Costas in general for m > 1.
WelchPermResult welch_perm(const WelchParams& w);

// True iff for every nonzero x the coordinates of x^p over the basis are the
// right cyclic shift of those of x.
bool rotational_check(const gf::FieldCtx& ctx, const gf::BasisMatrix& basis);

}  // namespace costas::welch
