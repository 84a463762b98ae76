#pragma once

// Mixed-radix reshaping of Costas squares into Costas hyper-rectangles and
// hypercubes.
//
// An index i in [0, n1*...*nm) expands to the digit vector V(i) with the
// most-significant digit first. A 2-D dot (i, j) becomes (V(i), V(j)). Since
// V^{-1} extends linearly to digit vectors with |v_k| < n_k, equal difference
// vectors after reshaping collapse back to equal differences before it, so
// the Costas property survives.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "costas/construct.hpp"
#include "costas/dotset.hpp"

namespace costas {

class RadixScheme {
public:
    explicit RadixScheme(std::vector<int> radices);  // each radix >= 2

    // "5x5", "4x4x2"
    static RadixScheme parse(std::string_view text);

    const std::vector<int>& radices() const noexcept { return radices_; }
    std::size_t size() const noexcept { return radices_.size(); }
    std::int64_t order() const noexcept { return order_; }

private:
    std::vector<int> radices_;
    std::int64_t order_;
};

std::vector<int> expand(std::int64_t i, const RadixScheme& scheme);

// Signed mixed-radix value; digits may be negative as long as |v_k| < n_k.
std::int64_t collapse(std::span<const int> digits, const RadixScheme& scheme);

// All ordered factorizations of n into factors >= 2 (n itself included).
std::vector<RadixScheme> radix_factorizations(std::int64_t n);

struct ReshapeOptions {
    // Skip the Costas check of the input square.
    bool unsafe_skip_input_check = false;
};

// Input must be a 2-D square of side scheme.order(). Output dimension is
// 2 * scheme.size().
DotSet reshape_even(const DotSet& square, const RadixScheme& scheme, ReshapeOptions opts = {});
DotSet reshape_even(const Permutation& perm, const RadixScheme& scheme, ReshapeOptions opts = {});

struct HeuristicReport {
    DotSet intermediate;  // (2m+2)-dimensional hyper-rectangle
    DotSet raw;           // (2m+1)-dimensional cube before repair
    DotSet result;        // Costas after repair
    std::vector<Point> removed;
    double pre_repair_fraction = 1.0;
};

// Odd-dimension heuristic. The square has side n^m * sqrt(n); index i expands
// under radices (sqrt(n), n, ..., n) to (v0, v1, ..., vm). A dot (i, j) maps to
// (sqrt(n)*v0(j) + v0(i), v1(i), ..., vm(i), v1(j), ..., vm(j)) in a cube of
// side n and dimension 2m+1. Colliding dots are then removed greedily.
HeuristicReport reshape_odd(const DotSet& square, int n, int m, ReshapeOptions opts = {});
HeuristicReport reshape_odd(const Permutation& perm, int n, int m, ReshapeOptions opts = {});

// Greedy repair: drop the dot in the most colliding pairs (ties: smallest
// dot) until the set is Costas. Returns the removed dots in removal order.
std::vector<Point> repair_costas(DotSet& d);

// Pads a permutation of order n' with n - n' blank rows and columns.
DotSet embed_incomplete(const Permutation& g, int n);

// Appends one coordinate in [0, n). Exactly one of `values` (one per dot) or
// `seed` must be given.
DotSet extend_dimension(const DotSet& d, int n, std::optional<std::span<const int>> values,
                        std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace costas
