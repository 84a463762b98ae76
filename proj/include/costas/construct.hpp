#pragma once

// Generators for 2-D Costas permutations and for strict Costas hypercubes.

#include <cstdint>
#include <span>
#include <vector>

#include "costas/dotset.hpp"
#include "costas/gf.hpp"

namespace costas {

// Bijection on {0, ..., n-1}.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> map);  // throws unless bijective

    static Permutation identity(int n);

    int order() const noexcept { return static_cast<int>(map_.size()); }
    int operator[](std::size_t i) const { return map_[i]; }
    const std::vector<int>& map() const noexcept { return map_; }

    // Dots (i, map[i]) in an n x n square.
    DotSet to_dotset() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> map_;
};

// Exponential Welch: i -> (g^(i+c) mod p) - 1 for i = 0..p-2.
Permutation welch_w1(std::uint32_t p, std::uint32_t g, std::uint32_t c);

// Integer primitive roots mod p, ascending.
std::vector<std::uint32_t> primitive_roots_mod(std::uint32_t p);

// Lempel-Golomb: alpha^i + beta^j = 1 with i, j in 1..q-2, stored 0-based.
// The result is checked with verify_costas before it is returned.
Permutation golomb_g2(const gf::FieldCtx& ctx, const gf::FieldElem& alpha, const gf::FieldElem& beta);
// First primitive element for both alpha and beta.
Permutation golomb_g2(const gf::FieldCtx& ctx);

// Dots (j, g1(j), rest_0(j), ...), dimension 2 + rest.size().
DotSet lifted_hypercube(const Permutation& g1, std::span<const Permutation> rest);

// Rows of the n x m circulant whose column j is the j-fold cyclic shift of
// (0, ..., n-1). Requires n <= m.
DotSet toeplitz_hypercube(int n, int m);

}  // namespace costas
