#include "costas/construct.hpp"

#include <stdexcept>
#include <string>

#include "costas/errors.hpp"

namespace costas {

Permutation::Permutation(std::vector<int> map) : map_(std::move(map)) {
    std::vector<bool> seen(map_.size(), false);
    for (int v : map_) {
        if (v < 0 || static_cast<std::size_t>(v) >= map_.size() || seen[static_cast<std::size_t>(v)]) {
            throw std::invalid_argument("not a permutation of 0.." + std::to_string(map_.size()) + "-1");
        }
        seen[static_cast<std::size_t>(v)] = true;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> map(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) map[static_cast<std::size_t>(i)] = i;
    return Permutation(std::move(map));
}

DotSet Permutation::to_dotset() const {
    std::vector<Point> dots;
    dots.reserve(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) dots.push_back({static_cast<int>(i), map_[i]});
    const int n = order();
    return DotSet({n, n}, std::move(dots));
}

std::vector<std::uint32_t> primitive_roots_mod(std::uint32_t p) {
    if (!gf::is_prime(p)) throw std::invalid_argument("modulus must be prime");
    std::vector<std::uint32_t> out;
    const auto factors = gf::prime_factors(p - 1);
    for (std::uint32_t g = 1; g < p; ++g) {
        bool primitive = true;
        for (auto r : factors) {
            if (gf::pow_mod(g, (p - 1) / r, p) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) out.push_back(g);
    }
    return out;
}

Permutation welch_w1(std::uint32_t p, std::uint32_t g, std::uint32_t c) {
    if (p <= 2 || !gf::is_prime(p)) throw std::invalid_argument("welch_w1 needs an odd prime");
    if (c > p - 2) throw std::invalid_argument("shift must lie in 0..p-2");
    if (g == 0 || g >= p) throw std::invalid_argument("generator out of range");
    for (auto r : gf::prime_factors(p - 1)) {
        if (gf::pow_mod(g, (p - 1) / r, p) == 1) {
            throw std::invalid_argument(std::to_string(g) + " is not a primitive root mod " + std::to_string(p));
        }
    }
    std::vector<int> map(p - 1);
    std::uint64_t v = gf::pow_mod(g, c, p);
    for (auto& out : map) {
        out = static_cast<int>(v) - 1;
        v = v * g % p;
    }
    return Permutation(std::move(map));
}

Permutation golomb_g2(const gf::FieldCtx& ctx, const gf::FieldElem& alpha, const gf::FieldElem& beta) {
    if (ctx.q() < 3) throw std::invalid_argument("golomb_g2 needs q >= 3");
    if (!gf::is_primitive_root(ctx, alpha) || !gf::is_primitive_root(ctx, beta)) {
        throw std::invalid_argument("golomb_g2 needs primitive alpha and beta");
    }
    const auto n = static_cast<std::size_t>(ctx.q() - 2);
    // log_beta of every nonzero element, indexed by field index.
    std::vector<std::int64_t> log_beta(ctx.q(), -1);
    gf::FieldElem cur = ctx.one();
    for (std::uint64_t e = 0; e + 1 < ctx.q(); ++e) {
        log_beta[ctx.index_of(cur)] = static_cast<std::int64_t>(e);
        cur = ctx.mul(cur, beta);
    }
    const gf::FieldElem one = ctx.one();
    std::vector<int> map(n);
    gf::FieldElem a = alpha;
    for (std::size_t i = 1; i <= n; ++i) {
        const std::int64_t j = log_beta[ctx.index_of(ctx.sub(one, a))];
        if (j <= 0) throw ConstructionError("golomb_g2: 1 - alpha^i has no logarithm in 1..q-2");
        map[i - 1] = static_cast<int>(j - 1);
        a = ctx.mul(a, alpha);
    }
    Permutation perm(std::move(map));
    if (!verify_costas(perm.to_dotset()).is_costas) {
        throw ConstructionError("golomb_g2 output failed verification");
    }
    return perm;
}

Permutation golomb_g2(const gf::FieldCtx& ctx) {
    const gf::FieldElem g = gf::find_primitive_root(ctx);
    return golomb_g2(ctx, g, g);
}

DotSet lifted_hypercube(const Permutation& g1, std::span<const Permutation> rest) {
    const int n = g1.order();
    for (const auto& g : rest) {
        if (g.order() != n) throw std::invalid_argument("lifted_hypercube: permutation orders differ");
    }
    if (!verify_costas(g1.to_dotset()).is_costas) {
        throw std::invalid_argument("lifted_hypercube: first permutation is not Costas");
    }
    std::vector<Point> dots;
    dots.reserve(static_cast<std::size_t>(n));
    for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
        Point p{static_cast<int>(j), g1[j]};
        for (const auto& g : rest) p.push_back(g[j]);
        dots.push_back(std::move(p));
    }
    return DotSet(Shape(2 + rest.size(), n), std::move(dots));
}

DotSet toeplitz_hypercube(int n, int m) {
    if (n < 1 || m < 1) throw std::invalid_argument("toeplitz_hypercube: n and m must be positive");
    if (n > m) throw std::invalid_argument("toeplitz_hypercube requires n <= m");
    std::vector<Point> dots;
    for (int i = 0; i < n; ++i) {
        Point row(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) row[static_cast<std::size_t>(j)] = ((i - j) % n + n) % n;
        dots.push_back(std::move(row));
    }
    return DotSet(Shape(static_cast<std::size_t>(m), n), std::move(dots));
}

}  // namespace costas
