#include "costas/reshape.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

#include "costas/errors.hpp"

namespace costas {

namespace {

int exact_sqrt(int n) {
    int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n ? r : -1;
}

void require_square(const DotSet& d, std::int64_t side, const char* who) {
    if (d.dim() != 2 || d.shape()[0] != d.shape()[1]) {
        throw std::invalid_argument(std::string(who) + ": input must be a 2-D square");
    }
    if (d.shape()[0] != side) {
        throw std::invalid_argument(std::string(who) + ": square side " + std::to_string(d.shape()[0]) +
                                    " does not match required order " + std::to_string(side));
    }
}

void require_costas(const DotSet& d, const ReshapeOptions& opts, const char* who) {
    if (opts.unsafe_skip_input_check) return;
    if (!verify_costas(d).is_costas) throw std::invalid_argument(std::string(who) + ": input is not Costas");
}

void expand_into(std::int64_t i, const std::vector<int>& radices, int* out) {
    for (std::size_t k = radices.size(); k-- > 0;) {
        out[k] = static_cast<int>(i % radices[k]);
        i /= radices[k];
    }
}

}  // namespace

RadixScheme::RadixScheme(std::vector<int> radices) : radices_(std::move(radices)), order_(1) {
    if (radices_.empty()) throw std::invalid_argument("radix scheme needs at least one radix");
    for (int r : radices_) {
        if (r < 2) throw std::invalid_argument("every radix must be >= 2");
        if (order_ > (std::int64_t{1} << 40) / r) throw OverflowError("radix scheme order too large");
        order_ *= r;
    }
}

RadixScheme RadixScheme::parse(std::string_view text) {
    std::vector<int> radices;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t x = text.find_first_of("xX", pos);
        if (x == std::string_view::npos) x = text.size();
        const std::string_view tok = text.substr(pos, x - pos);
        int v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
            throw std::invalid_argument("bad radix scheme '" + std::string(text) + "'");
        }
        radices.push_back(v);
        pos = x + 1;
    }
    return RadixScheme(std::move(radices));
}

std::vector<int> expand(std::int64_t i, const RadixScheme& scheme) {
    if (i < 0 || i >= scheme.order()) throw std::out_of_range("index outside the radix scheme range");
    std::vector<int> digits(scheme.size());
    expand_into(i, scheme.radices(), digits.data());
    return digits;
}

std::int64_t collapse(std::span<const int> digits, const RadixScheme& scheme) {
    if (digits.size() != scheme.size()) throw std::invalid_argument("digit vector has wrong length");
    std::int64_t v = 0;
    for (std::size_t k = 0; k < digits.size(); ++k) {
        if (std::abs(digits[k]) >= scheme.radices()[k]) {
            throw std::invalid_argument("digit magnitude must be below its radix");
        }
        v = v * scheme.radices()[k] + digits[k];
    }
    return v;
}

std::vector<RadixScheme> radix_factorizations(std::int64_t n) {
    std::vector<RadixScheme> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, std::int64_t rest) -> void {
        if (rest == 1) {
            if (!cur.empty()) out.emplace_back(cur);
            return;
        }
        for (std::int64_t f = 2; f <= rest; ++f) {
            if (rest % f != 0) continue;
            cur.push_back(static_cast<int>(f));
            self(self, rest / f);
            cur.pop_back();
        }
    };
    if (n >= 2) rec(rec, n);
    return out;
}

DotSet reshape_even(const DotSet& square, const RadixScheme& scheme, ReshapeOptions opts) {
    require_square(square, scheme.order(), "reshape_even");
    require_costas(square, opts, "reshape_even");
    const std::size_t m = scheme.size();
    Shape shape(scheme.radices());
    shape.insert(shape.end(), scheme.radices().begin(), scheme.radices().end());
    std::vector<Point> dots;
    dots.reserve(square.size());
    for (const auto& p : square.dots()) {
        Point q(2 * m);
        expand_into(p[0], scheme.radices(), q.data());
        expand_into(p[1], scheme.radices(), q.data() + m);
        dots.push_back(std::move(q));
    }
    return DotSet(std::move(shape), std::move(dots));
}

DotSet reshape_even(const Permutation& perm, const RadixScheme& scheme, ReshapeOptions opts) {
    return reshape_even(perm.to_dotset(), scheme, opts);
}

std::vector<Point> repair_costas(DotSet& d) {
    std::vector<Point> removed;
    while (true) {
        const VerifyReport rep = verify_costas(d);
        if (rep.is_costas) break;
        std::vector<std::size_t> score(d.size(), 0);
        for (const auto& c : rep.collisions) {
            for (auto [i, j] : c.pairs) {
                ++score[i];
                ++score[j];
            }
        }
        std::size_t worst = 0;
        for (std::size_t i = 1; i < score.size(); ++i) {
            if (score[i] > score[worst] || (score[i] == score[worst] && d.dots()[i] < d.dots()[worst])) worst = i;
        }
        auto dots = d.dots();
        removed.push_back(dots[worst]);
        dots.erase(dots.begin() + static_cast<std::ptrdiff_t>(worst));
        d = DotSet(d.shape(), std::move(dots));
    }
    return removed;
}

HeuristicReport reshape_odd(const DotSet& square, int n, int m, ReshapeOptions opts) {
    if (m < 1) throw std::invalid_argument("reshape_odd: m must be >= 1");
    const int root = n >= 1 ? exact_sqrt(n) : -1;
    if (root < 2) throw std::invalid_argument("reshape_odd: n must be a perfect square >= 4");
    std::vector<int> radices{root};
    radices.insert(radices.end(), static_cast<std::size_t>(m), n);
    const RadixScheme scheme(radices);
    require_square(square, scheme.order(), "reshape_odd");
    require_costas(square, opts, "reshape_odd");

    const auto half = static_cast<std::size_t>(m) + 1;
    Shape inter_shape(radices);
    inter_shape.insert(inter_shape.end(), radices.begin(), radices.end());
    std::vector<Point> inter_dots, cube_dots;
    inter_dots.reserve(square.size());
    cube_dots.reserve(square.size());
    for (const auto& p : square.dots()) {
        Point full(2 * half);
        expand_into(p[0], radices, full.data());
        expand_into(p[1], radices, full.data() + half);
        Point cube;
        cube.reserve(2 * half - 1);
        cube.push_back(root * full[half] + full[0]);
        cube.insert(cube.end(), full.begin() + 1, full.begin() + static_cast<std::ptrdiff_t>(half));
        cube.insert(cube.end(), full.begin() + static_cast<std::ptrdiff_t>(half) + 1, full.end());
        inter_dots.push_back(std::move(full));
        cube_dots.push_back(std::move(cube));
    }

    HeuristicReport rep{DotSet(std::move(inter_shape), std::move(inter_dots)),
                        DotSet(Shape(2 * half - 1, n), cube_dots), DotSet(), {}, 1.0};
    rep.pre_repair_fraction = verify_costas(rep.raw).distinct_fraction;
    rep.result = rep.raw;
    rep.removed = repair_costas(rep.result);
    return rep;
}

HeuristicReport reshape_odd(const Permutation& perm, int n, int m, ReshapeOptions opts) {
    return reshape_odd(perm.to_dotset(), n, m, opts);
}

DotSet embed_incomplete(const Permutation& g, int n) {
    if (n < g.order()) throw std::invalid_argument("embed_incomplete: target side smaller than the order");
    auto dots = g.to_dotset().dots();
    return DotSet({n, n}, std::move(dots));
}

DotSet extend_dimension(const DotSet& d, int n, std::optional<std::span<const int>> values,
                        std::optional<std::uint64_t> seed) {
    if (n < 1) throw std::invalid_argument("extend_dimension: side must be >= 1");
    if (values.has_value() == seed.has_value()) {
        throw std::invalid_argument("extend_dimension: give either explicit values or a seed");
    }
    std::vector<int> assigned;
    if (values) {
        if (values->size() != d.size()) throw std::invalid_argument("extend_dimension: one value per dot required");
        assigned.assign(values->begin(), values->end());
        for (int v : assigned) {
            if (v < 0 || v >= n) throw std::invalid_argument("extend_dimension: value out of range");
        }
    } else {
        std::mt19937_64 rng(*seed);
        for (std::size_t i = 0; i < d.size(); ++i) assigned.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(n)));
    }
    Shape shape = d.shape();
    shape.push_back(n);
    auto dots = d.dots();
    for (std::size_t i = 0; i < dots.size(); ++i) dots[i].push_back(assigned[i]);
    return DotSet(std::move(shape), std::move(dots));
}

}  // namespace costas
