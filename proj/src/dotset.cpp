#include "costas/dotset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "costas/errors.hpp"

namespace costas {

namespace {

std::string format_point(const Point& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(p[i]);
    }
    return s + ")";
}

// Flip sign so the first nonzero coordinate is positive.
void canonicalize(Point& diff) {
    for (int v : diff) {
        if (v == 0) continue;
        if (v < 0) {
            for (int& w : diff) w = -w;
        }
        return;
    }
}

// Largest difference-key range (in bits) checked with a bitmap.
constexpr std::uint64_t kBitmapLimit = std::uint64_t{1} << 28;

// Mixed-radix packing of difference vectors whose j-th coordinate lies in
// [-(N_j-1), N_j-1]. Empty when the product overflows 64 bits.
std::optional<std::vector<std::uint64_t>> difference_strides(const Shape& shape) {
    std::vector<std::uint64_t> strides(shape.size());
    std::uint64_t acc = 1;
    for (std::size_t j = shape.size(); j-- > 0;) {
        strides[j] = acc;
        const auto width = static_cast<std::uint64_t>(2 * shape[j] - 1);
        if (acc > UINT64_MAX / width) return std::nullopt;
        acc *= width;
    }
    return strides;
}

}  // namespace

DotSet::DotSet(Shape shape, std::vector<Point> dots) : shape_(std::move(shape)), dots_(std::move(dots)) {
    if (shape_.empty()) throw std::invalid_argument("dot set needs at least one dimension");
    for (int n : shape_) {
        if (n < 1) throw std::invalid_argument("side lengths must be >= 1");
    }
    for (const auto& p : dots_) {
        if (!in_bounds(p)) throw std::invalid_argument("dot " + format_point(p) + " lies outside the box");
    }
    std::vector<const Point*> order(dots_.size());
    std::transform(dots_.begin(), dots_.end(), order.begin(), [](const Point& p) { return &p; });
    std::sort(order.begin(), order.end(), [](const Point* a, const Point* b) { return *a < *b; });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (*order[i] == *order[i - 1]) throw DuplicateDotError("duplicate dot " + format_point(*order[i]));
    }
}

bool DotSet::in_bounds(const Point& p) const {
    if (p.size() != shape_.size()) return false;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[j] < 0 || p[j] >= shape_[j]) return false;
    }
    return true;
}

bool DotSet::contains(const Point& p) const { return std::find(dots_.begin(), dots_.end(), p) != dots_.end(); }

DotSet DotSet::sorted() const {
    DotSet out = *this;
    std::sort(out.dots_.begin(), out.dots_.end());
    return out;
}

bool operator==(const DotSet& a, const DotSet& b) {
    if (a.shape_ != b.shape_ || a.dots_.size() != b.dots_.size()) return false;
    auto x = a.dots_;
    auto y = b.dots_;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
}

VerifyReport verify_costas(const DotSet& d) {
    VerifyReport rep;
    const auto& dots = d.dots();
    const std::size_t n = dots.size();
    const std::size_t dim = d.dim();
    rep.n_dots = n;
    rep.n_pairs = n < 2 ? 0 : n * (n - 1) / 2;

    using PairList = std::vector<std::pair<std::size_t, std::size_t>>;
    std::vector<Point> diffs;
    std::vector<PairList> groups;
    Point diff(dim);

    auto record = [&](auto& index, const auto& key, std::size_t i, std::size_t j) {
        auto [it, inserted] = index.try_emplace(key, groups.size());
        if (inserted) {
            diffs.push_back(diff);
            groups.push_back(PairList{{i, j}});
        } else {
            groups[it->second].emplace_back(i, j);
        }
    };

    if (auto strides = difference_strides(d.shape())) {
        // Dot codes c_i = sum_k p_k s_k. The packed key of dots[j] - dots[i]
        // is offset + c_j - c_i, so |c_j - c_i| identifies the difference up
        // to sign.
        std::vector<std::uint64_t> codes(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < dim; ++k) codes[i] += static_cast<std::uint64_t>(dots[i][k]) * (*strides)[k];

        auto key_of = [&](std::size_t i, std::size_t j) {
            return codes[j] > codes[i] ? codes[j] - codes[i] : codes[i] - codes[j];
        };

        // Small key ranges: one bitmap pass settles the Costas case.
        std::uint64_t range = 1;
        for (std::size_t k = 0; k < dim; ++k) range += static_cast<std::uint64_t>(d.shape()[k] - 1) * (*strides)[k];
        if (range <= kBitmapLimit) {
            thread_local std::vector<std::uint64_t> bits;
            if (bits.size() < range / 64 + 1) bits.assign(range / 64 + 1, 0);
            bool repeated = false;
            for (std::size_t i = 0; i < n && !repeated; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    const std::uint64_t key = key_of(i, j);
                    const std::uint64_t mask = std::uint64_t{1} << (key & 63);
                    if (bits[key >> 6] & mask) {
                        repeated = true;
                        break;
                    }
                    bits[key >> 6] |= mask;
                }
            }
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) bits[key_of(i, j) >> 6] = 0;
            if (!repeated) {
                rep.n_distinct = rep.n_pairs;
                rep.is_costas = true;
                rep.distinct_fraction = 1.0;
                return rep;
            }
        }

        std::size_t cap = 16;
        while (cap < 2 * rep.n_pairs) cap <<= 1;
        // Reused across calls; only the slots in `used` are dirty afterwards.
        thread_local std::vector<std::uint64_t> slot_key;  // key + 1, 0 when empty
        thread_local std::vector<std::uint32_t> slot_group;
        thread_local std::vector<std::size_t> used;
        if (slot_key.size() < cap) {
            slot_key.assign(cap, 0);
            slot_group.assign(cap, 0);
        }
        struct Cleanup {
            ~Cleanup() {
                for (std::size_t h : used) slot_key[h] = 0;
                used.clear();
            }
        } cleanup;
        std::vector<std::uint32_t> counts;
        auto lookup = [&](std::uint64_t key) -> std::size_t {
            std::size_t h = static_cast<std::size_t>((key * 0x9E3779B97F4A7C15ULL) >> 17) & (cap - 1);
            while (slot_key[h] != 0 && slot_key[h] != key + 1) h = (h + 1) & (cap - 1);
            return h;
        };
        bool repeated = false;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const std::size_t h = lookup(key_of(i, j));
                if (slot_key[h] == 0) {
                    slot_key[h] = key_of(i, j) + 1;
                    used.push_back(h);
                    slot_group[h] = static_cast<std::uint32_t>(counts.size());
                    counts.push_back(1);
                } else {
                    ++counts[slot_group[h]];
                    repeated = true;
                }
            }
        }
        rep.n_distinct = counts.size();
        if (repeated) {
            std::map<std::uint32_t, std::size_t> where;  // group -> index in rep.collisions
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    const std::uint32_t g = slot_group[lookup(key_of(i, j))];
                    if (counts[g] < 2) continue;
                    auto [it, fresh] = where.try_emplace(g, rep.collisions.size());
                    if (fresh) {
                        for (std::size_t k = 0; k < dim; ++k) diff[k] = dots[j][k] - dots[i][k];
                        canonicalize(diff);
                        rep.collisions.push_back(Collision{diff, {}});
                    }
                    rep.collisions[it->second].pairs.emplace_back(i, j);
                }
            }
        }
    } else {
        std::map<Point, std::size_t> index;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                for (std::size_t k = 0; k < dim; ++k) diff[k] = dots[j][k] - dots[i][k];
                canonicalize(diff);
                record(index, diff, i, j);
            }
        }
        rep.n_distinct = groups.size();
        for (std::size_t g = 0; g < groups.size(); ++g) {
            if (groups[g].size() >= 2) rep.collisions.push_back(Collision{diffs[g], std::move(groups[g])});
        }
    }

    std::sort(rep.collisions.begin(), rep.collisions.end(),
              [](const Collision& a, const Collision& b) { return a.difference < b.difference; });
    rep.is_costas = rep.collisions.empty();
    rep.distinct_fraction =
        rep.n_pairs == 0 ? 1.0 : static_cast<double>(rep.n_distinct) / static_cast<double>(rep.n_pairs);
    return rep;
}

std::size_t autocorrelation(const DotSet& d, std::span<const int> k) {
    if (k.size() != d.dim()) throw std::invalid_argument("shift vector has wrong dimension");
    std::set<Point> present(d.dots().begin(), d.dots().end());
    std::size_t count = 0;
    Point shifted(d.dim());
    for (const auto& p : d.dots()) {
        for (std::size_t j = 0; j < p.size(); ++j) shifted[j] = p[j] + k[j];
        count += present.count(shifted);
    }
    return count;
}

namespace {

Projection project_half(const DotSet& d, std::size_t begin, std::size_t len, int side) {
    std::set<Point> seen;
    for (const auto& p : d.dots()) {
        if (!seen.emplace(p.begin() + static_cast<std::ptrdiff_t>(begin),
                          p.begin() + static_cast<std::ptrdiff_t>(begin + len))
                 .second) {
            return Projection::neither;
        }
    }
    std::uint64_t full = 1;
    for (std::size_t i = 0; i < len; ++i) full *= static_cast<std::uint64_t>(side);
    return seen.size() == full ? Projection::bijective : Projection::injective;
}

}  // namespace

Classification classify(const DotSet& d) {
    Classification c;
    const auto& shape = d.shape();

    bool strict = true;
    for (std::size_t j = 0; j < d.dim() && strict; ++j) {
        std::set<int> column;
        for (const auto& p : d.dots()) {
            if (!column.insert(p[j]).second) {
                strict = false;
                break;
            }
        }
    }
    c.strict = strict ? Flag::yes : Flag::no;

    if (d.dim() % 2 != 0) return c;

    const std::size_t s = d.dim() / 2;
    const bool cube = std::all_of(shape.begin(), shape.end(), [&](int n) { return n == shape.front(); });
    c.left_half = project_half(d, 0, s, shape.front());
    c.right_half = project_half(d, s, s, shape.front());
    if (!cube) {
        // Halves of a hyper-rectangle can still be injective; bijectivity
        // onto [n]^s needs equal sides.
        auto demote = [](Projection p) { return p == Projection::bijective ? Projection::injective : p; };
        c.left_half = demote(c.left_half);
        c.right_half = demote(c.right_half);
    }
    c.permutation = (c.left_half == Projection::bijective && c.right_half == Projection::bijective) ? Flag::yes
                                                                                                    : Flag::no;
    c.incomplete = (c.left_half != Projection::neither && c.right_half != Projection::neither) ? Flag::yes : Flag::no;
    return c;
}

const char* to_string(Flag f) {
    switch (f) {
        case Flag::no: return "no";
        case Flag::yes: return "yes";
        case Flag::not_applicable: return "not-applicable";
    }
    return "?";
}

const char* to_string(Projection p) {
    switch (p) {
        case Projection::bijective: return "bijective";
        case Projection::injective: return "injective";
        case Projection::neither: return "neither";
        case Projection::not_applicable: return "not-applicable";
    }
    return "?";
}

bool is_golomb_ruler(std::span<const long long> marks) {
    for (std::size_t i = 1; i < marks.size(); ++i) {
        if (marks[i] <= marks[i - 1]) throw std::invalid_argument("marks must be strictly increasing");
    }
    std::set<long long> seen;
    for (std::size_t i = 0; i < marks.size(); ++i) {
        for (std::size_t j = i + 1; j < marks.size(); ++j) {
            if (!seen.insert(marks[j] - marks[i]).second) return false;
        }
    }
    return true;
}

DotSet permute_dimensions(const DotSet& d, std::span<const int> sigma) {
    const std::size_t m = d.dim();
    if (sigma.size() != m) throw std::invalid_argument("permutation has wrong length");
    std::vector<bool> used(m, false);
    for (int s : sigma) {
        if (s < 0 || static_cast<std::size_t>(s) >= m || used[static_cast<std::size_t>(s)]) {
            throw std::invalid_argument("axis permutation is not a bijection");
        }
        used[static_cast<std::size_t>(s)] = true;
    }
    Shape shape(m);
    for (std::size_t j = 0; j < m; ++j) shape[j] = d.shape()[static_cast<std::size_t>(sigma[j])];
    std::vector<Point> dots;
    dots.reserve(d.size());
    for (const auto& p : d.dots()) {
        Point q(m);
        for (std::size_t j = 0; j < m; ++j) q[j] = p[static_cast<std::size_t>(sigma[j])];
        dots.push_back(std::move(q));
    }
    return DotSet(std::move(shape), std::move(dots));
}

DotSet reflect(const DotSet& d, std::size_t axis) {
    if (axis >= d.dim()) throw std::invalid_argument("axis out of range");
    auto dots = d.dots();
    for (auto& p : dots) p[axis] = d.shape()[axis] - 1 - p[axis];
    return DotSet(d.shape(), std::move(dots));
}

DotSet add_corner_dot(const DotSet& d) {
    Point origin(d.dim(), 0);
    if (d.contains(origin)) throw DuplicateDotError("origin is already a dot");
    auto dots = d.dots();
    dots.push_back(std::move(origin));
    return DotSet(d.shape(), std::move(dots));
}

DotSet tighten(const DotSet& d) {
    if (d.empty()) throw std::invalid_argument("cannot tighten an empty dot set");
    Point lo = d.dots().front();
    Point hi = lo;
    for (const auto& p : d.dots()) {
        for (std::size_t j = 0; j < p.size(); ++j) {
            lo[j] = std::min(lo[j], p[j]);
            hi[j] = std::max(hi[j], p[j]);
        }
    }
    Shape shape(d.dim());
    for (std::size_t j = 0; j < shape.size(); ++j) shape[j] = hi[j] - lo[j] + 1;
    auto dots = d.dots();
    for (auto& p : dots)
        for (std::size_t j = 0; j < p.size(); ++j) p[j] -= lo[j];
    return DotSet(std::move(shape), std::move(dots));
}

}  // namespace costas
