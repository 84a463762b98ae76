#include "costas/search.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

namespace costas::search {

namespace {

constexpr std::uint64_t kPhi64 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kMaxDifferenceTable = std::uint64_t{1} << 30;

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    // Largest multiple of bound that fits; reject draws above it.
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x > limit);
    return x % bound;
}

std::vector<Point> lattice(const Shape& shape) {
    std::vector<Point> out;
    Point cur(shape.size(), 0);
    while (true) {
        out.push_back(cur);
        std::size_t j = shape.size();
        while (j-- > 0) {
            if (++cur[j] < shape[j]) break;
            cur[j] = 0;
        }
        if (j == static_cast<std::size_t>(-1)) break;
    }
    return out;
}

struct Partial {
    std::vector<Point> best;  // sorted
    std::map<std::size_t, std::uint64_t> histogram;
};

bool better(const std::vector<Point>& a, const std::vector<Point>& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
}

Partial run_restarts(const SearchConfig& cfg, const std::vector<Point>& cands, std::uint64_t first,
                     std::uint64_t last) {
    Partial out;
    IncrementalPacker packer(cfg.shape);
    std::vector<std::int64_t> codes(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i) codes[i] = packer.encode(cands[i]);
    std::vector<std::uint32_t> order(cands.size());
    bool have_best = false;
    for (std::uint64_t r = first; r < last; ++r) {
        std::mt19937_64 rng(restart_seed(cfg.seed, r));
        for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
        for (std::size_t i = order.size(); i-- > 1;) {
            std::swap(order[i], order[uniform_below(rng, i + 1)]);
        }
        packer.clear();
        for (std::uint32_t idx : order) packer.try_add_code(codes[idx], cands[idx]);
        ++out.histogram[packer.size()];
        if (!have_best || packer.size() >= out.best.size()) {
            auto dots = packer.dots();
            std::sort(dots.begin(), dots.end());
            if (!have_best || better(dots, out.best)) {
                out.best = std::move(dots);
                have_best = true;
            }
        }
    }
    return out;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
    x += kPhi64;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t restart_seed(std::uint64_t seed, std::uint64_t restart) {
    return splitmix64(seed + (restart + 1) * kPhi64);
}

IncrementalPacker::IncrementalPacker(Shape shape) : shape_(std::move(shape)) {
    if (shape_.empty()) throw std::invalid_argument("packer needs at least one dimension");
    strides_.resize(shape_.size());
    std::uint64_t acc = 1;
    for (std::size_t j = shape_.size(); j-- > 0;) {
        if (shape_[j] < 1) throw std::invalid_argument("side lengths must be >= 1");
        strides_[j] = static_cast<std::int64_t>(acc);
        offset_ += static_cast<std::int64_t>(acc) * (shape_[j] - 1);
        acc *= static_cast<std::uint64_t>(2 * shape_[j] - 1);
        if (acc > kMaxDifferenceTable) throw std::invalid_argument("shape too large for the difference table");
    }
    seen_.assign(acc, 0);
    seen_[static_cast<std::size_t>(offset_)] = 1;  // zero difference: duplicate dot
}

std::int64_t IncrementalPacker::encode(const Point& p) const {
    if (p.size() != shape_.size()) throw std::invalid_argument("point has wrong dimension");
    std::int64_t code = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[j] < 0 || p[j] >= shape_[j]) throw std::invalid_argument("point outside the shape");
        code += strides_[j] * p[j];
    }
    return code;
}

bool IncrementalPacker::try_add(const Point& p) { return try_add_code(encode(p), p); }

bool IncrementalPacker::try_add_code(std::int64_t code, const Point& p) {
    marked_.clear();
    for (std::int64_t e : codes_) {
        const auto fwd = static_cast<std::size_t>(code - e + offset_);
        const auto back = static_cast<std::size_t>(e - code + offset_);
        if (seen_[fwd]) {
            for (std::size_t k : marked_) seen_[k] = 0;
            return false;
        }
        seen_[fwd] = 1;
        seen_[back] = 1;
        marked_.push_back(fwd);
        marked_.push_back(back);
    }
    codes_.push_back(code);
    dots_.push_back(p);
    return true;
}

void IncrementalPacker::clear() {
    for (std::size_t i = 0; i < codes_.size(); ++i) {
        for (std::size_t j = i + 1; j < codes_.size(); ++j) {
            seen_[static_cast<std::size_t>(codes_[i] - codes_[j] + offset_)] = 0;
            seen_[static_cast<std::size_t>(codes_[j] - codes_[i] + offset_)] = 0;
        }
    }
    codes_.clear();
    dots_.clear();
}

std::vector<Point> IncrementalPacker::difference_set() const {
    std::vector<Point> out;
    for (std::size_t key = 0; key < seen_.size(); ++key) {
        if (!seen_[key] || key == static_cast<std::size_t>(offset_)) continue;
        Point d(shape_.size());
        auto rest = static_cast<std::int64_t>(key);
        for (std::size_t j = 0; j < shape_.size(); ++j) {
            d[j] = static_cast<int>(rest / strides_[j]) - (shape_[j] - 1);
            rest %= strides_[j];
        }
        out.push_back(std::move(d));
    }
    std::sort(out.begin(), out.end());
    return out;
}

SearchResult greedy_pack(const SearchConfig& cfg) {
    if (cfg.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    const auto start = std::chrono::steady_clock::now();
    DotSet box(cfg.shape, {});  // validates the shape

    std::vector<Point> cands;
    if (cfg.candidates.empty()) {
        cands = lattice(cfg.shape);
    } else {
        std::set<Point> unique;
        for (const auto& p : cfg.candidates) {
            if (box.in_bounds(p) && unique.insert(p).second) cands.push_back(p);
        }
    }

    SearchResult res;
    res.seed = cfg.seed;
    if (cands.empty()) {
        res.best = box;
        res.histogram[0] = cfg.restarts;
        return res;
    }

    unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, cfg.restarts));
    std::vector<Partial> parts(threads);
    if (threads == 1) {
        parts[0] = run_restarts(cfg, cands, 0, cfg.restarts);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (cfg.restarts + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::uint64_t lo = std::min<std::uint64_t>(cfg.restarts, t * chunk);
            const std::uint64_t hi = std::min<std::uint64_t>(cfg.restarts, lo + chunk);
            pool.emplace_back([&, t, lo, hi] { parts[t] = run_restarts(cfg, cands, lo, hi); });
        }
        for (auto& th : pool) th.join();
    }

    std::vector<Point> best;
    bool have = false;
    for (auto& part : parts) {
        for (auto [k, v] : part.histogram) res.histogram[k] += v;
        if (part.histogram.empty()) continue;
        if (!have || better(part.best, best)) {
            best = std::move(part.best);
            have = true;
        }
    }
    res.best = DotSet(cfg.shape, std::move(best));
    res.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

namespace {

std::vector<std::int64_t> discrete_logs(const gf::FieldCtx& ctx, const gf::FieldElem& g) {
    std::vector<std::int64_t> logs(ctx.q(), -1);
    gf::FieldElem cur = ctx.one();
    for (std::uint64_t e = 0; e + 1 < ctx.q(); ++e) {
        logs[ctx.index_of(cur)] = static_cast<std::int64_t>(e);
        cur = ctx.mul(cur, g);
    }
    return logs;
}

// g^e for e = 0..q-2, as field indices.
std::vector<std::uint64_t> power_table(const gf::FieldCtx& ctx, const gf::FieldElem& g) {
    std::vector<std::uint64_t> out;
    gf::FieldElem cur = ctx.one();
    for (std::uint64_t e = 0; e + 1 < ctx.q(); ++e) {
        out.push_back(ctx.index_of(cur));
        cur = ctx.mul(cur, g);
    }
    return out;
}

}  // namespace

std::vector<Point> slice_candidates(int variant, const SliceParams& params) {
    const gf::FieldCtx& ctx = params.field;
    if (variant < 1 || variant > 4) throw std::invalid_argument("slice variant must be 1..4");
    if (ctx.q() < 3) throw std::invalid_argument("slice generators need q > 2");
    if (variant != 1 && ctx.m() != 1) throw std::invalid_argument("slice variants 2-4 need a prime field");
    const unsigned dims = variant == 1 ? params.dims : 3;
    if (dims < 2) throw std::invalid_argument("slice variant 1 needs at least 2 dimensions");
    const std::size_t n_gens = variant == 1 ? dims : (variant == 2 ? 2 : 1);
    const std::size_t n_shifts = variant == 1 ? dims : (variant == 2 ? 2 : (variant == 4 ? 1 : 0));

    std::vector<gf::FieldElem> gens = params.generators;
    if (gens.empty()) gens.assign(n_gens, gf::find_primitive_root(ctx));
    if (gens.size() != n_gens) throw std::invalid_argument("wrong number of slice generators");
    for (const auto& g : gens) {
        if (!gf::is_primitive_root(ctx, g)) throw std::invalid_argument("slice generator is not primitive");
    }
    std::vector<std::uint64_t> shifts = params.shifts;
    if (shifts.empty()) shifts.assign(n_shifts, 0);
    if (shifts.size() != n_shifts) throw std::invalid_argument("wrong number of slice shifts");

    const std::uint64_t order = ctx.q() - 1;  // exponents i in 1..order
    std::vector<std::vector<std::uint64_t>> pw;
    for (const auto& g : gens) pw.push_back(power_table(ctx, g));
    auto power = [&](std::size_t t, std::uint64_t e) { return pw[t][e % order]; };

    std::vector<Point> out;
    if (variant == 1) {
        const auto last_log = discrete_logs(ctx, gens.back());
        std::vector<std::uint64_t> idx(dims - 1, 1);
        while (true) {
            gf::FieldElem sum = ctx.zero();
            for (std::size_t t = 0; t + 1 < dims; ++t) {
                sum = ctx.add(sum, ctx.element_at(power(t, idx[t] + shifts[t])));
            }
            const gf::FieldElem target = ctx.neg(sum);
            if (target != ctx.zero()) {
                const auto e = static_cast<std::uint64_t>(last_log[ctx.index_of(target)]);
                // i_last + x_last == e (mod q-1), i_last in 1..q-1
                std::uint64_t i_last = (e + order - shifts.back() % order) % order;
                if (i_last == 0) i_last = order;
                Point p;
                for (auto v : idx) p.push_back(static_cast<int>(v - 1));
                p.push_back(static_cast<int>(i_last - 1));
                out.push_back(std::move(p));
            }
            std::size_t t = idx.size();
            while (t-- > 0) {
                if (++idx[t] <= order) break;
                idx[t] = 1;
            }
            if (t == static_cast<std::size_t>(-1)) break;
        }
        return out;
    }

    const std::uint64_t p = ctx.p();
    for (std::uint64_t i = 1; i <= order; ++i) {
        for (std::uint64_t j = 1; j <= order; ++j) {
            std::uint64_t k = 0;
            switch (variant) {
                case 2: k = (power(0, i + shifts[0]) + power(1, j + shifts[1])) % p; break;
                case 3: k = power(0, i + j); break;
                case 4: k = power(0, i + shifts[0]) * gf::pow_mod(j, p - 2, p) % p; break;
            }
            if (k == 0) continue;
            out.push_back({static_cast<int>(i - 1), static_cast<int>(j - 1), static_cast<int>(k - 1)});
        }
    }
    return out;
}

DotSet slice_dotset(int variant, const SliceParams& params) {
    const unsigned dims = variant == 1 ? params.dims : 3;
    return DotSet(Shape(dims, static_cast<int>(params.field.q() - 1)), slice_candidates(variant, params));
}

std::size_t overlap(const DotSet& a, const DotSet& b) {
    if (a.shape() != b.shape()) throw std::invalid_argument("overlap: shapes differ");
    std::set<Point> left(a.dots().begin(), a.dots().end());
    std::size_t count = 0;
    for (const auto& p : b.dots()) count += left.count(p);
    return count;
}

BlankLines blank_lines(const DotSet& d) {
    if (d.dim() != 2) throw std::invalid_argument("blank_lines needs a 2-D dot set");
    std::vector<bool> row(static_cast<std::size_t>(d.shape()[0]), false);
    std::vector<bool> col(static_cast<std::size_t>(d.shape()[1]), false);
    for (const auto& p : d.dots()) {
        row[static_cast<std::size_t>(p[0])] = true;
        col[static_cast<std::size_t>(p[1])] = true;
    }
    BlankLines out;
    for (std::size_t i = 0; i < row.size(); ++i)
        if (!row[i]) out.rows.push_back(static_cast<int>(i));
    for (std::size_t i = 0; i < col.size(); ++i)
        if (!col[i]) out.columns.push_back(static_cast<int>(i));
    return out;
}

}  // namespace costas::search
