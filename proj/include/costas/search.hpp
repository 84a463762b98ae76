#pragma once

// Monte Carlo greedy packing of Costas dot sets, sieve candidate generators,
// and comparison helpers.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "costas/dotset.hpp"
#include "costas/gf.hpp"

namespace costas::search {

// Identifies the shuffle procedure so results can be replayed elsewhere:
// restart r uses std::mt19937_64 seeded with splitmix64(seed + (r+1)*phi64),
// and a Fisher-Yates pass (high index down) drawing j uniformly in [0, i] by
// rejection sampling on the raw 64-bit output.
inline constexpr const char* kPrngId = "mt19937_64/splitmix64-restart/fisher-yates-rejection";

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t restart_seed(std::uint64_t seed, std::uint64_t restart);

// Keeps a Costas dot set and the set of its difference vectors; a trial dot
// is accepted iff none of its differences to the current dots is already
// present (or repeats among themselves).
class IncrementalPacker {
public:
    explicit IncrementalPacker(Shape shape);

    const Shape& shape() const noexcept { return shape_; }
    bool try_add(const Point& p);
    void clear();
    const std::vector<Point>& dots() const noexcept { return dots_; }
    std::size_t size() const noexcept { return dots_.size(); }
    DotSet to_dotset() const { return DotSet(shape_, dots_); }

    // Difference vectors currently marked, each sign separately.
    std::vector<Point> difference_set() const;

    // Raw interface on precomputed position codes, used by greedy_pack.
    std::int64_t encode(const Point& p) const;
    bool try_add_code(std::int64_t code, const Point& p);

private:
    Shape shape_;
    std::vector<std::int64_t> strides_;
    std::int64_t offset_ = 0;
    std::vector<std::uint8_t> seen_;
    std::vector<std::int64_t> codes_;
    std::vector<Point> dots_;
    std::vector<std::size_t> marked_;  // keys marked by the current trial
};

struct SearchConfig {
    Shape shape;
    std::uint64_t restarts = 1;
    std::uint64_t seed = 0;
    // Empty: every lattice point of the shape. Otherwise the candidate list
    // (points outside the shape are dropped).
    std::vector<Point> candidates;
    std::string candidate_label = "full-lattice";
    unsigned threads = 1;  // 0: hardware concurrency
};

struct SearchResult {
    DotSet best;
    std::map<std::size_t, std::uint64_t> histogram;  // dots -> restarts
    double elapsed_seconds = 0.0;
    std::uint64_t seed = 0;
    std::string prng_id = kPrngId;
};

SearchResult greedy_pack(const SearchConfig& cfg);

// Sieve candidates from the slice equations. Coordinates are exponents in
// 1..q-1 stored 0-based.
//   1: sum_t a_t^(i_t + x_t) = 0 over GF(q), any number of dimensions
//   2: k = a^(i+x) + b^(j+y) mod p
//   3: k = a^(i+j) mod p
//   4: a^(i+d) = j*k mod p
struct SliceParams {
    gf::FieldCtx field;
    unsigned dims = 3;                    // variant 1 only
    std::vector<gf::FieldElem> generators;  // empty: first primitive root
    std::vector<std::uint64_t> shifts;      // empty: zeros
};

std::vector<Point> slice_candidates(int variant, const SliceParams& params);

// Candidates as a DotSet of shape (q-1)^dims.
DotSet slice_dotset(int variant, const SliceParams& params);

// |a ∩ b|; shapes must agree.
std::size_t overlap(const DotSet& a, const DotSet& b);

struct BlankLines {
    std::vector<int> rows;
    std::vector<int> columns;
};

// Rows are indexed by the first coordinate, columns by the second.
BlankLines blank_lines(const DotSet& d);

}  // namespace costas::search
