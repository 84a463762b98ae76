#pragma once

// Finite binary point sets in Z^m and the Costas property.
//
// A DotSet is the support of a binary function on a box of side lengths
// shape[0..m-1]; coordinates are 0-based. It has the Costas property when all
// difference vectors between distinct dots are distinct, i.e. every
// nontrivial autocorrelation value is at most one.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace costas {

using Point = std::vector<int>;
using Shape = std::vector<int>;

class DotSet {
public:
    DotSet() = default;
    // Throws std::invalid_argument for a bad shape or out-of-box dot and
    // DuplicateDotError for repeated dots. Dot order is preserved.
    DotSet(Shape shape, std::vector<Point> dots);

    std::size_t dim() const noexcept { return shape_.size(); }
    const Shape& shape() const noexcept { return shape_; }
    const std::vector<Point>& dots() const noexcept { return dots_; }
    std::size_t size() const noexcept { return dots_.size(); }
    bool empty() const noexcept { return dots_.empty(); }

    bool contains(const Point& p) const;
    bool in_bounds(const Point& p) const;

    // Same shape and dots, dots in lexicographic order.
    DotSet sorted() const;

    // Set equality: same shape and the same dots in any order.
    friend bool operator==(const DotSet& a, const DotSet& b);

private:
    Shape shape_;
    std::vector<Point> dots_;
};

struct Collision {
    Point difference;  // canonical: first nonzero coordinate positive
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // dot indices, i < j
};

struct VerifyReport {
    bool is_costas = true;
    std::size_t n_dots = 0;
    std::size_t n_pairs = 0;
    std::size_t n_distinct = 0;
    double distinct_fraction = 1.0;
    std::vector<Collision> collisions;
};

// Exhaustive pairwise difference check. Difference vectors are taken over
// unordered pairs and canonicalized by sign.
VerifyReport verify_costas(const DotSet& d);

// Number of dots i with i + k also a dot.
std::size_t autocorrelation(const DotSet& d, std::span<const int> k);

enum class Flag { no, yes, not_applicable };

// How a half of the coordinate vector projects onto [n]^s.
enum class Projection { bijective, injective, neither, not_applicable };

struct Classification {
    Flag permutation = Flag::not_applicable;
    Flag strict = Flag::no;
    Flag incomplete = Flag::not_applicable;
    Projection left_half = Projection::not_applicable;
    Projection right_half = Projection::not_applicable;
};

// Structural classification only; Costas status comes from verify_costas.
Classification classify(const DotSet& d);

const char* to_string(Flag f);
const char* to_string(Projection p);

// Throws std::invalid_argument for a non-increasing sequence.
bool is_golomb_ruler(std::span<const long long> marks);

// Output axis j is input axis sigma[j].
DotSet permute_dimensions(const DotSet& d, std::span<const int> sigma);

// Mirror one axis: x -> N-1-x.
DotSet reflect(const DotSet& d, std::size_t axis);

// Adds the all-zeros dot; throws DuplicateDotError if it is already present.
DotSet add_corner_dot(const DotSet& d);

// Translate to the origin and shrink the box to fit.
DotSet tighten(const DotSet& d);

}  // namespace costas
