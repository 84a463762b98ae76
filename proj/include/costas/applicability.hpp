#pragma once

// Which classical 2-D constructions supply a Costas permutation of order n^m:
//   form 1: n^m + 1 = p      (exponential Welch W1)
//   form 2: n^m + 2 = p^k    (Lempel-Golomb G2; W2 as well when k = 1)
//   form 3: n^m + 3 = p^k    (G3)

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace costas::applicability {

inline constexpr std::uint64_t kIntegerCap = std::uint64_t{1} << 63;

struct PrimePower {
    std::uint64_t p;
    unsigned k;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// x = p^k with p prime, else nullopt. Requires x >= 2.
std::optional<PrimePower> perfect_power(std::uint64_t x);

// n^m, throwing OverflowError when n^m + 3 would exceed the cap.
std::uint64_t checked_power(std::uint64_t n, unsigned m);

struct FormResult {
    int form = 0;
    std::uint64_t value = 0;  // n^m + form
    bool satisfied = false;
    std::optional<PrimePower> witness;
    std::vector<std::string> constructions;
};

struct Report {
    std::uint64_t n = 0;
    unsigned m = 0;
    std::uint64_t order = 0;  // n^m
    std::vector<FormResult> forms;  // forms 1, 2, 3
};

FormResult check_form(int form, std::uint64_t n, unsigned m);
Report check_applicability(std::uint64_t n, unsigned m);

struct Witness {
    std::uint64_t n;
    unsigned m;
    std::uint64_t p;
    unsigned k;
    friend bool operator==(const Witness&, const Witness&) = default;
};

// All witnesses for n in [n_lo, n_hi], m in [m_lo, m_hi]; n ascending, then m.
std::vector<Witness> scan_solutions(int form, std::uint64_t n_lo, std::uint64_t n_hi, unsigned m_lo, unsigned m_hi);

}  // namespace costas::applicability
