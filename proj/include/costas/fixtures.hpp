#pragma once

// Reference tables shipped under fixtures/, checked against freshly generated
// objects. fixtures/manifest.json lists each table with its generator
// parameters, the layout the rows were printed in, and expected properties.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "costas/construct.hpp"
#include "costas/dotset.hpp"

namespace costas::fixtures {

// Row layouts, all mapped to the library's canonical coordinates:
//   none                          as is
//   one_based                     subtract 1 everywhere
//   reversed_halves               each half printed least-significant first
//   odd_intermediate              left half reversed
//   odd_cube                      (v_m..v_1 of i, combined, v_1..v_m of j)
//   index_one_based               first column 1-based
//   index_one_based_reversed_field  same, remaining columns reversed
//   reversed_right_half           right half reversed
//   welch_perm_reversed_digits    "i value", both 1-based, value read with
//                                 the least-significant base-p digit first
enum class Layout {
    none,
    one_based,
    reversed_halves,
    odd_intermediate,
    odd_cube,
    index_one_based,
    index_one_based_reversed_field,
    reversed_right_half,
    welch_perm_reversed_digits,
};

Layout parse_layout(std::string_view name);

// p and m are used only by welch_perm_reversed_digits.
std::vector<int> normalize_row(std::vector<int> row, Layout layout, int p = 0, int m = 0);

std::filesystem::path default_dir();

struct TableResult {
    std::string id;
    bool pass = false;
    std::string detail;  // reason for a failure
};

// Throws costas::Error when the directory or its manifest is missing.
std::vector<TableResult> verify_all(const std::filesystem::path& dir);

}  // namespace costas::fixtures
