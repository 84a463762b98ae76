#pragma once

// File formats.
//
// DotSet TSV:
//   # dim=<m> shape=<N1,...,Nm> [base=1]
//   # provenance={...}            (optional; any further '#' line is a comment)
//   c1<TAB>c2<TAB>...<TAB>cm      (one dot per line)
// Coordinates are 0-based unless the header says base=1.
//
// Permutation: one line of comma-separated 0-based images, or a two-column
// table "index value" (0-based), one row per line.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "costas/construct.hpp"
#include "costas/dotset.hpp"
#include "costas/gf.hpp"

namespace costas::io {

struct WriteOptions {
    bool one_based = false;
    nlohmann::json provenance;  // omitted when null
};

void write_dotset(std::ostream& out, const DotSet& d, const WriteOptions& opts = {});
std::string to_tsv(const DotSet& d, const WriteOptions& opts = {});

// Throws FormatError naming the offending line.
DotSet read_dotset(std::istream& in);
DotSet read_dotset_file(const std::string& path);

Permutation read_permutation(std::istream& in);
Permutation read_permutation_file(const std::string& path);
void write_permutation(std::ostream& out, const Permutation& perm);

// Whitespace-separated integer rows; blank and '#' lines skipped.
std::vector<std::vector<int>> read_table(std::istream& in);
std::vector<std::vector<int>> read_table_file(const std::string& path);

// m rows of comma-separated entries, one row per line.
gf::Matrix read_matrix(std::istream& in);
gf::Matrix read_matrix_file(const std::string& path);

nlohmann::json to_json(const VerifyReport& rep);
nlohmann::json to_json(const Classification& c);

}  // namespace costas::io
