#pragma once

// OEIS b-file interchange: one "index value" record per line, consecutive
// increasing indices, '#' comment lines. Blank lines are ignored on input.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mcs/sequences.hpp"

namespace mcs {

struct BFileRecord {
    std::int64_t index;
    Term value;
    friend bool operator==(const BFileRecord&, const BFileRecord&) = default;
};

struct BFile {
    std::vector<BFileRecord> records;

    std::int64_t offset() const { return records.empty() ? 0 : records.front().index; }

    /// Records value[i] at index offset + i.
    static BFile from_terms(const std::vector<Term>& values, std::int64_t offset = 0);
};

/// Throws MalformedInput carrying the offending 1-based line number.
BFile parse_bfile(std::istream& in);
BFile read_bfile(const std::string& path);

void write_bfile(std::ostream& out, const BFile& file);

}  // namespace mcs
