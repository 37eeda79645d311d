#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "splitprob/mc.hpp"
#include "splitprob/types.hpp"

namespace splitprob::io {

// Shortest-roundtrip 17-significant-digit decimal; byte-stable across runs.
std::string format_double(double v);

// Plain tabular artifact: '#'-prefixed metadata lines, one header row, cells
// already formatted.
struct Sheet {
    std::vector<std::string> comments;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_comment(std::string line) { comments.push_back(std::move(line)); }
};

void write_csv(std::ostream& os, const Sheet& sheet);

// EstimateTable as rows (side, outcome, count, p_hat, std_err).
Sheet estimate_sheet(const mc::EstimateTable& table);
std::string estimate_json(const mc::EstimateTable& table);

// JointSplittingTable as rows (side, outcome, value).
Sheet table_sheet(const JointSplittingTable& table);

}  // namespace splitprob::io
