#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "polytree/sample_matrix.hpp"

namespace polytree {

// Malformed or unusable input data (CLI exit status 2).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CsvOptions {
    // Map non-numeric columns to 1..levels in order of first appearance.
    bool ordinal_encode = false;
    // Unset: the first row is a header iff it has a non-numeric cell.
    std::optional<bool> header;
};

/// Comma-separated values, one observation per line. Cells are trimmed and
/// may be wrapped in double quotes. Empty cells and NA/NaN are missing values
/// and rejected, as are infinities and ragged rows.
SampleMatrix read_csv(std::istream& in, const CsvOptions& options = {});
SampleMatrix read_csv_file(const std::string& path, const CsvOptions& options = {});

// Header row of column names, then rows with 17 significant digits.
void write_csv(std::ostream& out, const SampleMatrix& data);

}  // namespace polytree
