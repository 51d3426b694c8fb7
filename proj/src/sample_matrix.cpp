#include "polytree/sample_matrix.hpp"

#include <cmath>

#include "polytree/error.hpp"

namespace polytree {

SampleMatrix::SampleMatrix(std::size_t n, std::size_t p) : n_(n), p_(p), values_(n * p, 0.0) {}

SampleMatrix::SampleMatrix(std::size_t n, std::size_t p, std::vector<double> column_major,
                           std::vector<std::string> names)
    : n_(n), p_(p), values_(std::move(column_major)) {
    if (values_.size() != n * p) {
        throw Error(ErrorKind::LengthMismatch, "sample matrix: expected " + std::to_string(n * p) + " values, got " +
                                                   std::to_string(values_.size()));
    }
    set_names(std::move(names));
}

void SampleMatrix::set_names(std::vector<std::string> names) {
    if (!names.empty() && names.size() != p_) {
        throw Error(ErrorKind::LengthMismatch,
                    "sample matrix: " + std::to_string(names.size()) + " names for " + std::to_string(p_) + " columns");
    }
    names_ = std::move(names);
}

std::string SampleMatrix::name(std::size_t col) const {
    if (!names_.empty()) return names_[col];
    return "X" + std::to_string(col + 1);
}

void SampleMatrix::validate() const {
    if (n_ < 2) throw Error(ErrorKind::TooFewSamples, "sample matrix: need at least 2 rows, got " + std::to_string(n_));
    for (std::size_t j = 0; j < p_; ++j) {
        for (std::size_t i = 0; i < n_; ++i) {
            if (!std::isfinite((*this)(i, j))) {
                throw Error(ErrorKind::NonFinite, "sample matrix: non-finite value in column " + name(j) + ", row " +
                                                      std::to_string(i + 1));
            }
        }
    }
}

}  // namespace polytree
