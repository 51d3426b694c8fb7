#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace polytree {

/// n x p matrix of observations, stored column-major so that each variable's
/// sample is a contiguous span.
class SampleMatrix {
public:
    SampleMatrix() = default;
    SampleMatrix(std::size_t n, std::size_t p);
    SampleMatrix(std::size_t n, std::size_t p, std::vector<double> column_major, std::vector<std::string> names = {});

    std::size_t n() const noexcept { return n_; }
    std::size_t p() const noexcept { return p_; }

    double& operator()(std::size_t row, std::size_t col) { return values_[col * n_ + row]; }
    double operator()(std::size_t row, std::size_t col) const { return values_[col * n_ + row]; }

    std::span<const double> column(std::size_t col) const { return {values_.data() + col * n_, n_}; }
    std::span<double> column(std::size_t col) { return {values_.data() + col * n_, n_}; }

    const std::vector<std::string>& names() const noexcept { return names_; }
    void set_names(std::vector<std::string> names);
    // Label of column `col`: its name if set, otherwise "X<col+1>".
    std::string name(std::size_t col) const;

    // Throws polytree::Error if n < 2 or any entry is not finite.
    void validate() const;

private:
    std::size_t n_ = 0;
    std::size_t p_ = 0;
    std::vector<double> values_;
    std::vector<std::string> names_;
};

}  // namespace polytree
