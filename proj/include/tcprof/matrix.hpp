#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tcprof {

/// Row-major dense square matrix of doubles.
class DenseMatrix {
public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n, double fill = 0.0) : n_(n), values_(n * n, fill) {}
    DenseMatrix(std::size_t n, std::vector<double> values) : n_(n), values_(std::move(values)) {
        if (values_.size() != n * n) throw std::invalid_argument("DenseMatrix: value count is not n*n");
    }

    std::size_t size() const noexcept { return n_; }

    std::span<double> row(std::size_t i) { return {values_.data() + i * n_, n_}; }
    std::span<const double> row(std::size_t i) const { return {values_.data() + i * n_, n_}; }

    double& operator()(std::size_t i, std::size_t j) { return values_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }

    const std::vector<double>& values() const noexcept { return values_; }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> values_;
};

}  // namespace tcprof
