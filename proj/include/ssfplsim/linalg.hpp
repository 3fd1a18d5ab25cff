#pragma once

#include <cstddef>
#include <vector>

namespace ssfplsim {

// Dense row-major matrix. Rows are contiguous, which is what the axpy-based
// accumulation kernels want.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double* row(std::size_t i) { return data_.data() + i * cols_; }
    const double* row(std::size_t i) const { return data_.data() + i * cols_; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    std::vector<double> col(std::size_t j) const {
        std::vector<double> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
        return out;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

// Cholesky factorisation of a symmetric positive-definite matrix (lower factor
// stored in place of the lower triangle). Throws singular_design when a pivot
// is not strictly positive.
class Cholesky {
public:
    explicit Cholesky(const Matrix& a);

    std::vector<double> solve(const std::vector<double>& b) const;
    // Diagonal of the inverse, needed for OLS standard errors.
    std::vector<double> inverse_diagonal() const;
    // (max pivot / min pivot)^2 -- cheap lower bound on the 2-norm condition
    // number, used to decide when to add a ridge.
    double condition_estimate() const { return cond_; }

private:
    Matrix l_;
    double cond_ = 0.0;
};

// A'A for row-major A (n x p): symmetric p x p.
Matrix crossprod(const Matrix& a);
// A'y
std::vector<double> crossprod_vec(const Matrix& a, const std::vector<double>& y);

}  // namespace ssfplsim
