#include "ssfplsim/linalg.hpp"

#include <cmath>
#include <limits>

#include "ssfplsim/errors.hpp"
#include "ssfplsim/simd/ops.hpp"

namespace ssfplsim {

Cholesky::Cholesky(const Matrix& a) {
    const std::size_t p = a.rows();
    if (a.cols() != p) throw contract_violation("Cholesky needs a square matrix");
    l_ = Matrix(p, p, 0.0);
    double dmin = std::numeric_limits<double>::infinity();
    double dmax = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        double diag = a(j, j) - simd::dot(l_.row(j), l_.row(j), j);
        if (!(diag > 0.0) || !std::isfinite(diag)) {
            throw singular_design("non-positive pivot in Cholesky at column " +
                                  std::to_string(j));
        }
        diag = std::sqrt(diag);
        l_(j, j) = diag;
        dmin = std::min(dmin, diag);
        dmax = std::max(dmax, diag);
        for (std::size_t i = j + 1; i < p; ++i) {
            const double off = a(i, j) - simd::dot(l_.row(i), l_.row(j), j);
            l_(i, j) = off / diag;
        }
    }
    const double r = dmax / dmin;
    cond_ = r * r;
}

std::vector<double> Cholesky::solve(const std::vector<double>& b) const {
    const std::size_t p = l_.rows();
    if (b.size() != p) throw contract_violation("Cholesky::solve dimension mismatch");
    std::vector<double> y(p);
    for (std::size_t i = 0; i < p; ++i) {
        y[i] = (b[i] - simd::dot(l_.row(i), y.data(), i)) / l_(i, i);
    }
    std::vector<double> x(p);
    for (std::size_t ii = p; ii-- > 0;) {
        double acc = y[ii];
        for (std::size_t k = ii + 1; k < p; ++k) acc -= l_(k, ii) * x[k];
        x[ii] = acc / l_(ii, ii);
    }
    return x;
}

std::vector<double> Cholesky::inverse_diagonal() const {
    // invert L column by column; diag(A^-1)_j = sum_k Linv(k,j)^2
    const std::size_t p = l_.rows();
    Matrix linv(p, p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        linv(j, j) = 1.0 / l_(j, j);
        for (std::size_t i = j + 1; i < p; ++i) {
            double acc = 0.0;
            for (std::size_t k = j; k < i; ++k) acc += l_(i, k) * linv(k, j);
            linv(i, j) = -acc / l_(i, i);
        }
    }
    std::vector<double> d(p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t k = j; k < p; ++k) d[j] += linv(k, j) * linv(k, j);
    }
    return d;
}

Matrix crossprod(const Matrix& a) {
    const std::size_t n = a.rows(), p = a.cols();
    Matrix g(p, p, 0.0);
    // rank-1 accumulation over rows; upper triangle only, then mirror
    for (std::size_t i = 0; i < n; ++i) {
        const double* r = a.row(i);
        for (std::size_t j = 0; j < p; ++j) {
            if (r[j] != 0.0) simd::axpy(r[j], r + j, g.row(j) + j, p - j);
        }
    }
    for (std::size_t j = 0; j < p; ++j)
        for (std::size_t k = j + 1; k < p; ++k) g(k, j) = g(j, k);
    return g;
}

std::vector<double> crossprod_vec(const Matrix& a, const std::vector<double>& y) {
    const std::size_t n = a.rows(), p = a.cols();
    if (y.size() != n) throw contract_violation("crossprod_vec dimension mismatch");
    std::vector<double> out(p, 0.0);
    for (std::size_t i = 0; i < n; ++i) simd::axpy(y[i], a.row(i), out.data(), p);
    return out;
}

}  // namespace ssfplsim
