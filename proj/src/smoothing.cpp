#include "ssfplsim/smoothing.hpp"

#include <algorithm>
#include <cmath>

#include "ssfplsim/errors.hpp"
#include "ssfplsim/simd/ops.hpp"

namespace ssfplsim {

Bandwidth::Bandwidth(double value) : h(value) {
    if (!(h > 0.0) || !std::isfinite(h)) throw contract_violation("bandwidth must be positive and finite");
}

double kernel_k(double u) {
    if (u < 0.0) throw contract_violation("kernel argument must be nonnegative");
    return u < 1.0 ? 1.0 - u * u : 0.0;
}

double semimetric_d_theta(const Direction& theta, const Curve& chi1, const Curve& chi2) {
    require_same_grid(*theta.curve.grid, *chi1.grid, "semimetric_d_theta");
    require_same_grid(*chi1.grid, *chi2.grid, "semimetric_d_theta");
    return std::abs(inner_product(theta.curve, chi1) - inner_product(theta.curve, chi2));
}

double project_curve(const Direction& theta, const Curve& chi) {
    return inner_product(theta.curve, chi);
}

std::vector<double> project_sample(const Direction& theta, const FunctionalSample& sample) {
    require_same_grid(*theta.curve.grid, *sample.grid(), "project_sample");
    const std::size_t n = sample.size();
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = inner_product(*sample.grid(), theta.curve.values, sample.values(i));
    }
    return s;
}

namespace {

std::vector<double> normalized_row(const std::vector<double>& projections, double center,
                                   const Bandwidth& h, const char* where) {
    if (!(h.h > 0.0)) throw contract_violation("bandwidth is unset");
    const std::size_t n = projections.size();
    std::vector<double> w(n);
    const double total =
        simd::epan_weights(projections.data(), n, center, 1.0 / h.h, w.data());
    if (total == 0.0) throw empty_neighborhood(where, h.h);
    const double inv = 1.0 / total;
    for (double& x : w) x *= inv;
    return w;
}

}  // namespace

std::vector<double> nw_weights(const Direction& theta, const Bandwidth& h,
                               const Curve& chi, const FunctionalSample& sample) {
    require_same_grid(*chi.grid, *sample.grid(), "nw_weights");
    const std::vector<double> s = project_sample(theta, sample);
    const double center = project_curve(theta, chi);
    return normalized_row(s, center, h, "query");
}

std::vector<double> nw_weights_at_index(const std::vector<double>& projections,
                                        const Bandwidth& h, double u, const char* where) {
    return normalized_row(projections, u, h, where);
}

Matrix weight_matrix_from_projections(const std::vector<double>& projections,
                                      const Bandwidth& h) {
    if (!(h.h > 0.0)) throw contract_violation("bandwidth is unset");
    const std::size_t n = projections.size();
    Matrix w(n, n, 0.0);
    const double inv_h = 1.0 / h.h;
    for (std::size_t i = 0; i < n; ++i) {
        double* row = w.row(i);
        const double total =
            simd::epan_weights(projections.data(), n, projections[i], inv_h, row);
        // the diagonal carries K(0) = 1, so the row sum is at least 1
        const double inv = 1.0 / total;
        for (std::size_t j = 0; j < n; ++j) row[j] *= inv;
    }
    return w;
}

WeightMatrix weight_matrix(const Direction& theta, const Bandwidth& h,
                           const FunctionalSample& sample) {
    const std::vector<double> s = project_sample(theta, sample);
    return WeightMatrix{weight_matrix_from_projections(s, h), theta, h};
}

Matrix profile_transform(const Matrix& a, const Matrix& w) {
    const std::size_t n = w.rows();
    if (a.rows() != n) throw contract_violation("profile_transform row count mismatch");
    const std::size_t p = a.cols();
    Matrix out = a;
    for (std::size_t i = 0; i < n; ++i) {
        double* oi = out.row(i);
        const double* wi = w.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            if (wi[j] != 0.0) simd::axpy(-wi[j], a.row(j), oi, p);
        }
    }
    return out;
}

std::vector<double> profile_transform(const std::vector<double>& a, const Matrix& w) {
    const std::size_t n = w.rows();
    if (a.size() != n) throw contract_violation("profile_transform length mismatch");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = a[i] - simd::dot(w.row(i), a.data(), n);
    }
    return out;
}

Matrix profile_transform(const Matrix& a, const WeightMatrix& w) {
    return profile_transform(a, w.entries);
}

std::vector<double> profile_transform(const std::vector<double>& a, const WeightMatrix& w) {
    return profile_transform(a, w.entries);
}

std::vector<Bandwidth> bandwidth_grid_from_projections(const std::vector<double>& projections,
                                                       int count) {
    if (count < 1) throw contract_violation("bandwidth grid needs count >= 1");
    const std::size_t n = projections.size();
    if (n < 2) throw contract_violation("bandwidth grid needs n >= 2");
    std::vector<double> dist;
    dist.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = std::abs(projections[i] - projections[j]);
            if (d > 0.0) dist.push_back(d);
        }
    }
    if (dist.empty()) throw degenerate_projection();
    std::sort(dist.begin(), dist.end());
    std::vector<Bandwidth> out;
    out.reserve(static_cast<std::size_t>(count));
    const std::size_t k = dist.size();
    for (int i = 0; i < count; ++i) {
        const double level =
            count == 1 ? 0.05 : 0.05 + 0.45 * static_cast<double>(i) / (count - 1);
        // order statistic at ceil(level * k), 1-based
        std::size_t idx = static_cast<std::size_t>(std::ceil(level * static_cast<double>(k)));
        if (idx < 1) idx = 1;
        if (idx > k) idx = k;
        out.push_back(Bandwidth(dist[idx - 1]));
    }
    return out;
}

std::vector<Bandwidth> bandwidth_grid(const Direction& theta, const FunctionalSample& sample,
                                      int count) {
    return bandwidth_grid_from_projections(project_sample(theta, sample), count);
}

}  // namespace ssfplsim
