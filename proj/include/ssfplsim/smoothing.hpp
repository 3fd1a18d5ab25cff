#pragma once

#include <vector>

#include "ssfplsim/bspline.hpp"
#include "ssfplsim/grid.hpp"
#include "ssfplsim/linalg.hpp"

namespace ssfplsim {

struct Bandwidth {
    double h = 0.0;  // 0 marks an unset bandwidth; every use site validates
    Bandwidth() = default;
    explicit Bandwidth(double value);
};

// Nadaraya-Watson weight matrix under the projection semimetric:
// entries(i,j) = K(d_theta(X_i, X_j)/h) / sum_k K(d_theta(X_i, X_k)/h).
// Rows are stochastic; the self weight is kept on the diagonal.
struct WeightMatrix {
    Matrix entries;
    Direction theta;
    Bandwidth h;
};

// Epanechnikov on [0,1): K(u) = 1 - u^2, zero beyond. The normalising constant
// cancels in the weights and is omitted.
double kernel_k(double u);

// |<theta, chi1 - chi2>|
double semimetric_d_theta(const Direction& theta, const Curve& chi1, const Curve& chi2);

// Projections <theta, X_i> for the whole sample; distances reduce to
// |s_i - s_j| by linearity of the inner product.
std::vector<double> project_sample(const Direction& theta, const FunctionalSample& sample);
double project_curve(const Direction& theta, const Curve& chi);

std::vector<double> nw_weights(const Direction& theta, const Bandwidth& h,
                               const Curve& chi, const FunctionalSample& sample);
// Same, with the query given by its projection value (used for the link
// estimator evaluated on an index grid).
std::vector<double> nw_weights_at_index(const std::vector<double>& projections,
                                        const Bandwidth& h, double u,
                                        const char* where = "query");

WeightMatrix weight_matrix(const Direction& theta, const Bandwidth& h,
                           const FunctionalSample& sample);
Matrix weight_matrix_from_projections(const std::vector<double>& projections,
                                      const Bandwidth& h);

// (I - W) A
Matrix profile_transform(const Matrix& a, const WeightMatrix& w);
std::vector<double> profile_transform(const std::vector<double>& a, const WeightMatrix& w);
Matrix profile_transform(const Matrix& a, const Matrix& w);
std::vector<double> profile_transform(const std::vector<double>& a, const Matrix& w);

// `count` quantiles of the positive pairwise projected distances at levels
// evenly spaced in [0.05, 0.50].
std::vector<Bandwidth> bandwidth_grid(const Direction& theta, const FunctionalSample& sample,
                                      int count);
std::vector<Bandwidth> bandwidth_grid_from_projections(const std::vector<double>& projections,
                                                       int count);

}  // namespace ssfplsim
