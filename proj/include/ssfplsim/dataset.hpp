#pragma once

#include <string>
#include <vector>

#include "ssfplsim/grid.hpp"
#include "ssfplsim/linalg.hpp"

namespace ssfplsim {

// Column layout of a CSV dataset: the response, the scalar covariates, and a
// contiguous block of curve columns with their abscissa range. The range is
// mapped affinely onto [0,1] before any quadrature.
struct DatasetSchema {
    std::string response;
    std::vector<std::string> scalars;
    std::string curve_first;
    std::string curve_last;
    double wave_min = 0.0;
    double wave_max = 1.0;

    static DatasetSchema from_file(const std::string& path);
    void save(const std::string& path) const;
};

struct DatasetMeta {
    std::string source_path;
    std::string response_name;
    std::vector<std::string> scalar_names;
    double wave_min = 0.0;
    double wave_max = 1.0;
    std::size_t curve_points = 0;
};

struct Dataset {
    std::vector<double> y;
    Matrix x;
    std::vector<std::string> x_names;
    FunctionalSample curves;
    DatasetMeta meta;

    std::size_t size() const { return y.size(); }
};

Dataset read_dataset(const std::string& path, const DatasetSchema& schema);
void write_dataset(const Dataset& ds, const std::string& path);

// Least-squares projection of each curve onto a cubic B-spline basis of the
// given dimension; the fitted spline's analytic second derivative evaluated
// back on the grid.
FunctionalSample second_derivative(const FunctionalSample& sample, int basis_size);

struct ExpandedCovariates {
    Matrix x;
    std::vector<std::string> names;
};
// [X1, X2, X1^2, X2^2, ..., X1^q, X2^q, X1*X2 (if interaction)]
ExpandedCovariates expand_covariates(const std::vector<double>& x1,
                                     const std::vector<double>& x2, int degree,
                                     bool interaction);

// order-preserving prefix split
std::pair<Dataset, Dataset> split(const Dataset& ds, std::size_t n_train);

double msep(const std::vector<double>& y_true, const std::vector<double>& y_pred);

// low-level CSV helpers shared by dataset and report writers
std::vector<std::vector<std::string>> read_csv(const std::string& path);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace ssfplsim
