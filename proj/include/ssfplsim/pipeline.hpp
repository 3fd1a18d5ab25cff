#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ssfplsim/dataset.hpp"
#include "ssfplsim/report.hpp"

namespace ssfplsim {

// End-to-end fit on a Dataset: optional spectral preprocessing, optional
// polynomial/interaction expansion of the first two scalar covariates,
// prefix train/test split, outer BIC pass over the interior-knot grid,
// fit + link + predictions.
struct PipelineConfig {
    bool use_second_derivative = false;
    int deriv_basis_size = 20;
    int expand_degree = 0;  // 0 = keep scalar covariates as-is
    bool expand_interaction = false;
    int spline_order = 3;
    std::vector<int> knots_grid = {3};
    std::size_t n_train = 0;  // 0 = all rows train, no prediction step
    bool widen_h = false;
    bool slm_baseline = false;
    FitConfig fit;

    static PipelineConfig from_file(const std::string& path);
};

struct PipelineResult {
    RunReport report;
    int chosen_knots = 0;
    std::optional<double> slm_msep;
    std::vector<double> test_y;
    bool test_has_response = false;
};

PipelineResult run_fit_pipeline(const Dataset& ds, const PipelineConfig& cfg);

// Re-apply a fitted model to new data (the predict subcommand).
struct PredictionResult {
    std::vector<double> predictions;
    std::vector<double> residuals;  // empty when the response is absent
    std::optional<double> msep;
};
PredictionResult predict_dataset(const RunReport& report, const Dataset& ds);

}  // namespace ssfplsim
