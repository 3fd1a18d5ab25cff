#pragma once

#include <string>
#include <vector>

#include "ssfplsim/dataset.hpp"
#include "ssfplsim/link.hpp"
#include "ssfplsim/simulation.hpp"

namespace ssfplsim {

// Everything a fit run produces: the coefficient summary, the estimated
// direction sampled on the grid, the link on an index grid, per-row
// predictions, and the full model needed to predict later. Round-trips
// losslessly through JSON.
struct RunReport {
    std::vector<std::string> x_names;
    std::vector<double> beta;
    std::vector<std::size_t> selected;
    double h = 0.0;
    double lambda = 0.0;
    double bic = 0.0;
    int spline_order = 3;
    int interior_knots = 3;
    std::vector<double> theta_coefficients;
    std::vector<double> theta_curve;
    std::vector<double> grid_points;
    std::vector<double> link_u;
    std::vector<double> link_m;
    std::vector<double> predictions;
    std::vector<double> residuals;
    double msep_value = 0.0;
    bool has_msep = false;
    // preprocessing settings, re-applied by the predict subcommand
    bool use_second_derivative = false;
    int deriv_basis_size = 20;
    int expand_degree = 0;
    bool expand_interaction = false;
    LinkModel model;  // training data embedded for later prediction
    DatasetMeta meta;
};

std::string run_report_to_json(const RunReport& r);
RunReport run_report_from_json(const std::string& text);
void save_run_report(const RunReport& r, const std::string& path);
RunReport load_run_report(const std::string& path);

// scenario reports: one-row-per-scenario CSV plus a full-detail JSON
std::vector<std::string> scenario_csv_header();
std::vector<double> scenario_csv_row(const ScenarioReport& r);
std::string scenario_report_to_json(const ScenarioReport& r);
ScenarioReport scenario_report_from_json(const std::string& text);

}  // namespace ssfplsim
