#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ssfplsim/estimator.hpp"
#include "ssfplsim/link.hpp"
#include "ssfplsim/rng.hpp"

namespace ssfplsim {

// One Monte-Carlo scenario of the simulation study.
struct Scenario {
    std::string name;
    std::size_t n = 100;
    std::size_t p = 50;
    double rho = 0.0;
    double c = 0.01;  // signal-to-noise ratio: Var(eps) = c * Var(regression)
    std::size_t M = 100;
    std::uint64_t seed = 1;
    std::size_t grid_size = 100;
    std::size_t test_size = 100;

    void validate() const;
};

struct ReplicateDetail {
    std::size_t index = 0;
    bool ok = false;
    std::vector<std::size_t> selected;
    std::optional<double> correct_pct;
    std::optional<double> incorrect_pct;
    double beta_se_pls = 0.0;
    double beta_se_ols = 0.0;
    double beta_se_oracle = 0.0;
    double theta_se = 0.0;
    double msep = 0.0;
    std::size_t msep_excluded = 0;
    double h = 0.0;
    double lambda = 0.0;
    std::size_t candidate_index = 0;
};

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
};

struct ScenarioReport {
    Scenario scenario;
    std::optional<double> correct_pct;
    std::optional<double> incorrect_pct;
    MeanSd beta_se_oracle, beta_se_pls, beta_se_ols;
    MeanSd theta_se;
    std::vector<double> msep_values;
    double msep_median = 0.0;
    std::size_t failures = 0;
    std::size_t msep_excluded = 0;
    std::vector<ReplicateDetail> replicates;
    double elapsed_seconds = 0.0;  // timing sidecar only, never serialized
};

// n draws of an AR(1)-correlated Gaussian vector: cov (rho^{|j-k|})_{jk}.
Matrix gen_scalar_covariates(std::size_t n, std::size_t p, double rho, Rng& rng);

// X_i(t) = a cos(2 pi t) + b sin(4 pi t) + 2 c (t - 0.25)(t - 0.5),
// a, b, c iid Uniform[0, 10].
FunctionalSample gen_curves(std::size_t n, const std::shared_ptr<const Grid>& grid, Rng& rng);

// calibrated (0,1,0,1,-1,-1) in the order-3 / 3-interior-knot basis.
Direction true_direction(const BSplineBasis& basis);

// (3, 1.5, 0, 0, 2, 0, ..., 0)
std::vector<double> true_beta(std::size_t p);

// Y_i = X_i' beta0 + <theta0, curve_i>^3 + eps, Var(eps) = c * var(regression).
std::vector<double> gen_response(const Matrix& x, const FunctionalSample& sample,
                                 const Direction& theta0, const std::vector<double>& beta0,
                                 double c, Rng& rng);

struct SelectionPct {
    std::optional<double> correct;
    std::optional<double> incorrect;
};
SelectionPct metric_selection(const std::vector<double>& beta_hat,
                              const std::vector<double>& beta0);
double metric_beta_se(const std::vector<double>& beta_hat, const std::vector<double>& beta0);
double metric_theta_se(const Direction& theta_hat, const Direction& theta0);
// Eq.-(17)-style MSEP of the link over a test sample; infeasible test curves
// are excluded and counted.
double metric_link_msep(const LinkModel& model, const FunctionalSample& test,
                        const Direction& theta0, double (*m_true)(double),
                        std::size_t* excluded = nullptr);

ScenarioReport run_scenario(const Scenario& s, const FitConfig& fit_config, int threads = 1);

// Exactly the data replicate k of run_scenario sees (same child stream, same
// draw order). Used by the CLI --emit-data hook.
struct ReplicateData {
    Matrix x;
    FunctionalSample curves;
    std::vector<double> y;
};
ReplicateData make_replicate_data(const Scenario& s, std::size_t k);

}  // namespace ssfplsim
