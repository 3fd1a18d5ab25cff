#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "ssfplsim/bspline.hpp"
#include "ssfplsim/grid.hpp"
#include "ssfplsim/linalg.hpp"
#include "ssfplsim/scad.hpp"
#include "ssfplsim/smoothing.hpp"

namespace ssfplsim {

// Profiled (approximately linear) model for a fixed (theta, h):
// y_tilde = (I-W) y, x_tilde = (I-W) X.
struct ProfiledDesign {
    std::vector<double> y_tilde;
    Matrix x_tilde;
    Direction theta;
    Bandwidth h;
};

// Per-coefficient penalty levels lambda_j = base * sigma_hat_j.
struct LambdaSchedule {
    double base_lambda = 0.0;
    std::vector<double> per_coefficient;

    static LambdaSchedule scaled(double base, const std::vector<double>& sigma_hat);
};

struct Baselines {
    std::vector<double> beta_ols;
    std::vector<double> beta_oracle;
};

struct FitResult {
    std::vector<double> beta_hat;
    Direction theta_hat;
    std::set<std::size_t> selected;
    Bandwidth h_hat;
    double lambda_hat = 0.0;
    double bic = 0.0;
    double objective_value = 0.0;
    int iterations = 0;
    bool converged = true;
    std::size_t candidate_index = 0;
    std::size_t infeasible_pairs = 0;
    std::optional<Baselines> baselines;
};

struct CandidateConfig {
    bool stage2 = false;
    double stage2_step = 0.5;
};

struct FitConfig {
    int h_count = 4;
    int lambda_count = 50;
    double lambda_floor_ratio = 1e-3;
    double tol = 1e-6;
    int max_iter = 1000;
    double scad_a = 3.7;
    double ridge = 1e-8;
    double ridge_condition_threshold = 1e10;
    bool with_baselines = false;
    std::vector<std::size_t> true_support;  // enables the ORACLE baseline
    CandidateConfig candidates;
    enum class PathInit { zero, ols } path_init = PathInit::zero;
    int threads = 1;
    // test/CLI hooks: fixed grids instead of the data-driven ones
    std::optional<std::vector<double>> lambda_override;
    std::optional<std::vector<double>> h_override;
};

ProfiledDesign build_profiled_design(const FunctionalSample& sample, const Matrix& x,
                                     const std::vector<double>& y, const Direction& theta,
                                     const Bandwidth& h);

// OLS on the profiled design with an optional ridge. Returns the coefficient
// vector and the estimated standard errors sigma_hat_j used to scale lambda_j.
struct OlsFit {
    std::vector<double> beta;
    std::vector<double> sigma_hat;
    double rss = 0.0;
};
OlsFit profiled_ols(const ProfiledDesign& d, double ridge);

struct DescentResult {
    std::vector<double> beta;
    double objective = 0.0;
    int iterations = 0;
    bool converged = true;
};

// Cyclic coordinate descent on Eq-style objective
//   1/2 ||y_tilde - x_tilde b||^2 + n * sum_j P_{lambda_j}(|b_j|),
// each coordinate solved exactly by scad_univariate_min. Produces exact zeros.
// objective_trace, when given, records the objective after every full cycle.
DescentResult coordinate_descent_scad(const ProfiledDesign& d, const LambdaSchedule& schedule,
                                      double a, const std::vector<double>& init, double tol,
                                      int max_iter,
                                      std::vector<double>* objective_trace = nullptr);

// BIC = n log(RSS/n) + df log(n), df = #nonzeros, RSS floored at 1e-12.
double bic_score(const ProfiledDesign& d, const std::vector<double>& beta);

// Stage 1: all calibrated directions with coefficients in {-1,0,1}^d (zero
// excluded, sign classes collapsed by the calibration sign rule), enumerated
// lexicographically. Stage 2 (optional): +-step perturbations of each
// coefficient of a base direction, re-calibrated.
std::vector<Direction> direction_candidates(const BSplineBasis& basis,
                                            const CandidateConfig& config);
std::vector<Direction> refine_candidates(const Direction& base, const BSplineBasis& basis,
                                         double step);

FitResult fit_ssfplsim(const FunctionalSample& sample, const Matrix& x,
                       const std::vector<double>& y, const BSplineBasis& basis,
                       const FitConfig& config);
FitResult fit_ssfplsim(const FunctionalSample& sample, const Matrix& x,
                       const std::vector<double>& y, const BSplineBasis& basis,
                       const FitConfig& config, const std::vector<Direction>& candidates);

// SCAD-penalised sparse linear model on mean-centred covariates, tuned by the
// same BIC. Internal baseline for the application pipeline (no functional
// part); the intercept absorbs the centring.
struct SlmFit {
    double intercept = 0.0;
    std::vector<double> beta;
    std::set<std::size_t> selected;
    double lambda = 0.0;
    double bic = 0.0;
};
SlmFit fit_sparse_linear_baseline(const Matrix& x, const std::vector<double>& y,
                                  const FitConfig& config);

}  // namespace ssfplsim
