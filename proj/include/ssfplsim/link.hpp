#pragma once

#include <vector>

#include "ssfplsim/estimator.hpp"

namespace ssfplsim {

// Trained model bundled with its training data; the link is a Nadaraya-Watson
// smooth of the partial residuals Y_i - X_i' beta_hat under (theta_hat, h_hat).
struct LinkModel {
    FitResult fit;
    FunctionalSample training_sample;
    Matrix training_x;
    std::vector<double> training_y;
    // widen h (doubling) when a prediction point has an empty neighbourhood;
    // off by default so extrapolation fails loudly.
    bool widen_h = false;
    // optional second bandwidth for the link step; defaults to fit.h_hat.
    std::optional<double> link_bandwidth;

    std::vector<double> partial_residuals() const;
    std::vector<double> training_projections() const;
    double bandwidth() const { return link_bandwidth.value_or(fit.h_hat.h); }
};

double estimate_link(const LinkModel& model, const Curve& chi);
// Same smoother evaluated at a raw index value u = <theta_hat, chi>.
double estimate_link_at_index(const LinkModel& model, double u);

double predict(const LinkModel& model, const std::vector<double>& x, const Curve& chi);

}  // namespace ssfplsim
