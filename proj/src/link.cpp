#include "ssfplsim/link.hpp"

#include <cmath>

#include "ssfplsim/errors.hpp"
#include "ssfplsim/simd/ops.hpp"

namespace ssfplsim {

std::vector<double> LinkModel::partial_residuals() const {
    const std::size_t n = training_y.size();
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = training_y[i] -
               simd::dot(training_x.row(i), fit.beta_hat.data(), fit.beta_hat.size());
    }
    return r;
}

std::vector<double> LinkModel::training_projections() const {
    return project_sample(fit.theta_hat, training_sample);
}

namespace {

double smooth_at(const LinkModel& model, double u) {
    const std::vector<double> proj = model.training_projections();
    const std::vector<double> r = model.partial_residuals();
    double h = model.bandwidth();
    for (int attempt = 0;; ++attempt) {
        try {
            const std::vector<double> w = nw_weights_at_index(proj, Bandwidth(h), u, "prediction");
            return simd::dot(w.data(), r.data(), r.size());
        } catch (const empty_neighborhood&) {
            if (!model.widen_h || attempt >= 64) throw;
            h *= 2.0;
        }
    }
}

}  // namespace

double estimate_link(const LinkModel& model, const Curve& chi) {
    require_same_grid(*chi.grid, *model.training_sample.grid(), "estimate_link");
    return smooth_at(model, project_curve(model.fit.theta_hat, chi));
}

double estimate_link_at_index(const LinkModel& model, double u) {
    return smooth_at(model, u);
}

double predict(const LinkModel& model, const std::vector<double>& x, const Curve& chi) {
    if (x.size() != model.fit.beta_hat.size())
        throw contract_violation("predict: covariate length mismatch");
    return simd::dot(x.data(), model.fit.beta_hat.data(), x.size()) +
           estimate_link(model, chi);
}

}  // namespace ssfplsim
