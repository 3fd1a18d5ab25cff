#include "ssfplsim/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "ssfplsim/errors.hpp"
#include "ssfplsim/simd/ops.hpp"

namespace ssfplsim {

void Scenario::validate() const {
    if (n < 10) throw contract_violation("scenario needs n >= 10");
    if (p < 5) throw contract_violation("scenario needs p >= 5 (true support {1,2,5})");
    if (!(rho >= 0.0 && rho < 1.0)) throw contract_violation("scenario needs 0 <= rho < 1");
    if (!(c > 0.0)) throw contract_violation("scenario needs c > 0");
    if (M < 1) throw contract_violation("scenario needs M >= 1");
    if (grid_size < 4) throw contract_violation("scenario needs grid_size >= 4");
}

Matrix gen_scalar_covariates(std::size_t n, std::size_t p, double rho, Rng& rng) {
    if (!(std::abs(rho) < 1.0)) throw contract_violation("|rho| must be < 1");
    Matrix x(n, p);
    const double carry = std::sqrt(1.0 - rho * rho);
    for (std::size_t i = 0; i < n; ++i) {
        double prev = rng.normal();
        x(i, 0) = prev;
        for (std::size_t j = 1; j < p; ++j) {
            prev = rho * prev + carry * rng.normal();
            x(i, j) = prev;
        }
    }
    return x;
}

FunctionalSample gen_curves(std::size_t n, const std::shared_ptr<const Grid>& grid, Rng& rng) {
    const auto& t = grid->points();
    const std::size_t m = t.size();
    std::vector<std::vector<double>> curves(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = rng.uniform(0.0, 10.0);
        const double b = rng.uniform(0.0, 10.0);
        const double c = rng.uniform(0.0, 10.0);
        std::vector<double> v(m);
        for (std::size_t g = 0; g < m; ++g) {
            v[g] = a * std::cos(2.0 * M_PI * t[g]) + b * std::sin(4.0 * M_PI * t[g]) +
                   2.0 * c * (t[g] - 0.25) * (t[g] - 0.5);
        }
        curves[i] = std::move(v);
    }
    return FunctionalSample(grid, std::move(curves));
}

Direction true_direction(const BSplineBasis& basis) {
    if (basis.order() != 3 || basis.interior_knots() != 3)
        throw contract_violation("true_direction expects the order-3 / 3-knot basis");
    return calibrate_direction({0.0, 1.0, 0.0, 1.0, -1.0, -1.0}, basis);
}

std::vector<double> true_beta(std::size_t p) {
    if (p < 5) throw contract_violation("true_beta needs p >= 5");
    std::vector<double> b(p, 0.0);
    b[0] = 3.0;
    b[1] = 1.5;
    b[4] = 2.0;
    return b;
}

std::vector<double> gen_response(const Matrix& x, const FunctionalSample& sample,
                                 const Direction& theta0, const std::vector<double>& beta0,
                                 double c, Rng& rng) {
    const std::size_t n = sample.size();
    if (x.rows() != n || beta0.size() != x.cols())
        throw contract_violation("gen_response: inconsistent inputs");
    const std::vector<double> proj = project_sample(theta0, sample);
    std::vector<double> reg(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = proj[i];
        reg[i] = simd::dot(x.row(i), beta0.data(), beta0.size()) + u * u * u;
    }
    // empirical (n-1) variance of the regression values of this replicate
    const double mean = simd::sum(reg.data(), n) / static_cast<double>(n);
    double s2 = 0.0;
    for (double r : reg) s2 += (r - mean) * (r - mean);
    s2 /= static_cast<double>(n - 1);
    if (!(s2 > 0.0)) throw contract_violation("degenerate regression variance");
    const double sd = std::sqrt(c * s2);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = reg[i] + sd * rng.normal();
    return y;
}

SelectionPct metric_selection(const std::vector<double>& beta_hat,
                              const std::vector<double>& beta0) {
    if (beta_hat.size() != beta0.size())
        throw contract_violation("metric_selection length mismatch");
    std::size_t zeros = 0, zeros_kept = 0, nonzeros = 0, nonzeros_dropped = 0;
    for (std::size_t j = 0; j < beta0.size(); ++j) {
        if (beta0[j] == 0.0) {
            ++zeros;
            if (beta_hat[j] == 0.0) ++zeros_kept;
        } else {
            ++nonzeros;
            if (beta_hat[j] == 0.0) ++nonzeros_dropped;
        }
    }
    SelectionPct out;
    if (zeros > 0) out.correct = 100.0 * static_cast<double>(zeros_kept) / zeros;
    if (nonzeros > 0) out.incorrect = 100.0 * static_cast<double>(nonzeros_dropped) / nonzeros;
    return out;
}

double metric_beta_se(const std::vector<double>& beta_hat, const std::vector<double>& beta0) {
    if (beta_hat.size() != beta0.size()) throw contract_violation("metric_beta_se length mismatch");
    return simd::sq_diff_sum(beta_hat.data(), beta0.data(), beta0.size());
}

double metric_theta_se(const Direction& theta_hat, const Direction& theta0) {
    require_same_grid(*theta_hat.curve.grid, *theta0.curve.grid, "metric_theta_se");
    const Grid& g = *theta0.curve.grid;
    const std::size_t m = g.size();
    std::vector<double> diff(m);
    for (std::size_t i = 0; i < m; ++i)
        diff[i] = theta_hat.curve.values[i] - theta0.curve.values[i];
    return inner_product(g, diff, diff);
}

double metric_link_msep(const LinkModel& model, const FunctionalSample& test,
                        const Direction& theta0, double (*m_true)(double),
                        std::size_t* excluded) {
    require_same_grid(*test.grid(), *model.training_sample.grid(), "metric_link_msep");
    const std::vector<double> proj_hat = project_sample(model.fit.theta_hat, test);
    const std::vector<double> proj0 = project_sample(theta0, test);
    const std::vector<double> train_proj = model.training_projections();
    const std::vector<double> resid = model.partial_residuals();
    const Bandwidth h(model.bandwidth());
    double acc = 0.0;
    std::size_t used = 0, skipped = 0;
    for (std::size_t j = 0; j < test.size(); ++j) {
        try {
            const std::vector<double> w =
                nw_weights_at_index(train_proj, h, proj_hat[j], "test curve");
            const double mhat = simd::dot(w.data(), resid.data(), resid.size());
            const double d = mhat - m_true(proj0[j]);
            acc += d * d;
            ++used;
        } catch (const empty_neighborhood&) {
            ++skipped;
        }
    }
    if (excluded) *excluded = skipped;
    if (used == 0) throw no_feasible_fit("all test curves fell in empty neighborhoods");
    return acc / static_cast<double>(used);
}

namespace {

double cube(double u) { return u * u * u; }

MeanSd mean_sd(const std::vector<double>& v) {
    MeanSd out;
    if (v.empty()) return out;
    out.mean = simd::sum(v.data(), v.size()) / static_cast<double>(v.size());
    if (v.size() > 1) {
        double acc = 0.0;
        for (double x : v) acc += (x - out.mean) * (x - out.mean);
        out.sd = std::sqrt(acc / static_cast<double>(v.size() - 1));
    }
    return out;
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

ReplicateData replicate_data(const Scenario& s, const BSplineBasis& basis,
                             const Direction& theta0, const std::vector<double>& beta0,
                             Rng& rng) {
    ReplicateData d;
    d.x = gen_scalar_covariates(s.n, s.p, s.rho, rng);
    d.curves = gen_curves(s.n, basis.grid(), rng);
    d.y = gen_response(d.x, d.curves, theta0, beta0, s.c, rng);
    return d;
}

ReplicateDetail run_replicate(const Scenario& s, const FitConfig& fit_config,
                              const BSplineBasis& basis, const Direction& theta0,
                              const std::vector<double>& beta0,
                              const std::vector<Direction>& candidates, std::size_t k) {
    ReplicateDetail rep;
    rep.index = k;
    Rng rng = Rng::child(s.seed, k);
    const ReplicateData data = replicate_data(s, basis, theta0, beta0, rng);
    const Matrix& x = data.x;
    const FunctionalSample& curves = data.curves;
    const std::vector<double>& y = data.y;

    FitConfig cfg = fit_config;
    cfg.with_baselines = true;
    cfg.true_support = {0, 1, 4};
    cfg.threads = 1;  // parallelism lives at the replicate level

    FitResult fit;
    try {
        fit = fit_ssfplsim(curves, x, y, basis, cfg, candidates);
    } catch (const no_feasible_fit&) {
        rep.ok = false;
        return rep;
    }

    rep.ok = true;
    rep.selected.assign(fit.selected.begin(), fit.selected.end());
    const SelectionPct sel = metric_selection(fit.beta_hat, beta0);
    rep.correct_pct = sel.correct;
    rep.incorrect_pct = sel.incorrect;
    rep.beta_se_pls = metric_beta_se(fit.beta_hat, beta0);
    rep.beta_se_ols = metric_beta_se(fit.baselines->beta_ols, beta0);
    rep.beta_se_oracle = metric_beta_se(fit.baselines->beta_oracle, beta0);
    rep.theta_se = metric_theta_se(fit.theta_hat, theta0);
    rep.h = fit.h_hat.h;
    rep.lambda = fit.lambda_hat;
    rep.candidate_index = fit.candidate_index;

    // fresh test curves from the same replicate stream
    const FunctionalSample test = gen_curves(s.test_size, basis.grid(), rng);
    LinkModel model{fit, curves, x, y};
    rep.msep = metric_link_msep(model, test, theta0, &cube, &rep.msep_excluded);
    return rep;
}

}  // namespace

ReplicateData make_replicate_data(const Scenario& s, std::size_t k) {
    s.validate();
    const auto grid = Grid::uniform(0.0, 1.0, s.grid_size);
    const BSplineBasis basis = build_bspline_basis(3, 3, grid);
    const Direction theta0 = true_direction(basis);
    const std::vector<double> beta0 = true_beta(s.p);
    Rng rng = Rng::child(s.seed, k);
    return replicate_data(s, basis, theta0, beta0, rng);
}

ScenarioReport run_scenario(const Scenario& s, const FitConfig& fit_config, int threads) {
    s.validate();
    const auto t0 = std::chrono::steady_clock::now();

    const auto grid = Grid::uniform(0.0, 1.0, s.grid_size);
    const BSplineBasis basis = build_bspline_basis(3, 3, grid);
    const Direction theta0 = true_direction(basis);
    const std::vector<double> beta0 = true_beta(s.p);
    const std::vector<Direction> candidates =
        direction_candidates(basis, fit_config.candidates);

    std::vector<ReplicateDetail> reps(s.M);
    const int nw = std::max(1, threads);
    if (nw == 1 || s.M < 2) {
        for (std::size_t k = 0; k < s.M; ++k) {
            reps[k] = run_replicate(s, fit_config, basis, theta0, beta0, candidates, k);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const std::size_t workers = std::min<std::size_t>(nw, s.M);
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                for (;;) {
                    const std::size_t k = next.fetch_add(1);
                    if (k >= s.M) break;
                    reps[k] = run_replicate(s, fit_config, basis, theta0, beta0, candidates, k);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    ScenarioReport report;
    report.scenario = s;
    std::vector<double> corr, incorr, se_pls, se_ols, se_or, th_se;
    for (const ReplicateDetail& r : reps) {
        if (!r.ok) {
            ++report.failures;
            continue;
        }
        if (r.correct_pct) corr.push_back(*r.correct_pct);
        if (r.incorrect_pct) incorr.push_back(*r.incorrect_pct);
        se_pls.push_back(r.beta_se_pls);
        se_ols.push_back(r.beta_se_ols);
        se_or.push_back(r.beta_se_oracle);
        th_se.push_back(r.theta_se);
        report.msep_values.push_back(r.msep);
        report.msep_excluded += r.msep_excluded;
    }
    if (!corr.empty()) report.correct_pct = mean_sd(corr).mean;
    if (!incorr.empty()) report.incorrect_pct = mean_sd(incorr).mean;
    report.beta_se_pls = mean_sd(se_pls);
    report.beta_se_ols = mean_sd(se_ols);
    report.beta_se_oracle = mean_sd(se_or);
    report.theta_se = mean_sd(th_se);
    report.msep_median = median(report.msep_values);
    report.replicates = std::move(reps);
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace ssfplsim
