#include "ssfplsim/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "ssfplsim/errors.hpp"
#include "ssfplsim/simd/ops.hpp"

namespace ssfplsim {

LambdaSchedule LambdaSchedule::scaled(double base, const std::vector<double>& sigma_hat) {
    LambdaSchedule s;
    s.base_lambda = base;
    s.per_coefficient.resize(sigma_hat.size());
    for (std::size_t j = 0; j < sigma_hat.size(); ++j) {
        const double l = base * sigma_hat[j];
        if (l < 0.0 || !std::isfinite(l))
            throw contract_violation("lambda schedule must be nonnegative and finite");
        s.per_coefficient[j] = l;
    }
    return s;
}

ProfiledDesign build_profiled_design(const FunctionalSample& sample, const Matrix& x,
                                     const std::vector<double>& y, const Direction& theta,
                                     const Bandwidth& h) {
    const std::size_t n = sample.size();
    if (x.rows() != n || y.size() != n)
        throw contract_violation("build_profiled_design: inconsistent row counts");
    WeightMatrix w = weight_matrix(theta, h, sample);
    return ProfiledDesign{profile_transform(y, w), profile_transform(x, w), theta, h};
}

namespace {

// Shared state for the descent: Gram form of the normal equations.
struct DescentCore {
    Matrix gram;                // X~' X~
    std::vector<double> xty;    // X~' y~
    double yty = 0.0;
    std::size_t n = 0;
    std::size_t p = 0;

    DescentCore(const Matrix& xt, const std::vector<double>& yt)
        : gram(crossprod(xt)),
          xty(crossprod_vec(xt, yt)),
          yty(simd::dot(yt.data(), yt.data(), yt.size())),
          n(xt.rows()),
          p(xt.cols()) {}

    explicit DescentCore(const ProfiledDesign& d) : DescentCore(d.x_tilde, d.y_tilde) {}

    double rss(const std::vector<double>& beta, const std::vector<double>& grad) const {
        // g = xty - G b  =>  b'Gb = b'xty - b'g
        const double bxty = simd::dot(beta.data(), xty.data(), p);
        const double bg = simd::dot(beta.data(), grad.data(), p);
        double r = yty - bxty - bg;
        return r > 0.0 ? r : 0.0;
    }
};

struct PathState {
    std::vector<double> beta;
    std::vector<double> grad;  // xty - G beta
};

// One descent run at fixed per-coefficient levels; beta/grad updated in place.
// Returns iterations used; sets converged.
int descend(const DescentCore& core, const std::vector<double>& lam, double a, double tol,
            int max_iter, PathState& st, bool& converged,
            std::vector<double>* objective_trace = nullptr) {
    const std::size_t p = core.p;
    const double n = static_cast<double>(core.n);
    converged = false;
    int it = 0;
    for (; it < max_iter; ++it) {
        double delta = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            const double q = core.gram(j, j);
            if (!(q > 1e-300)) {
                // profiled-out column (e.g. a constant annihilated by I-W)
                if (st.beta[j] != 0.0) {
                    simd::axpy(st.beta[j], core.gram.row(j), st.grad.data(), p);
                    st.beta[j] = 0.0;
                }
                continue;
            }
            const double z = (st.grad[j] + q * st.beta[j]) / q;
            double bnew;
            if (lam[j] > 0.0) {
                bnew = scad_univariate_min(z, q / n, ScadParams(a, lam[j]));
            } else {
                bnew = z;
            }
            const double d = bnew - st.beta[j];
            if (d != 0.0) {
                simd::axpy(-d, core.gram.row(j), st.grad.data(), p);
                st.beta[j] = bnew;
                const double ad = std::abs(d);
                if (ad > delta) delta = ad;
            }
        }
        if (objective_trace) {
            double pen = 0.0;
            for (std::size_t j = 0; j < p; ++j) {
                if (lam[j] > 0.0)
                    pen += scad_value(std::abs(st.beta[j]), ScadParams(a, lam[j]));
            }
            const double obj = 0.5 * core.rss(st.beta, st.grad) + n * pen;
            if (!std::isfinite(obj))
                throw numerical_divergence("non-finite objective in coordinate descent");
            objective_trace->push_back(obj);
        }
        if (delta < tol) {
            converged = true;
            ++it;
            break;
        }
    }
    for (double b : st.beta) {
        if (!std::isfinite(b))
            throw numerical_divergence("non-finite coefficient in coordinate descent");
    }
    return it;
}

double rss_from_design(const ProfiledDesign& d, const std::vector<double>& beta) {
    const std::size_t n = d.x_tilde.rows();
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = d.y_tilde[i] - simd::dot(d.x_tilde.row(i), beta.data(), beta.size());
        rss += r * r;
    }
    return rss;
}

OlsFit ols_from_core(const DescentCore& core, double ridge) {
    Matrix g = core.gram;
    if (ridge > 0.0) {
        for (std::size_t j = 0; j < core.p; ++j) g(j, j) += ridge;
    }
    const Cholesky chol(g);
    OlsFit fit;
    fit.beta = chol.solve(core.xty);
    const double bxty = simd::dot(fit.beta.data(), core.xty.data(), core.p);
    double gb = 0.0;
    for (std::size_t j = 0; j < core.p; ++j)
        gb += fit.beta[j] * simd::dot(g.row(j), fit.beta.data(), core.p);
    fit.rss = std::max(core.yty - 2.0 * bxty + gb, 0.0);
    const std::size_t df = std::min(core.p, core.n - 1);
    const double s2 = fit.rss / static_cast<double>(core.n - df);
    const std::vector<double> invdiag = chol.inverse_diagonal();
    fit.sigma_hat.resize(core.p);
    for (std::size_t j = 0; j < core.p; ++j)
        fit.sigma_hat[j] = std::sqrt(std::max(s2 * invdiag[j], 0.0));
    return fit;
}

// ridge policy: none when the plain factorisation is well conditioned and
// p < n; otherwise the configured stabiliser.
OlsFit ols_with_policy(const DescentCore& core, const FitConfig& cfg) {
    if (core.p < core.n) {
        try {
            Matrix g = core.gram;
            Cholesky chol(g);
            if (chol.condition_estimate() <= cfg.ridge_condition_threshold) {
                return ols_from_core(core, 0.0);
            }
        } catch (const singular_design&) {
            // fall through to ridge
        }
    }
    return ols_from_core(core, cfg.ridge);
}

}  // namespace

OlsFit profiled_ols(const ProfiledDesign& d, double ridge) {
    const DescentCore core(d);
    if (ridge == 0.0 && core.p >= core.n)
        throw singular_design("p >= n requires a positive ridge");
    return ols_from_core(core, ridge);
}

DescentResult coordinate_descent_scad(const ProfiledDesign& d, const LambdaSchedule& schedule,
                                      double a, const std::vector<double>& init, double tol,
                                      int max_iter, std::vector<double>* objective_trace) {
    if (!(tol > 0.0)) throw contract_violation("descent tolerance must be positive");
    const DescentCore core(d);
    if (schedule.per_coefficient.size() != core.p)
        throw contract_violation("lambda schedule length mismatch");
    if (init.size() != core.p) throw contract_violation("descent init length mismatch");
    for (double b : init) {
        if (!std::isfinite(b)) throw contract_violation("descent init must be finite");
    }
    PathState st;
    st.beta = init;
    st.grad = core.xty;
    for (std::size_t j = 0; j < core.p; ++j) {
        if (st.beta[j] != 0.0) simd::axpy(-st.beta[j], core.gram.row(j), st.grad.data(), core.p);
    }
    DescentResult out;
    out.iterations = descend(core, schedule.per_coefficient, a, tol, max_iter, st,
                             out.converged, objective_trace);
    double pen = 0.0;
    for (std::size_t j = 0; j < core.p; ++j) {
        if (schedule.per_coefficient[j] > 0.0)
            pen += scad_value(std::abs(st.beta[j]), ScadParams(a, schedule.per_coefficient[j]));
    }
    out.objective = 0.5 * rss_from_design(d, st.beta) + static_cast<double>(core.n) * pen;
    if (!std::isfinite(out.objective))
        throw numerical_divergence("non-finite objective in coordinate descent");
    out.beta = std::move(st.beta);
    return out;
}

double bic_score(const ProfiledDesign& d, const std::vector<double>& beta) {
    if (beta.size() != d.x_tilde.cols()) throw contract_violation("bic_score length mismatch");
    const double n = static_cast<double>(d.x_tilde.rows());
    const double rss = std::max(rss_from_design(d, beta), 1e-12);
    std::size_t df = 0;
    for (double b : beta) {
        if (b != 0.0) ++df;
    }
    return n * std::log(rss / n) + static_cast<double>(df) * std::log(n);
}

std::vector<Direction> direction_candidates(const BSplineBasis& basis,
                                            const CandidateConfig& config) {
    (void)config;  // stage 2 is applied around a fitted candidate, see refine_candidates
    const std::size_t d = basis.dimension();
    if (d < 2) throw contract_violation("candidate enumeration needs dimension >= 2");
    const Matrix gram = gram_matrix(basis);
    std::vector<Direction> out;
    std::vector<double> coef(d);
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= 3;
    out.reserve((total - 1) / 2);
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        int first_nonzero = 0;
        bool all_zero = true;
        // lexicographic over (-1, 0, 1) tuples, most significant digit first
        for (std::size_t i = d; i-- > 0;) {
            const int digit = static_cast<int>(c % 3) - 1;
            c /= 3;
            coef[i] = static_cast<double>(digit);
        }
        for (std::size_t i = 0; i < d; ++i) {
            if (coef[i] != 0.0) {
                first_nonzero = coef[i] > 0.0 ? 1 : -1;
                all_zero = false;
                break;
            }
        }
        if (all_zero || first_nonzero < 0) continue;  // sign classes collapse
        out.push_back(calibrate_direction(coef, basis, gram));
    }
    return out;
}

std::vector<Direction> refine_candidates(const Direction& base, const BSplineBasis& basis,
                                         double step) {
    const Matrix gram = gram_matrix(basis);
    std::vector<Direction> out;
    out.reserve(2 * base.coefficients.size());
    for (std::size_t j = 0; j < base.coefficients.size(); ++j) {
        for (const double s : {step, -step}) {
            std::vector<double> c = base.coefficients;
            c[j] += s;
            bool zero = true;
            for (double v : c) {
                if (v != 0.0) {
                    zero = false;
                    break;
                }
            }
            if (zero) continue;
            out.push_back(calibrate_direction(c, basis, gram));
        }
    }
    return out;
}

namespace {

struct BestFit {
    bool valid = false;
    double bic = std::numeric_limits<double>::infinity();
    double lambda = 0.0;
    double h = 0.0;
    std::vector<double> theta_coef;  // final tie break: lexicographic
    std::size_t candidate_index = 0;
    std::vector<double> beta;
    double objective = 0.0;
    int iterations = 0;
    bool converged = true;
    std::vector<double> sigma_hat;
    OlsFit ols;
};

// (bic, lambda, h, coefficient lex order): deterministic and invariant under
// permutations of the candidate list.
bool better(const BestFit& a, const BestFit& b) {
    if (!b.valid) return a.valid;
    if (!a.valid) return false;
    if (a.bic != b.bic) return a.bic < b.bic;
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    if (a.h != b.h) return a.h < b.h;
    return std::lexicographical_compare(a.theta_coef.begin(), a.theta_coef.end(),
                                        b.theta_coef.begin(), b.theta_coef.end());
}

std::vector<double> lambda_path(double lambda_max, const FitConfig& cfg) {
    if (cfg.lambda_override) return *cfg.lambda_override;
    if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) lambda_max = 1.0;
    const int count = std::max(cfg.lambda_count, 1);
    std::vector<double> path(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        path[static_cast<std::size_t>(i)] = lambda_max * std::pow(cfg.lambda_floor_ratio, t);
    }
    return path;
}

// Evaluate one candidate direction over its h-grid and the lambda path.
void scan_candidate(const FunctionalSample& sample, const Matrix& x,
                    const std::vector<double>& y, const Direction& theta,
                    std::size_t cand_idx, const FitConfig& cfg, BestFit& best,
                    std::size_t& infeasible) {
    const std::vector<double> proj = project_sample(theta, sample);
    std::vector<Bandwidth> hs;
    if (cfg.h_override) {
        for (double h : *cfg.h_override) hs.push_back(Bandwidth(h));
    } else {
        try {
            hs = bandwidth_grid_from_projections(proj, cfg.h_count);
        } catch (const degenerate_projection&) {
            ++infeasible;
            return;
        }
    }
    const std::size_t n = sample.size();
    for (const Bandwidth& h : hs) {
        ProfiledDesign design;
        design.theta = theta;
        design.h = h;
        {
            const Matrix w = weight_matrix_from_projections(proj, h);
            design.y_tilde = profile_transform(y, w);
            design.x_tilde = profile_transform(x, w);
        }
        const DescentCore core(design);
        OlsFit ols;
        try {
            ols = ols_with_policy(core, cfg);
        } catch (const singular_design&) {
            ++infeasible;
            continue;
        }
        double lambda_max = 0.0;
        for (std::size_t j = 0; j < core.p; ++j) {
            if (ols.sigma_hat[j] > 0.0) {
                lambda_max = std::max(lambda_max,
                                      std::abs(core.xty[j]) /
                                          (static_cast<double>(n) * ols.sigma_hat[j]));
            }
        }
        const std::vector<double> path = lambda_path(lambda_max, cfg);

        PathState st;
        st.beta.assign(core.p, 0.0);
        st.grad = core.xty;
        if (cfg.path_init == FitConfig::PathInit::ols) {
            st.beta = ols.beta;
            st.grad = core.xty;
            for (std::size_t j = 0; j < core.p; ++j) {
                if (st.beta[j] != 0.0)
                    simd::axpy(-st.beta[j], core.gram.row(j), st.grad.data(), core.p);
            }
        }
        std::vector<double> lam(core.p);
        for (const double lambda : path) {
            for (std::size_t j = 0; j < core.p; ++j) lam[j] = lambda * ols.sigma_hat[j];
            bool conv = true;
            const int iters = descend(core, lam, cfg.scad_a, cfg.tol, cfg.max_iter, st, conv);
            const double rss = std::max(core.rss(st.beta, st.grad), 1e-12);
            std::size_t df = 0;
            for (double b : st.beta) {
                if (b != 0.0) ++df;
            }
            const double bic = static_cast<double>(n) * std::log(rss / n) +
                               static_cast<double>(df) * std::log(static_cast<double>(n));
            BestFit cur;
            cur.valid = true;
            cur.bic = bic;
            cur.lambda = lambda;
            cur.h = h.h;
            cur.theta_coef = theta.coefficients;
            cur.candidate_index = cand_idx;
            cur.iterations = iters;
            cur.converged = conv;
            if (better(cur, best)) {
                cur.beta = st.beta;
                double pen = 0.0;
                for (std::size_t j = 0; j < core.p; ++j) {
                    if (lam[j] > 0.0)
                        pen += scad_value(std::abs(st.beta[j]), ScadParams(cfg.scad_a, lam[j]));
                }
                cur.objective = 0.5 * rss + static_cast<double>(n) * pen;
                cur.sigma_hat = ols.sigma_hat;
                cur.ols = ols;
                best = std::move(cur);
            }
        }
    }
}

FitResult finish_fit(const FunctionalSample& sample, const Matrix& x,
                     const std::vector<double>& y, const BestFit& best,
                     std::size_t infeasible, const FitConfig& cfg,
                     const std::vector<Direction>& candidates) {
    FitResult out;
    out.beta_hat = best.beta;
    out.theta_hat = candidates[best.candidate_index];
    out.h_hat = Bandwidth(best.h);
    out.lambda_hat = best.lambda;
    out.bic = best.bic;
    out.objective_value = best.objective;
    out.iterations = best.iterations;
    out.converged = best.converged;
    out.candidate_index = best.candidate_index;
    out.infeasible_pairs = infeasible;
    for (std::size_t j = 0; j < best.beta.size(); ++j) {
        if (best.beta[j] != 0.0) out.selected.insert(j);
    }
    if (cfg.with_baselines) {
        Baselines bl;
        bl.beta_ols = best.ols.beta;
        if (!cfg.true_support.empty()) {
            // oracle: OLS on the winning profiled design restricted to the
            // true support
            const WeightMatrix w = weight_matrix(out.theta_hat, out.h_hat, sample);
            const std::vector<double> yt = profile_transform(y, w);
            Matrix xs(x.rows(), cfg.true_support.size());
            for (std::size_t i = 0; i < x.rows(); ++i) {
                for (std::size_t k = 0; k < cfg.true_support.size(); ++k) {
                    xs(i, k) = x(i, cfg.true_support[k]);
                }
            }
            ProfiledDesign oracle_design{yt, profile_transform(xs, w), out.theta_hat,
                                         out.h_hat};
            const OlsFit ofit = profiled_ols(oracle_design, 0.0);
            bl.beta_oracle.assign(x.cols(), 0.0);
            for (std::size_t k = 0; k < cfg.true_support.size(); ++k) {
                bl.beta_oracle[cfg.true_support[k]] = ofit.beta[k];
            }
        }
        out.baselines = std::move(bl);
    }
    return out;
}

}  // namespace

FitResult fit_ssfplsim(const FunctionalSample& sample, const Matrix& x,
                       const std::vector<double>& y, const BSplineBasis& basis,
                       const FitConfig& config, const std::vector<Direction>& candidates) {
    const std::size_t n = sample.size();
    if (n < 10) throw contract_violation("fit_ssfplsim: needs n >= 10");
    if (x.rows() != n || y.size() != n)
        throw contract_violation("fit_ssfplsim: inconsistent inputs");
    if (x.cols() < 1) throw contract_violation("fit_ssfplsim: needs p >= 1");
    if (candidates.empty()) throw contract_violation("fit_ssfplsim: empty candidate set");

    const int threads = std::max(config.threads, 1);
    BestFit best;
    std::size_t infeasible = 0;
    if (threads == 1 || candidates.size() < 2) {
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            scan_candidate(sample, x, y, candidates[c], c, config, best, infeasible);
        }
    } else {
        const std::size_t nw = std::min<std::size_t>(threads, candidates.size());
        std::vector<BestFit> bests(nw);
        std::vector<std::size_t> infeas(nw, 0);
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(nw);
        for (std::size_t w = 0; w < nw; ++w) {
            pool.emplace_back([&, w]() {
                for (;;) {
                    const std::size_t c = next.fetch_add(1);
                    if (c >= candidates.size()) break;
                    scan_candidate(sample, x, y, candidates[c], c, config, bests[w],
                                   infeas[w]);
                }
            });
        }
        for (auto& t : pool) t.join();
        for (std::size_t w = 0; w < nw; ++w) {
            infeasible += infeas[w];
            if (better(bests[w], best)) best = std::move(bests[w]);
        }
    }
    if (!best.valid) throw no_feasible_fit("every (theta, h) combination failed");

    FitResult result = finish_fit(sample, x, y, best, infeasible, config, candidates);

    if (config.candidates.stage2) {
        std::vector<Direction> refined =
            refine_candidates(result.theta_hat, basis, config.candidates.stage2_step);
        BestFit best2 = best;
        for (std::size_t c = 0; c < refined.size(); ++c) {
            // indices continue past the stage-1 list
            scan_candidate(sample, x, y, refined[c], candidates.size() + c, config, best2,
                           infeasible);
        }
        if (best2.candidate_index >= candidates.size()) {
            std::vector<Direction> all = candidates;
            all.insert(all.end(), refined.begin(), refined.end());
            return finish_fit(sample, x, y, best2, infeasible, config, all);
        }
    }
    return result;
}

FitResult fit_ssfplsim(const FunctionalSample& sample, const Matrix& x,
                       const std::vector<double>& y, const BSplineBasis& basis,
                       const FitConfig& config) {
    return fit_ssfplsim(sample, x, y, basis, config,
                        direction_candidates(basis, config.candidates));
}

SlmFit fit_sparse_linear_baseline(const Matrix& x, const std::vector<double>& y,
                                  const FitConfig& config) {
    const std::size_t n = x.rows(), p = x.cols();
    if (y.size() != n || n < 3) throw contract_violation("fit_sparse_linear_baseline inputs");
    std::vector<double> ybar(1, simd::sum(y.data(), n) / static_cast<double>(n));
    std::vector<double> xmean(p, 0.0);
    for (std::size_t i = 0; i < n; ++i) simd::axpy(1.0, x.row(i), xmean.data(), p);
    for (double& m : xmean) m /= static_cast<double>(n);
    Matrix xc = x;
    std::vector<double> yc(n);
    for (std::size_t i = 0; i < n; ++i) {
        yc[i] = y[i] - ybar[0];
        for (std::size_t j = 0; j < p; ++j) xc(i, j) -= xmean[j];
    }
    const DescentCore core(xc, yc);
    const OlsFit ols = ols_with_policy(core, config);
    double lambda_max = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        if (ols.sigma_hat[j] > 0.0) {
            lambda_max = std::max(lambda_max, std::abs(core.xty[j]) /
                                                  (static_cast<double>(n) * ols.sigma_hat[j]));
        }
    }
    const std::vector<double> path = lambda_path(lambda_max, config);
    PathState st;
    st.beta.assign(p, 0.0);
    st.grad = core.xty;
    std::vector<double> lam(p);
    SlmFit best;
    double best_bic = std::numeric_limits<double>::infinity();
    for (const double lambda : path) {
        for (std::size_t j = 0; j < p; ++j) lam[j] = lambda * ols.sigma_hat[j];
        bool conv = true;
        descend(core, lam, config.scad_a, config.tol, config.max_iter, st, conv);
        const double rss = std::max(core.rss(st.beta, st.grad), 1e-12);
        std::size_t df = 0;
        for (double b : st.beta) {
            if (b != 0.0) ++df;
        }
        const double bic = static_cast<double>(n) * std::log(rss / n) +
                           static_cast<double>(df) * std::log(static_cast<double>(n));
        if (bic < best_bic || (bic == best_bic && lambda < best.lambda)) {
            best_bic = bic;
            best.beta = st.beta;
            best.lambda = lambda;
            best.bic = bic;
        }
    }
    best.selected.clear();
    double dot_mean = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        if (best.beta[j] != 0.0) best.selected.insert(j);
        dot_mean += best.beta[j] * xmean[j];
    }
    best.intercept = ybar[0] - dot_mean;
    return best;
}

}  // namespace ssfplsim
