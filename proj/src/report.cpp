#include "ssfplsim/report.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ssfplsim/errors.hpp"

namespace ssfplsim {

using nlohmann::json;

namespace {

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        rows.push_back(std::vector<double>(m.row(i), m.row(i) + m.cols()));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", rows}};
}

Matrix matrix_from_json(const json& j) {
    Matrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    const json& rows = j.at("data");
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto row = rows.at(i).get<std::vector<double>>();
        for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = row[k];
    }
    return m;
}

json sample_to_json(const FunctionalSample& s) {
    json curves = json::array();
    for (std::size_t i = 0; i < s.size(); ++i) curves.push_back(s.values(i));
    return json{{"grid", s.grid()->points()}, {"curves", curves}};
}

FunctionalSample sample_from_json(const json& j) {
    auto grid = Grid::from_points(j.at("grid").get<std::vector<double>>());
    std::vector<std::vector<double>> curves;
    for (const auto& c : j.at("curves")) curves.push_back(c.get<std::vector<double>>());
    return FunctionalSample(grid, std::move(curves));
}

json meta_to_json(const DatasetMeta& m) {
    return json{{"source_path", m.source_path},
                {"response_name", m.response_name},
                {"scalar_names", m.scalar_names},
                {"wave_min", m.wave_min},
                {"wave_max", m.wave_max},
                {"curve_points", m.curve_points}};
}

DatasetMeta meta_from_json(const json& j) {
    DatasetMeta m;
    m.source_path = j.at("source_path").get<std::string>();
    m.response_name = j.at("response_name").get<std::string>();
    m.scalar_names = j.at("scalar_names").get<std::vector<std::string>>();
    m.wave_min = j.at("wave_min").get<double>();
    m.wave_max = j.at("wave_max").get<double>();
    m.curve_points = j.at("curve_points").get<std::size_t>();
    return m;
}

}  // namespace

std::string run_report_to_json(const RunReport& r) {
    json j;
    j["x_names"] = r.x_names;
    j["beta"] = r.beta;
    j["selected"] = r.selected;
    j["h"] = r.h;
    j["lambda"] = r.lambda;
    j["bic"] = r.bic;
    j["spline_order"] = r.spline_order;
    j["interior_knots"] = r.interior_knots;
    j["theta_coefficients"] = r.theta_coefficients;
    j["theta_curve"] = r.theta_curve;
    j["grid_points"] = r.grid_points;
    j["link_u"] = r.link_u;
    j["link_m"] = r.link_m;
    j["predictions"] = r.predictions;
    j["residuals"] = r.residuals;
    if (r.has_msep) j["msep"] = r.msep_value;
    j["preprocess"] = {{"second_derivative", r.use_second_derivative},
                       {"deriv_basis_size", r.deriv_basis_size},
                       {"expand_degree", r.expand_degree},
                       {"expand_interaction", r.expand_interaction}};
    j["meta"] = meta_to_json(r.meta);

    json model;
    model["beta"] = r.model.fit.beta_hat;
    model["theta_coefficients"] = r.model.fit.theta_hat.coefficients;
    model["theta_curve"] = r.model.fit.theta_hat.curve.values;
    model["h"] = r.model.fit.h_hat.h;
    model["lambda"] = r.model.fit.lambda_hat;
    model["training_sample"] = sample_to_json(r.model.training_sample);
    model["training_x"] = matrix_to_json(r.model.training_x);
    model["training_y"] = r.model.training_y;
    model["widen_h"] = r.model.widen_h;
    j["model"] = model;
    return j.dump(1);
}

RunReport run_report_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("bad report JSON: ") + e.what());
    }
    RunReport r;
    r.x_names = j.at("x_names").get<std::vector<std::string>>();
    r.beta = j.at("beta").get<std::vector<double>>();
    r.selected = j.at("selected").get<std::vector<std::size_t>>();
    r.h = j.at("h").get<double>();
    r.lambda = j.at("lambda").get<double>();
    r.bic = j.at("bic").get<double>();
    r.spline_order = j.at("spline_order").get<int>();
    r.interior_knots = j.at("interior_knots").get<int>();
    r.theta_coefficients = j.at("theta_coefficients").get<std::vector<double>>();
    r.theta_curve = j.at("theta_curve").get<std::vector<double>>();
    r.grid_points = j.at("grid_points").get<std::vector<double>>();
    r.link_u = j.at("link_u").get<std::vector<double>>();
    r.link_m = j.at("link_m").get<std::vector<double>>();
    r.predictions = j.at("predictions").get<std::vector<double>>();
    r.residuals = j.at("residuals").get<std::vector<double>>();
    r.has_msep = j.contains("msep");
    if (r.has_msep) r.msep_value = j.at("msep").get<double>();
    const json& pp = j.at("preprocess");
    r.use_second_derivative = pp.at("second_derivative").get<bool>();
    r.deriv_basis_size = pp.at("deriv_basis_size").get<int>();
    r.expand_degree = pp.at("expand_degree").get<int>();
    r.expand_interaction = pp.at("expand_interaction").get<bool>();
    r.meta = meta_from_json(j.at("meta"));

    const json& m = j.at("model");
    FitResult fit;
    fit.beta_hat = m.at("beta").get<std::vector<double>>();
    for (std::size_t k = 0; k < fit.beta_hat.size(); ++k) {
        if (fit.beta_hat[k] != 0.0) fit.selected.insert(k);
    }
    FunctionalSample training = sample_from_json(m.at("training_sample"));
    Direction theta;
    theta.coefficients = m.at("theta_coefficients").get<std::vector<double>>();
    theta.curve = Curve(training.grid(), m.at("theta_curve").get<std::vector<double>>());
    theta.calibrated = true;
    fit.theta_hat = theta;
    fit.h_hat = Bandwidth(m.at("h").get<double>());
    fit.lambda_hat = m.at("lambda").get<double>();
    r.model.fit = std::move(fit);
    r.model.training_sample = std::move(training);
    r.model.training_x = matrix_from_json(m.at("training_x"));
    r.model.training_y = m.at("training_y").get<std::vector<double>>();
    r.model.widen_h = m.at("widen_h").get<bool>();
    return r;
}

void save_run_report(const RunReport& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write report", path);
    out << run_report_to_json(r) << "\n";
}

RunReport load_run_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open report", path);
    std::stringstream ss;
    ss << in.rdbuf();
    return run_report_from_json(ss.str());
}

std::vector<std::string> scenario_csv_header() {
    return {"n",
            "p",
            "rho",
            "c",
            "M",
            "seed",
            "correct_pct",
            "incorrect_pct",
            "beta_se_oracle_mean",
            "beta_se_oracle_sd",
            "beta_se_pls_mean",
            "beta_se_pls_sd",
            "beta_se_ols_mean",
            "beta_se_ols_sd",
            "theta_se_mean",
            "theta_se_sd",
            "msep_mean",
            "msep_median",
            "failures",
            "msep_excluded"};
}

std::vector<double> scenario_csv_row(const ScenarioReport& r) {
    double msep_mean = 0.0;
    if (!r.msep_values.empty()) {
        for (double v : r.msep_values) msep_mean += v;
        msep_mean /= static_cast<double>(r.msep_values.size());
    }
    return {static_cast<double>(r.scenario.n),
            static_cast<double>(r.scenario.p),
            r.scenario.rho,
            r.scenario.c,
            static_cast<double>(r.scenario.M),
            static_cast<double>(r.scenario.seed),
            r.correct_pct.value_or(-1.0),
            r.incorrect_pct.value_or(-1.0),
            r.beta_se_oracle.mean,
            r.beta_se_oracle.sd,
            r.beta_se_pls.mean,
            r.beta_se_pls.sd,
            r.beta_se_ols.mean,
            r.beta_se_ols.sd,
            r.theta_se.mean,
            r.theta_se.sd,
            msep_mean,
            r.msep_median,
            static_cast<double>(r.failures),
            static_cast<double>(r.msep_excluded)};
}

std::string scenario_report_to_json(const ScenarioReport& r) {
    json j;
    j["scenario"] = {{"name", r.scenario.name},   {"n", r.scenario.n},
                     {"p", r.scenario.p},         {"rho", r.scenario.rho},
                     {"c", r.scenario.c},         {"M", r.scenario.M},
                     {"seed", r.scenario.seed},   {"grid_size", r.scenario.grid_size},
                     {"test_size", r.scenario.test_size}};
    if (r.correct_pct) j["correct_pct"] = *r.correct_pct;
    if (r.incorrect_pct) j["incorrect_pct"] = *r.incorrect_pct;
    j["beta_se_oracle"] = {{"mean", r.beta_se_oracle.mean}, {"sd", r.beta_se_oracle.sd}};
    j["beta_se_pls"] = {{"mean", r.beta_se_pls.mean}, {"sd", r.beta_se_pls.sd}};
    j["beta_se_ols"] = {{"mean", r.beta_se_ols.mean}, {"sd", r.beta_se_ols.sd}};
    j["theta_se"] = {{"mean", r.theta_se.mean}, {"sd", r.theta_se.sd}};
    j["msep_values"] = r.msep_values;
    j["msep_median"] = r.msep_median;
    j["failures"] = r.failures;
    j["msep_excluded"] = r.msep_excluded;
    json reps = json::array();
    for (const ReplicateDetail& d : r.replicates) {
        json rep;
        rep["index"] = d.index;
        rep["ok"] = d.ok;
        rep["selected"] = d.selected;
        if (d.correct_pct) rep["correct_pct"] = *d.correct_pct;
        if (d.incorrect_pct) rep["incorrect_pct"] = *d.incorrect_pct;
        rep["beta_se_pls"] = d.beta_se_pls;
        rep["beta_se_ols"] = d.beta_se_ols;
        rep["beta_se_oracle"] = d.beta_se_oracle;
        rep["theta_se"] = d.theta_se;
        rep["msep"] = d.msep;
        rep["msep_excluded"] = d.msep_excluded;
        rep["h"] = d.h;
        rep["lambda"] = d.lambda;
        rep["candidate_index"] = d.candidate_index;
        reps.push_back(std::move(rep));
    }
    j["replicates"] = std::move(reps);
    return j.dump(1);
}

ScenarioReport scenario_report_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("bad scenario JSON: ") + e.what());
    }
    ScenarioReport r;
    const json& s = j.at("scenario");
    r.scenario.name = s.at("name").get<std::string>();
    r.scenario.n = s.at("n").get<std::size_t>();
    r.scenario.p = s.at("p").get<std::size_t>();
    r.scenario.rho = s.at("rho").get<double>();
    r.scenario.c = s.at("c").get<double>();
    r.scenario.M = s.at("M").get<std::size_t>();
    r.scenario.seed = s.at("seed").get<std::uint64_t>();
    r.scenario.grid_size = s.at("grid_size").get<std::size_t>();
    r.scenario.test_size = s.at("test_size").get<std::size_t>();
    if (j.contains("correct_pct")) r.correct_pct = j.at("correct_pct").get<double>();
    if (j.contains("incorrect_pct")) r.incorrect_pct = j.at("incorrect_pct").get<double>();
    auto ms = [&](const char* key) {
        return MeanSd{j.at(key).at("mean").get<double>(), j.at(key).at("sd").get<double>()};
    };
    r.beta_se_oracle = ms("beta_se_oracle");
    r.beta_se_pls = ms("beta_se_pls");
    r.beta_se_ols = ms("beta_se_ols");
    r.theta_se = ms("theta_se");
    r.msep_values = j.at("msep_values").get<std::vector<double>>();
    r.msep_median = j.at("msep_median").get<double>();
    r.failures = j.at("failures").get<std::size_t>();
    r.msep_excluded = j.at("msep_excluded").get<std::size_t>();
    for (const auto& rep : j.at("replicates")) {
        ReplicateDetail d;
        d.index = rep.at("index").get<std::size_t>();
        d.ok = rep.at("ok").get<bool>();
        d.selected = rep.at("selected").get<std::vector<std::size_t>>();
        if (rep.contains("correct_pct")) d.correct_pct = rep.at("correct_pct").get<double>();
        if (rep.contains("incorrect_pct"))
            d.incorrect_pct = rep.at("incorrect_pct").get<double>();
        d.beta_se_pls = rep.at("beta_se_pls").get<double>();
        d.beta_se_ols = rep.at("beta_se_ols").get<double>();
        d.beta_se_oracle = rep.at("beta_se_oracle").get<double>();
        d.theta_se = rep.at("theta_se").get<double>();
        d.msep = rep.at("msep").get<double>();
        d.msep_excluded = rep.at("msep_excluded").get<std::size_t>();
        d.h = rep.at("h").get<double>();
        d.lambda = rep.at("lambda").get<double>();
        d.candidate_index = rep.at("candidate_index").get<std::size_t>();
        r.replicates.push_back(std::move(d));
    }
    return r;
}

}  // namespace ssfplsim
