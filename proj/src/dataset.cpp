#include "ssfplsim/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ssfplsim/bspline.hpp"
#include "ssfplsim/errors.hpp"
#include "ssfplsim/kvconfig.hpp"
#include "ssfplsim/simd/ops.hpp"

namespace ssfplsim {

DatasetSchema DatasetSchema::from_file(const std::string& path) {
    const KvFile kv = KvFile::parse_file(path);
    DatasetSchema s;
    s.response = kv.get(nullptr, "response");
    s.scalars = kv.get_list_or(nullptr, "scalars");
    s.curve_first = kv.get(nullptr, "curve_first");
    s.curve_last = kv.get(nullptr, "curve_last");
    s.wave_min = kv.get_double_or(nullptr, "wave_min", 0.0);
    s.wave_max = kv.get_double_or(nullptr, "wave_max", 1.0);
    if (!(s.wave_max > s.wave_min))
        throw parse_error("schema needs wave_max > wave_min", path);
    return s;
}

void DatasetSchema::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write schema file", path);
    out << "response = " << response << "\n";
    out << "scalars = ";
    for (std::size_t i = 0; i < scalars.size(); ++i) out << (i ? "," : "") << scalars[i];
    out << "\n";
    out << "curve_first = " << curve_first << "\n";
    out << "curve_last = " << curve_last << "\n";
    out << "wave_min = " << format_double(wave_min) << "\n";
    out << "wave_max = " << format_double(wave_max) << "\n";
}

namespace {

// minimal RFC-4180 row splitter: quoted fields allowed, embedded separators
// honoured, doubled quotes unescaped
std::vector<std::string> split_row(const std::string& line, const std::string& path,
                                   std::size_t lineno) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    if (quoted) throw parse_error("unterminated quote", path, lineno);
    out.push_back(cur);
    return out;
}

double parse_cell(const std::string& cell, const std::string& path, std::size_t row,
                  std::size_t col) {
    const char* b = cell.data();
    const char* e = b + cell.size();
    while (b < e && (*b == ' ' || *b == '\t')) ++b;
    while (e > b && (e[-1] == ' ' || e[-1] == '\t')) --e;
    if (b == e) throw parse_error("empty numeric cell", path, row, col);
    double x = 0.0;
    const auto res = std::from_chars(b, e, x);
    if (res.ec != std::errc() || res.ptr != e)
        throw parse_error("non-numeric cell '" + cell + "'", path, row, col);
    return x;
}

}  // namespace

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open file", path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() && in.eof()) break;
        rows.push_back(split_row(line, path, lineno));
    }
    if (rows.empty()) throw parse_error("empty file", path);
    return rows;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write file", path);
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_double(row[i]);
        out << "\n";
    }
}

Dataset read_dataset(const std::string& path, const DatasetSchema& schema) {
    const auto rows = read_csv(path);
    const std::vector<std::string>& header = rows[0];
    auto find_col = [&](const std::string& name) -> std::size_t {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw parse_error("missing column '" + name + "'", path, 1);
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t y_col = find_col(schema.response);
    std::vector<std::size_t> x_cols;
    for (const auto& s : schema.scalars) x_cols.push_back(find_col(s));
    const std::size_t c_first = find_col(schema.curve_first);
    const std::size_t c_last = find_col(schema.curve_last);
    if (c_last < c_first)
        throw parse_error("curve block is reversed in the header", path, 1);
    const std::size_t m = c_last - c_first + 1;
    if (m < 4) throw parse_error("curve block needs at least 4 columns", path, 1);

    const std::size_t n = rows.size() - 1;
    if (n < 2) throw parse_error("dataset needs at least 2 rows", path);
    std::vector<double> y(n);
    Matrix x(n, x_cols.size());
    std::vector<std::vector<double>> curves(n, std::vector<double>(m));
    for (std::size_t r = 0; r < n; ++r) {
        const auto& row = rows[r + 1];
        if (row.size() != header.size())
            throw parse_error("ragged row: expected " + std::to_string(header.size()) +
                                  " cells, got " + std::to_string(row.size()),
                              path, r + 2);
        y[r] = parse_cell(row[y_col], path, r + 2, y_col + 1);
        for (std::size_t j = 0; j < x_cols.size(); ++j)
            x(r, j) = parse_cell(row[x_cols[j]], path, r + 2, x_cols[j] + 1);
        for (std::size_t g = 0; g < m; ++g)
            curves[r][g] = parse_cell(row[c_first + g], path, r + 2, c_first + g + 1);
    }

    Dataset ds{std::move(y), std::move(x), schema.scalars,
               FunctionalSample(Grid::uniform(0.0, 1.0, m), std::move(curves)),
               DatasetMeta{}};
    ds.meta.source_path = path;
    ds.meta.response_name = schema.response;
    ds.meta.scalar_names = schema.scalars;
    ds.meta.wave_min = schema.wave_min;
    ds.meta.wave_max = schema.wave_max;
    ds.meta.curve_points = m;
    return ds;
}

void write_dataset(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write file", path);
    out << ds.meta.response_name;
    for (const auto& nm : ds.x_names) out << "," << nm;
    const std::size_t m = ds.curves.grid()->size();
    for (std::size_t g = 0; g < m; ++g) out << ",t" << (g + 1);
    out << "\n";
    for (std::size_t i = 0; i < ds.size(); ++i) {
        out << format_double(ds.y[i]);
        for (std::size_t j = 0; j < ds.x.cols(); ++j)
            out << "," << format_double(ds.x(i, j));
        for (std::size_t g = 0; g < m; ++g)
            out << "," << format_double(ds.curves.values(i)[g]);
        out << "\n";
    }
}

FunctionalSample second_derivative(const FunctionalSample& sample, int basis_size) {
    const std::size_t m = sample.grid()->size();
    if (basis_size < 6 || static_cast<std::size_t>(basis_size) >= m)
        throw contract_violation("second_derivative needs 6 <= basis_size < grid size");
    const BSplineBasis basis = build_bspline_basis(4, basis_size - 4, sample.grid());
    const std::size_t d = basis.dimension();
    // normal equations of the evaluation matrix, shared across curves
    Matrix e_t(m, d);  // grid x dim
    for (std::size_t g = 0; g < m; ++g)
        for (std::size_t j = 0; j < d; ++j) e_t(g, j) = basis.evaluation()(j, g);
    const Matrix gram = crossprod(e_t);
    Cholesky chol = [&]() {
        try {
            return Cholesky(gram);
        } catch (const singular_design&) {
            throw singular_design("ill-conditioned spline projection in second_derivative");
        }
    }();
    const Matrix d2 = basis.derivative_matrix(2);
    std::vector<std::vector<double>> out(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const std::vector<double> rhs = crossprod_vec(e_t, sample.values(i));
        const std::vector<double> coef = chol.solve(rhs);
        std::vector<double> v(m, 0.0);
        for (std::size_t j = 0; j < d; ++j) {
            if (coef[j] != 0.0) simd::axpy(coef[j], d2.row(j), v.data(), m);
        }
        out[i] = std::move(v);
    }
    return FunctionalSample(sample.grid(), std::move(out));
}

ExpandedCovariates expand_covariates(const std::vector<double>& x1,
                                     const std::vector<double>& x2, int degree,
                                     bool interaction) {
    if (degree < 1) throw contract_violation("expand_covariates needs degree >= 1");
    if (x1.size() != x2.size()) throw contract_violation("expand_covariates length mismatch");
    const std::size_t n = x1.size();
    const std::size_t p = 2 * static_cast<std::size_t>(degree) + (interaction ? 1 : 0);
    ExpandedCovariates out;
    out.x = Matrix(n, p);
    out.names.reserve(p);
    for (int q = 1; q <= degree; ++q) {
        out.names.push_back(q == 1 ? "X1" : "X1^" + std::to_string(q));
        out.names.push_back(q == 1 ? "X2" : "X2^" + std::to_string(q));
    }
    if (interaction) out.names.push_back("X1*X2");
    for (std::size_t i = 0; i < n; ++i) {
        double p1 = 1.0, p2 = 1.0;
        for (int q = 1; q <= degree; ++q) {
            p1 *= x1[i];
            p2 *= x2[i];
            out.x(i, static_cast<std::size_t>(2 * (q - 1))) = p1;
            out.x(i, static_cast<std::size_t>(2 * (q - 1) + 1)) = p2;
        }
        if (interaction) out.x(i, p - 1) = x1[i] * x2[i];
    }
    return out;
}

std::pair<Dataset, Dataset> split(const Dataset& ds, std::size_t n_train) {
    const std::size_t n = ds.size();
    if (!(n_train > 0 && n_train < n))
        throw contract_violation("split needs 0 < n_train < n");
    auto take = [&](std::size_t begin, std::size_t count) {
        Dataset part;
        part.y.assign(ds.y.begin() + begin, ds.y.begin() + begin + count);
        part.x = Matrix(count, ds.x.cols());
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = 0; j < ds.x.cols(); ++j)
                part.x(i, j) = ds.x(begin + i, j);
        part.x_names = ds.x_names;
        std::vector<std::vector<double>> cv(count);
        for (std::size_t i = 0; i < count; ++i) cv[i] = ds.curves.values(begin + i);
        part.curves = FunctionalSample(ds.curves.grid(), std::move(cv));
        part.meta = ds.meta;
        return part;
    };
    return {take(0, n_train), take(n_train, n - n_train)};
}

double msep(const std::vector<double>& y_true, const std::vector<double>& y_pred) {
    if (y_true.empty()) throw contract_violation("msep needs nonempty vectors");
    if (y_true.size() != y_pred.size()) throw contract_violation("msep length mismatch");
    return simd::sq_diff_sum(y_true.data(), y_pred.data(), y_true.size()) /
           static_cast<double>(y_true.size());
}

}  // namespace ssfplsim
