#include "ssfplsim/grid.hpp"

#include <cmath>

#include "ssfplsim/simd/ops.hpp"

namespace ssfplsim {

Grid::Grid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 4) throw contract_violation("grid needs at least 4 points");
    const double step = points_[1] - points_[0];
    if (!(step > 0.0)) throw contract_violation("grid points must be strictly increasing");
    const double tol = 1e-12 * std::max(1.0, std::abs(step));
    for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
        const double d = points_[i + 1] - points_[i];
        if (!(d > 0.0)) throw contract_violation("grid points must be strictly increasing");
        if (std::abs(d - step) > tol) throw contract_violation("grid must be uniform");
    }
    spacing_ = step;
}

std::shared_ptr<const Grid> Grid::uniform(double a, double b, std::size_t n) {
    if (!(b > a)) throw contract_violation("grid span must be positive");
    std::vector<double> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        pts[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    pts.back() = b;
    return std::shared_ptr<const Grid>(new Grid(std::move(pts)));
}

std::shared_ptr<const Grid> Grid::from_points(std::vector<double> points) {
    return std::shared_ptr<const Grid>(new Grid(std::move(points)));
}

Curve::Curve(std::shared_ptr<const Grid> g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
    if (!grid) throw contract_violation("curve without grid");
    if (values.size() != grid->size())
        throw contract_violation("curve length does not match its grid");
    for (double x : values) {
        if (!std::isfinite(x)) throw contract_violation("curve values must be finite");
    }
}

FunctionalSample::FunctionalSample(std::shared_ptr<const Grid> grid,
                                   std::vector<std::vector<double>> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_) throw contract_violation("sample without grid");
    if (values_.empty()) throw contract_violation("functional sample needs n >= 1");
    for (const auto& v : values_) {
        if (v.size() != grid_->size())
            throw contract_violation("sample curve length does not match the grid");
    }
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
    if (!a.matches(b)) {
        throw contract_violation(std::string("grid mismatch in ") + where);
    }
}

double inner_product(const Grid& grid, const std::vector<double>& f,
                     const std::vector<double>& g) {
    if (f.size() != grid.size() || g.size() != grid.size())
        throw contract_violation("inner_product length mismatch");
    const std::size_t n = f.size();
    const double full = simd::dot(f.data(), g.data(), n);
    const double ends = 0.5 * (f[0] * g[0] + f[n - 1] * g[n - 1]);
    return grid.spacing() * (full - ends);
}

double inner_product(const Curve& f, const Curve& g) {
    require_same_grid(*f.grid, *g.grid, "inner_product");
    return inner_product(*f.grid, f.values, g.values);
}

}  // namespace ssfplsim
