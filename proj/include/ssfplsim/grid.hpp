#pragma once

#include <memory>
#include <vector>

#include "ssfplsim/errors.hpp"

namespace ssfplsim {

// Shared abscissae for discretized functions. Uniform spacing only; the
// quadrature below relies on it.
class Grid {
public:
    static std::shared_ptr<const Grid> uniform(double a, double b, std::size_t n);
    static std::shared_ptr<const Grid> from_points(std::vector<double> points);

    const std::vector<double>& points() const { return points_; }
    double spacing() const { return spacing_; }
    std::size_t size() const { return points_.size(); }
    double front() const { return points_.front(); }
    double back() const { return points_.back(); }

    bool matches(const Grid& other) const {
        return this == &other || points_ == other.points_;
    }

private:
    explicit Grid(std::vector<double> points);
    std::vector<double> points_;
    double spacing_ = 0.0;
};

struct Curve {
    std::shared_ptr<const Grid> grid;
    std::vector<double> values;

    Curve() = default;
    Curve(std::shared_ptr<const Grid> g, std::vector<double> v);
    std::size_t size() const { return values.size(); }
};

// n discretized curves on one shared grid.
class FunctionalSample {
public:
    FunctionalSample() = default;
    FunctionalSample(std::shared_ptr<const Grid> grid, std::vector<std::vector<double>> values);

    std::size_t size() const { return values_.size(); }
    const std::shared_ptr<const Grid>& grid() const { return grid_; }
    const std::vector<double>& values(std::size_t i) const { return values_[i]; }
    Curve curve(std::size_t i) const { return Curve(grid_, values_[i]); }
    const std::vector<std::vector<double>>& all_values() const { return values_; }

private:
    std::shared_ptr<const Grid> grid_;
    std::vector<std::vector<double>> values_;
};

void require_same_grid(const Grid& a, const Grid& b, const char* where);

// Composite trapezoid approximation of the L2 inner product over the grid span.
double inner_product(const Curve& f, const Curve& g);
double inner_product(const Grid& grid, const std::vector<double>& f,
                     const std::vector<double>& g);

}  // namespace ssfplsim
