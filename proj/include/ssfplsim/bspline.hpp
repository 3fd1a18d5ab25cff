#pragma once

#include <memory>
#include <vector>

#include "ssfplsim/grid.hpp"
#include "ssfplsim/linalg.hpp"

namespace ssfplsim {

// B-spline basis of a given order (order = degree + 1) with equally spaced
// interior knots in the grid span; boundary knots repeated `order` times.
// `evaluation` holds the basis values on the grid (dimension x grid size).
class BSplineBasis {
public:
    BSplineBasis(int order, int interior_knots, std::shared_ptr<const Grid> grid);

    int order() const { return order_; }
    int interior_knots() const { return interior_; }
    std::size_t dimension() const { return knots_.size() - static_cast<std::size_t>(order_); }
    const std::vector<double>& knot_vector() const { return knots_; }
    const Matrix& evaluation() const { return eval_; }
    const std::shared_ptr<const Grid>& grid() const { return grid_; }

    // Values of all basis functions (or of their deriv-th derivative) at t.
    std::vector<double> eval_at(double t, int deriv = 0) const;
    // dimension x grid matrix of deriv-th derivatives on the grid.
    Matrix derivative_matrix(int deriv) const;

    // curve(t) = sum_j coeffs[j] e_j(t) sampled on the grid.
    Curve combine(const std::vector<double>& coeffs) const;

private:
    int order_ = 0;
    int interior_ = 0;
    std::shared_ptr<const Grid> grid_;
    std::vector<double> knots_;
    Matrix eval_;
};

BSplineBasis build_bspline_basis(int order, int interior_knots,
                                 std::shared_ptr<const Grid> grid);

// G[j,k] = <e_j, e_k> under the trapezoid inner product on the basis grid.
Matrix gram_matrix(const BSplineBasis& basis);

// Candidate or estimated functional direction: spline coefficients plus the
// grid evaluation. `calibrated` marks unit norm + positive leading coefficient.
struct Direction {
    std::vector<double> coefficients;
    Curve curve;
    bool calibrated = false;
};

// Rescale to <theta,theta> = 1 and flip so the first nonzero coefficient is
// positive. Throws degenerate_direction on the zero vector.
Direction calibrate_direction(const std::vector<double>& coefficients,
                              const BSplineBasis& basis);
Direction calibrate_direction(const std::vector<double>& coefficients,
                              const BSplineBasis& basis, const Matrix& gram);

}  // namespace ssfplsim
