#include "ssfplsim/bspline.hpp"

#include <cmath>

#include "ssfplsim/errors.hpp"
#include "ssfplsim/simd/ops.hpp"

namespace ssfplsim {

namespace {

// All order-`ord` basis values at t by the Cox–de Boor recursion over the full
// knot vector. t at the right boundary is treated as belonging to the last
// nonempty interval.
std::vector<double> cox_de_boor(const std::vector<double>& knots, int ord, double t) {
    const std::size_t nk = knots.size();
    std::vector<double> b(nk - 1, 0.0);
    if (t >= knots[nk - 1]) {
        for (std::size_t i = nk - 1; i-- > 0;) {
            if (knots[i] < knots[i + 1]) {
                b[i] = 1.0;
                break;
            }
        }
    } else {
        for (std::size_t i = 0; i + 1 < nk; ++i) {
            if (knots[i] <= t && t < knots[i + 1]) {
                b[i] = 1.0;
                break;
            }
        }
    }
    for (int k = 2; k <= ord; ++k) {
        const std::size_t cnt = nk - static_cast<std::size_t>(k);
        for (std::size_t i = 0; i < cnt; ++i) {
            double left = 0.0, right = 0.0;
            const double dl = knots[i + k - 1] - knots[i];
            if (dl > 0.0) left = (t - knots[i]) / dl * b[i];
            const double dr = knots[i + k] - knots[i + 1];
            if (dr > 0.0) right = (knots[i + k] - t) / dr * b[i + 1];
            b[i] = left + right;
        }
        b.resize(cnt);
    }
    return b;
}

}  // namespace

BSplineBasis::BSplineBasis(int order, int interior_knots, std::shared_ptr<const Grid> grid)
    : order_(order), interior_(interior_knots), grid_(std::move(grid)) {
    if (order_ < 2) throw contract_violation("spline order must be >= 2");
    if (interior_ < 0) throw contract_violation("interior knot count must be >= 0");
    if (!grid_) throw contract_violation("basis needs a grid");
    const double a = grid_->front(), b = grid_->back();
    knots_.reserve(static_cast<std::size_t>(2 * order_ + interior_));
    for (int i = 0; i < order_; ++i) knots_.push_back(a);
    for (int i = 1; i <= interior_; ++i) {
        knots_.push_back(a + (b - a) * static_cast<double>(i) /
                               static_cast<double>(interior_ + 1));
    }
    for (int i = 0; i < order_; ++i) knots_.push_back(b);

    const std::size_t d = dimension();
    const std::size_t m = grid_->size();
    eval_ = Matrix(d, m, 0.0);
    for (std::size_t g = 0; g < m; ++g) {
        const std::vector<double> vals = cox_de_boor(knots_, order_, grid_->points()[g]);
        for (std::size_t j = 0; j < d; ++j) eval_(j, g) = vals[j];
    }
}

BSplineBasis build_bspline_basis(int order, int interior_knots,
                                 std::shared_ptr<const Grid> grid) {
    return BSplineBasis(order, interior_knots, std::move(grid));
}

std::vector<double> BSplineBasis::eval_at(double t, int deriv) const {
    const std::size_t d = dimension();
    if (deriv < 0) throw contract_violation("derivative order must be >= 0");
    if (deriv >= order_) return std::vector<double>(d, 0.0);
    if (deriv == 0) return cox_de_boor(knots_, order_, t);

    // derivative recursion: B'_{i,k} = (k-1) [ B_{i,k-1}/(t_{i+k-1}-t_i)
    //                                        - B_{i+1,k-1}/(t_{i+k}-t_{i+1}) ]
    // start from order - deriv and lift back up, differentiating at each step.
    const int base_ord = order_ - deriv;
    std::vector<double> cur = cox_de_boor(knots_, base_ord, t);
    for (int k = base_ord + 1; k <= order_; ++k) {
        const std::size_t cnt = knots_.size() - static_cast<std::size_t>(k);
        std::vector<double> next(cnt, 0.0);
        for (std::size_t i = 0; i < cnt; ++i) {
            double left = 0.0, right = 0.0;
            const double dl = knots_[i + k - 1] - knots_[i];
            if (dl > 0.0) left = cur[i] / dl;
            const double dr = knots_[i + k] - knots_[i + 1];
            if (dr > 0.0) right = cur[i + 1] / dr;
            next[i] = static_cast<double>(k - 1) * (left - right);
        }
        cur = std::move(next);
    }
    cur.resize(d);
    return cur;
}

Matrix BSplineBasis::derivative_matrix(int deriv) const {
    const std::size_t d = dimension();
    const std::size_t m = grid_->size();
    Matrix out(d, m, 0.0);
    for (std::size_t g = 0; g < m; ++g) {
        const std::vector<double> vals = eval_at(grid_->points()[g], deriv);
        for (std::size_t j = 0; j < d; ++j) out(j, g) = vals[j];
    }
    return out;
}

Curve BSplineBasis::combine(const std::vector<double>& coeffs) const {
    if (coeffs.size() != dimension())
        throw contract_violation("coefficient length does not match basis dimension");
    const std::size_t m = grid_->size();
    std::vector<double> vals(m, 0.0);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j] != 0.0) simd::axpy(coeffs[j], eval_.row(j), vals.data(), m);
    }
    return Curve(grid_, std::move(vals));
}

Matrix gram_matrix(const BSplineBasis& basis) {
    const std::size_t d = basis.dimension();
    const Grid& grid = *basis.grid();
    Matrix g(d, d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<double> ej(basis.evaluation().row(j), basis.evaluation().row(j) + grid.size());
        for (std::size_t k = j; k < d; ++k) {
            std::vector<double> ek(basis.evaluation().row(k),
                                   basis.evaluation().row(k) + grid.size());
            const double v = inner_product(grid, ej, ek);
            g(j, k) = v;
            g(k, j) = v;
        }
    }
    return g;
}

Direction calibrate_direction(const std::vector<double>& coefficients,
                              const BSplineBasis& basis, const Matrix& gram) {
    if (coefficients.size() != basis.dimension())
        throw contract_violation("coefficient length does not match basis dimension");
    double q = 0.0;
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
        q += coefficients[j] * simd::dot(gram.row(j), coefficients.data(), coefficients.size());
    }
    if (!(q > 0.0)) throw degenerate_direction();
    double scale = 1.0 / std::sqrt(q);
    for (double c : coefficients) {
        if (c != 0.0) {
            if (c < 0.0) scale = -scale;
            break;
        }
    }
    std::vector<double> out(coefficients.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = coefficients[j] * scale;
    Direction dir{out, basis.combine(out), true};
    return dir;
}

Direction calibrate_direction(const std::vector<double>& coefficients,
                              const BSplineBasis& basis) {
    return calibrate_direction(coefficients, basis, gram_matrix(basis));
}

}  // namespace ssfplsim
