#include "ssfplsim/scad.hpp"

#include <cmath>

#include "ssfplsim/errors.hpp"

namespace ssfplsim {

ScadParams::ScadParams(double a_, double lambda_) : a(a_), lambda(lambda_) {
    if (!(a > 2.0)) throw contract_violation("SCAD shape must satisfy a > 2");
    if (lambda < 0.0) throw contract_violation("SCAD level must be nonnegative");
}

double scad_value(double t, const ScadParams& p) {
    if (t < 0.0) throw contract_violation("scad_value needs t >= 0");
    const double l = p.lambda;
    if (l == 0.0) return 0.0;
    if (t <= l) return l * t;
    if (t <= p.a * l) return -(t * t - 2.0 * p.a * l * t + l * l) / (2.0 * (p.a - 1.0));
    return (p.a + 1.0) * l * l / 2.0;
}

double scad_derivative(double t, const ScadParams& p) {
    if (!(t > 0.0)) throw contract_violation("scad_derivative needs t > 0");
    const double l = p.lambda;
    if (l == 0.0) return 0.0;
    if (t <= l) return l;
    const double num = p.a * l - t;
    return num > 0.0 ? num / (p.a - 1.0) : 0.0;
}

double scad_univariate_min(double z, double weight, const ScadParams& p) {
    if (!(weight > 0.0)) throw contract_violation("scad_univariate_min needs weight > 0");
    const double l = p.lambda;
    if (l == 0.0) return z;
    const double sign = z < 0.0 ? -1.0 : 1.0;
    const double az = std::abs(z);

    double best_b = 0.0;
    double best_f = weight * 0.5 * az * az;  // f(0)
    auto consider = [&](double b) {
        const double d = b - az;
        const double f = weight * 0.5 * d * d + scad_value(b, p);
        if (f < best_f) {
            best_f = f;
            best_b = b;
        }
    };

    // stationary point of the linear-penalty piece (soft threshold)
    const double b1 = az - l / weight;
    if (b1 > 0.0 && b1 <= l) consider(b1);
    // stationary point of the middle piece
    const double denom = weight * (p.a - 1.0) - 1.0;
    if (denom != 0.0) {
        const double b2 = (weight * az * (p.a - 1.0) - p.a * l) / denom;
        if (b2 > l && b2 <= p.a * l) consider(b2);
    }
    // flat-penalty piece: unshrunk solution
    if (az > p.a * l) consider(az);
    // breakpoints
    consider(l);
    consider(p.a * l);

    return sign * best_b;
}

}  // namespace ssfplsim
