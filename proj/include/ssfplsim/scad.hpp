#pragma once

namespace ssfplsim {

// SCAD penalty parameters: level lambda >= 0 and shape a > 2 (3.7 throughout).
struct ScadParams {
    double a = 3.7;
    double lambda = 0.0;
    ScadParams() = default;
    ScadParams(double a_, double lambda_);
};

// P(t): lambda*t on [0,lambda]; quadratic blend on (lambda, a*lambda];
// constant (a+1)*lambda^2/2 beyond. At the kinks the left segment applies.
double scad_value(double t, const ScadParams& p);

// P'(t) for t > 0: lambda, then linear descent to zero at a*lambda.
double scad_derivative(double t, const ScadParams& p);

// Global minimiser of f(b) = weight/2 (b - z)^2 + P(|b|). Exact: the objective
// is piecewise quadratic, so the minimum is at a stationary point of one of
// the three pieces or at a breakpoint {0, lambda, a*lambda}; all candidates
// are enumerated and compared. Returns exact zeros.
double scad_univariate_min(double z, double weight, const ScadParams& p);

}  // namespace ssfplsim
