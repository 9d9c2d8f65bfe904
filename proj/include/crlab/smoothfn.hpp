#pragma once

// Concrete cut-off chi and convex profile Lambda, plus the constant C that
// makes every u_m + v_m subharmonic.
//
// chi(t)    : smooth step built from phi(x) = exp(-1/x); 1 for t <= 1/4,
//             0 for t >= 1, monotone in between.
// Lambda''  : beta(x) = exp(-1/(4 - x^2)) on (-2, 2), 0 elsewhere.
// Lambda'   : integral of beta from -2; constant for x >= 2.
// Lambda    : integral of Lambda' from -2; 0 for x <= -2, affine for x >= 2.
//
// Lambda and Lambda' are tabulated once on a uniform grid over [-2, 2] by
// adaptive Gauss-Legendre quadrature and evaluated by cubic Hermite
// interpolation (the exact derivative is known at every node).

#include <functional>
#include <vector>

namespace crlab::smooth {

inline constexpr double kChiLow = 0.25;
inline constexpr double kChiHigh = 1.0;
inline constexpr double kLambdaEdge = 2.0;
inline constexpr int kLambdaGridIntervals = 10000;
inline constexpr double kQuadratureTol = 1e-12;
inline constexpr int kSupSamples = 100000;

// order in {0, 1, 2}; anything else throws std::invalid_argument.
double chi_eval(double t, int order);
double lambda_eval(double x, int order);

// Adaptive Gauss-Legendre (10-point rule, bisection until the two-panel
// estimate agrees with the one-panel estimate to `abs_tol`).
double integrate(const std::function<double(double)> &f, double a, double b, double abs_tol = kQuadratureTol);

class ConvexProfile {
public:
    // Built eagerly on first use; immutable afterwards.
    static const ConvexProfile &instance();

    double value(double x) const;
    double slope(double x) const;
    double curvature(double x) const;

    // Lambda'(x) for every x >= 2.
    double terminal_slope() const { return slope_.back(); }

private:
    ConvexProfile();

    double step_;
    std::vector<double> value_;
    std::vector<double> slope_;
};

struct SubharmonicityConstant {
    double C = 0;
    double chi_d1_sup = 0;     // sup |chi'| on [1/4, 1]
    double chi_d2_sup = 0;     // sup |chi''| on [1/4, 1]
    double lambda_dd_min = 0;  // min Lambda'' on [-2 ln 2, 0]
    double safety = 2;
};

// C = safety * (2 sup|chi'| + sup|chi''|) / min Lambda''.
//
// On the annulus 1/(2 eps) < |z| < 1/eps the displayed formula for
// d^2 u_m / dz dzbar is bounded by m a_m eps^2 / eps^m * ((m+1)/m sup|chi'|
// + sup|chi''|) <= m a_m eps^2 / eps^m * (2 sup|chi'| + sup|chi''|), while
// d^2 v_m / dz dzbar >= C m a_m eps^2 / eps^m * min Lambda'' because
// |z|^-2 > eps^2 and log(eps^2 |z|^2) lies in (-2 ln 2, 0). Any safety >= 1
// therefore gives a nonnegative Laplacian; the default 2 absorbs the
// sampling error in the sup/min estimates.
SubharmonicityConstant compute_constant_C(double safety = 2.0);

} // namespace crlab::smooth
