#include "crlab/smoothfn.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace crlab::smooth {

namespace {

void check_order(int order)
{
    if (order < 0 || order > 2) {
        throw std::invalid_argument("derivative order must be 0, 1 or 2, got " + std::to_string(order));
    }
}

// phi(x) = exp(-1/x) and its first two derivatives, zero for x <= 0.
struct Phi {
    double v, d1, d2;
};

Phi phi(double x)
{
    if (x <= 0) {
        return {0, 0, 0};
    }
    const double v = std::exp(-1.0 / x);
    const double x2 = x * x;
    return {v, v / x2, v * (1.0 / (x2 * x2) - 2.0 / (x2 * x))};
}

// Smooth step S(x) = phi(x) / (phi(x) + phi(1-x)) and derivatives.
std::array<double, 3> smooth_step(double x)
{
    if (x <= 0) {
        return {0, 0, 0};
    }
    if (x >= 1) {
        return {1, 0, 0};
    }
    const Phi p = phi(x);
    const Phi q0 = phi(1 - x);
    // Derivatives of q(x) = phi(1-x).
    const double q = q0.v, dq = -q0.d1, ddq = q0.d2;
    const double d = p.v + q;
    const double dd = p.d1 + dq;
    const double n = p.d1 * q - p.v * dq;
    const double dn = p.d2 * q - p.v * ddq;
    return {p.v / d, n / (d * d), (dn * d - 2 * n * dd) / (d * d * d)};
}

struct GaussRule {
    std::array<double, 10> x{};
    std::array<double, 10> w{};
};

// Legendre roots by Newton iteration from the Chebyshev-like guess.
GaussRule make_rule()
{
    constexpr int n = 10;
    GaussRule r;
    for (int i = 0; i < n; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) {
                break;
            }
        }
        r.x[static_cast<std::size_t>(i)] = z;
        r.w[static_cast<std::size_t>(i)] = 2 / ((1 - z * z) * dp * dp);
    }
    return r;
}

const GaussRule &rule()
{
    static const GaussRule r = make_rule();
    return r;
}

double panel(const std::function<double(double)> &f, double a, double b)
{
    const auto &r = rule();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0;
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        s += r.w[i] * f(mid + half * r.x[i]);
    }
    return s * half;
}

double adapt(const std::function<double(double)> &f, double a, double b, double whole, double tol, int depth)
{
    const double mid = 0.5 * (a + b);
    const double left = panel(f, a, mid);
    const double right = panel(f, mid, b);
    if (depth >= 40 || std::abs(left + right - whole) <= tol) {
        return left + right;
    }
    return adapt(f, a, mid, left, 0.5 * tol, depth + 1) + adapt(f, mid, b, right, 0.5 * tol, depth + 1);
}

double beta(double x)
{
    if (x <= -kLambdaEdge || x >= kLambdaEdge) {
        return 0;
    }
    return std::exp(-1.0 / (4.0 - x * x));
}

// Cubic Hermite on [0,1] with values y0,y1 and slopes m0,m1 (already scaled
// by the cell width).
double hermite(double s, double y0, double y1, double m0, double m1)
{
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * m1;
}

// Maximizes |g| over [lo, hi]: uniform sampling, then golden-section search
// on the bracket around the best sample.
double sup_abs(const std::function<double(double)> &g, double lo, double hi, int samples)
{
    const double h = (hi - lo) / samples;
    double best = 0;
    int best_i = 0;
    for (int i = 0; i <= samples; ++i) {
        const double v = std::abs(g(lo + h * i));
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    double a = std::max(lo, lo + h * (best_i - 1));
    double b = std::min(hi, lo + h * (best_i + 1));
    const double invphi = (std::sqrt(5.0) - 1) / 2;
    for (int it = 0; it < 60; ++it) {
        const double c = b - invphi * (b - a);
        const double d = a + invphi * (b - a);
        if (std::abs(g(c)) > std::abs(g(d))) {
            b = d;
        } else {
            a = c;
        }
    }
    return std::max(best, std::abs(g(0.5 * (a + b))));
}

} // namespace

double chi_eval(double t, int order)
{
    check_order(order);
    // chi(t) = S((1 - t) / (3/4)); inner derivative is -4/3.
    constexpr double width = kChiHigh - kChiLow;
    const auto s = smooth_step((kChiHigh - t) / width);
    switch (order) {
    case 0:
        return s[0];
    case 1:
        return -s[1] / width;
    default:
        return s[2] / (width * width);
    }
}

double integrate(const std::function<double(double)> &f, double a, double b, double abs_tol)
{
    if (a == b) {
        return 0;
    }
    return adapt(f, a, b, panel(f, a, b), abs_tol, 0);
}

ConvexProfile::ConvexProfile()
    : step_(2 * kLambdaEdge / kLambdaGridIntervals), value_(kLambdaGridIntervals + 1), slope_(kLambdaGridIntervals + 1)
{
    value_[0] = 0;
    slope_[0] = 0;
    for (int i = 1; i <= kLambdaGridIntervals; ++i) {
        const double a = -kLambdaEdge + step_ * (i - 1);
        const double b = (i == kLambdaGridIntervals) ? kLambdaEdge : -kLambdaEdge + step_ * i;
        const auto k = static_cast<std::size_t>(i);
        slope_[k] = slope_[k - 1] + integrate(beta, a, b);
        // int_a^b Lambda'(s) ds = (b - a) Lambda'(a) + int_a^b (b - s) beta(s) ds
        value_[k] = value_[k - 1] + (b - a) * slope_[k - 1]
                    + integrate([b](double s) { return (b - s) * beta(s); }, a, b);
    }
}

const ConvexProfile &ConvexProfile::instance()
{
    static const ConvexProfile profile;
    return profile;
}

double ConvexProfile::curvature(double x) const { return beta(x); }

double ConvexProfile::slope(double x) const
{
    if (x <= -kLambdaEdge) {
        return 0;
    }
    if (x >= kLambdaEdge) {
        return slope_.back();
    }
    const double pos = (x + kLambdaEdge) / step_;
    const auto i = std::min(static_cast<std::size_t>(pos), slope_.size() - 2);
    const double x0 = -kLambdaEdge + step_ * static_cast<double>(i);
    return hermite(pos - static_cast<double>(i), slope_[i], slope_[i + 1], step_ * beta(x0),
                   step_ * beta(x0 + step_));
}

double ConvexProfile::value(double x) const
{
    if (x <= -kLambdaEdge) {
        return 0;
    }
    if (x >= kLambdaEdge) {
        return value_.back() + slope_.back() * (x - kLambdaEdge);
    }
    const double pos = (x + kLambdaEdge) / step_;
    const auto i = std::min(static_cast<std::size_t>(pos), value_.size() - 2);
    return hermite(pos - static_cast<double>(i), value_[i], value_[i + 1], step_ * slope_[i], step_ * slope_[i + 1]);
}

double lambda_eval(double x, int order)
{
    check_order(order);
    const auto &p = ConvexProfile::instance();
    switch (order) {
    case 0:
        return p.value(x);
    case 1:
        return p.slope(x);
    default:
        return p.curvature(x);
    }
}

SubharmonicityConstant compute_constant_C(double safety)
{
    if (!(safety > 0)) {
        throw std::invalid_argument("compute_constant_C: safety factor must be positive");
    }
    SubharmonicityConstant c;
    c.safety = safety;
    c.chi_d1_sup = sup_abs([](double t) { return chi_eval(t, 1); }, kChiLow, kChiHigh, kSupSamples);
    c.chi_d2_sup = sup_abs([](double t) { return chi_eval(t, 2); }, kChiLow, kChiHigh, kSupSamples);

    const double lo = -2 * std::numbers::ln2, hi = 0;
    double min_dd = std::min(beta(lo), beta(hi));
    const double h = (hi - lo) / kSupSamples;
    for (int i = 0; i <= kSupSamples; ++i) {
        min_dd = std::min(min_dd, beta(lo + h * i));
    }
    c.lambda_dd_min = min_dd;
    c.C = safety * (2 * c.chi_d1_sup + c.chi_d2_sup) / c.lambda_dd_min;
    return c;
}

} // namespace crlab::smooth
