#pragma once

// Independent numerical checks: quadrature of the displayed integrands,
// finite-difference derivatives and pointwise residuals of the linear ODE and
// the Riccati equation. This header deliberately does not include
// second_solution.hpp or transcribed.hpp.

#include "domain.hpp"
#include "superpotential.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

namespace dosusy::oracle {

using RealFn = std::function<double(double)>;

struct ResidualSummary {
    double max_abs = 0.0;
    double mean_abs = 0.0;
    double argmax_rho = 0.0;
    int n_points = 0;
};

/// Quadrature failed to reach the requested tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate, double error)
        : std::runtime_error(what), best_estimate(estimate), error_estimate(error) {}
    double best_estimate;
    double error_estimate;
};

/// f^-2 as the displayed integrand (rho^-kappa + rho^kappa)^((2l+1)/kappa) / rho,
/// evaluated in the log domain.
inline double integrand_rho(const ModelParams& p, double rho)
{
    dosusy::detail::check_rho(rho);
    const double k = p.kappa();
    const double x = std::abs(k * std::log(rho));
    const double log_sum = x + std::log1p(std::exp(-2 * x)); // log(rho^-k + rho^k)
    return std::exp((2 * p.l() + 1) / k * log_sum - std::log(rho));
}

/// (2^((2l+1)/kappa)/kappa) (sin a)^(-(2l+kappa+1)/kappa)
inline double integrand_alpha(const ModelParams& p, AlphaAngle alpha)
{
    const double k = p.kappa();
    const double l = p.l();
    return std::pow(2.0, (2 * l + 1) / k) / k * std::pow(std::sin(alpha.value()), -(2 * l + k + 1) / k);
}

/// d(alpha)/d(rho) for alpha = 2 atan(rho^kappa).
inline double dalpha_drho(const ModelParams& p, double rho)
{
    dosusy::detail::check_rho(rho);
    const double k = p.kappa();
    const double t = std::pow(rho, k);
    return 2 * k * t / (rho * (1 + t * t));
}

namespace detail {

struct GkPanel {
    double a, b, value, error;
    bool operator<(const GkPanel& o) const { return error < o.error; }
};

/// 7-point Gauss / 15-point Kronrod pair on [a, b]. The error is |K - G|,
/// floored at the rounding level of the Kronrod sum.
template <class Fn>
GkPanel gauss_kronrod_15(Fn& fn, double a, double b)
{
    static constexpr std::array<double, 8> xk = {
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.0};
    static constexpr std::array<double, 8> wk = {
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    // Gauss weights for the odd Kronrod nodes xk[1], xk[3], xk[5], xk[7].
    static constexpr std::array<double, 4> wg = {
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

    const double mid = (a + b) / 2, half = (b - a) / 2;
    const double fc = fn(mid);
    double kronrod = wk[7] * fc, gauss = wg[3] * fc, absolute = wk[7] * std::abs(fc);
    for (int i = 0; i < 7; ++i) {
        const double f1 = fn(mid - half * xk[i]), f2 = fn(mid + half * xk[i]);
        kronrod += wk[i] * (f1 + f2);
        absolute += wk[i] * (std::abs(f1) + std::abs(f2));
        if (i % 2 == 1)
            gauss += wg[i / 2] * (f1 + f2);
    }
    const double err = std::max(std::abs((kronrod - gauss) * half),
                                50 * std::numeric_limits<double>::epsilon() * absolute * half);
    return {a, b, kronrod * half, err};
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature: the panel with the
/// largest error estimate is bisected until the summed estimate drops to
/// rel_tol * |integral|. Throws QuadratureError after max_panels.
inline double quad_adaptive(const RealFn& fn, double a, double b, double rel_tol = 1e-12, int max_panels = 4000)
{
    if (!(a < b))
        throw std::invalid_argument("quad_adaptive: need a < b");
    std::priority_queue<detail::GkPanel> panels;
    auto first = detail::gauss_kronrod_15(fn, a, b);
    double value = first.value, error = first.error;
    panels.push(first);
    while (!(error <= rel_tol * std::abs(value))) {
        if (!std::isfinite(value) || static_cast<int>(panels.size()) >= max_panels)
            throw QuadratureError("quad_adaptive: no convergence on [" + std::to_string(a) + ", "
                                      + std::to_string(b) + "], error estimate " + std::to_string(error),
                                  value, error);
        const auto worst = panels.top();
        panels.pop();
        const double m = (worst.a + worst.b) / 2;
        const auto left = detail::gauss_kronrod_15(fn, worst.a, m);
        const auto right = detail::gauss_kronrod_15(fn, m, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }
    // Re-add from scratch so the running updates leave no drift.
    double total = 0.0;
    for (; !panels.empty(); panels.pop())
        total += panels.top().value;
    return total;
}

/// Central difference (fn(x+h) - fn(x-h)) / 2h.
inline double fd_derivative(const RealFn& fn, double x, double h)
{
    return (fn(x + h) - fn(x - h)) / (2 * h);
}

/// Default step for the residual checks.
inline double fd_step(double rho) { return 1e-5 * std::max(1.0, std::abs(rho)); }

struct ExtrapolatedDerivative {
    double value;
    double error;
};

/// Ridders' polynomial extrapolation of central differences, starting from
/// step h and shrinking by 1.4 per stage.
inline ExtrapolatedDerivative fd_derivative_extrapolated(const RealFn& fn, double x, double h)
{
    constexpr int ntab = 10;
    constexpr double con = 1.4, con2 = con * con, safe = 2.0;
    std::array<std::array<double, ntab>, ntab> a{};
    double hh = h;
    a[0][0] = fd_derivative(fn, x, hh);
    double err = std::numeric_limits<double>::max();
    double ans = a[0][0];
    for (int i = 1; i < ntab; ++i) {
        hh /= con;
        a[0][i] = fd_derivative(fn, x, hh);
        double fac = con2;
        for (int j = 1; j <= i; ++j) {
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1);
            fac *= con2;
            const double e = std::max(std::abs(a[j][i] - a[j - 1][i]), std::abs(a[j][i] - a[j - 1][i - 1]));
            if (e <= err) {
                err = e;
                ans = a[j][i];
            }
        }
        if (std::abs(a[i][i] - a[i - 1][i - 1]) >= safe * err)
            break;
    }
    return {ans, err};
}

/// dV/drho + 2 W1 V + 1, with the derivative from a central difference.
inline double ode_residual(const ModelParams& p, const RealFn& v_fn, double rho)
{
    return fd_derivative(v_fn, rho, fd_step(rho)) + 2 * w1(p, rho) * v_fn(rho) + 1;
}

/// W^2 - dW/drho - U_eff.
///
/// Second solutions have poles wherever V_lambda vanishes, and near one the
/// fixed-step central difference is off by O(h^2 / d^4) for pole distance d.
/// The derivative is therefore extrapolated, starting from a step that is a
/// fixed fraction of the local length scale, capped at max(1, rho).
inline double riccati_residual(const ModelParams& p, const RealFn& w_fn, double rho)
{
    dosusy::detail::check_rho(rho);
    const double w = w_fn(rho);
    const double base = std::max(1.0, rho);
    // Pole distance estimates: |W/W'| and 2|W'/W''| both approach d near a
    // simple pole. Take the smaller, floored so zeros of W don't give h = 0.
    const double h1 = 1e-6 * base, h2 = 1e-5 * base;
    const double d1 = fd_derivative(w_fn, rho, h1);
    const double d2 = (w_fn(rho + h2) - 2 * w + w_fn(rho - h2)) / (h2 * h2);
    const double by_value = d1 != 0 ? std::abs(w / d1) : base;
    const double by_slope = d2 != 0 ? 2 * std::abs(d1 / d2) : base;
    const double scale = std::clamp(std::min(by_value, by_slope), 1e-4 * base, base);
    const double h0 = std::min(0.05 * scale, 0.5 * rho);
    const double dw = fd_derivative_extrapolated(w_fn, rho, h0).value;
    return w * w - dw - u_eff(p, rho);
}

/// -f^2(rho) times the quadrature of f^-2 from rho_ref to rho.
inline double v_quadrature(const ModelParams& p, double rho, double rho_ref = 1.0, double rel_tol = 1e-12)
{
    dosusy::detail::check_rho(rho);
    dosusy::detail::check_rho(rho_ref);
    if (rho == rho_ref)
        return 0.0;
    const RealFn g = [&p](double r) { return integrand_rho(p, r); };
    const double integral
        = rho > rho_ref ? quad_adaptive(g, rho_ref, rho, rel_tol) : -quad_adaptive(g, rho, rho_ref, rel_tol);
    return -f_squared(p, rho) * integral;
}

/// Max/mean of |fn(rho)| over the grid.
template <class Fn>
ResidualSummary summarize(const RadialGrid& grid, Fn&& fn)
{
    ResidualSummary s;
    double total = 0.0;
    for (double rho : grid) {
        double r = std::abs(fn(rho));
        if (std::isnan(r))
            r = std::numeric_limits<double>::infinity();
        if (s.n_points == 0 || r > s.max_abs) {
            s.max_abs = r;
            s.argmax_rho = rho;
        }
        total += r;
        ++s.n_points;
    }
    s.mean_abs = s.n_points ? total / s.n_points : 0.0;
    return s;
}

} // namespace dosusy::oracle
