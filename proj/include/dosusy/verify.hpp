#pragma once

// The invariant suite run by `dosusy verify` and `dosusy sweep`.

#include "domain.hpp"
#include "oracle.hpp"
#include "second_solution.hpp"
#include "superpotential.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace dosusy {

/// Deliberate corruption of the second solution, used to show the suite can fail.
enum class Fault { None, ScaleV };

struct CheckResult {
    std::string name;
    oracle::ResidualSummary summary;
    double tolerance;
    bool pass;
};

struct Tolerances {
    double ode = 1e-6;
    double riccati = 1e-5;
    double riccati_min_abs_v = 1e-3;
    double series_quadrature = 1e-8;
    double antiderivative_quadrature = 1e-9;
    double substitution = 1e-9;
    double trig_identity = 1e-12;
    double integrand_identity = 1e-12;
    double log_derivative = 1e-6;
};

namespace detail {

/// Up to `max_pairs` adjacent chunks of the grid, as (rho_a, rho_b) with rho_a < rho_b.
inline std::vector<std::pair<double, double>> chunk_pairs(const RadialGrid& grid, std::size_t max_pairs = 20)
{
    std::vector<std::pair<double, double>> out;
    const std::size_t n = grid.size();
    if (n < 2)
        return out;
    const std::size_t k = std::min(max_pairs, n - 1);
    for (std::size_t i = 0; i < k; ++i)
        out.emplace_back(grid[i * (n - 1) / k], grid[(i + 1) * (n - 1) / k]);
    return out;
}

inline CheckResult make_check(std::string name, oracle::ResidualSummary s, double tol)
{
    const bool pass = s.n_points > 0 && s.max_abs <= tol;
    return {std::move(name), s, tol, pass};
}

template <class Fn>
oracle::ResidualSummary summarize_pairs(const std::vector<std::pair<double, double>>& pairs, Fn&& fn)
{
    oracle::ResidualSummary s;
    double total = 0;
    for (const auto& [a, b] : pairs) {
        double r = std::abs(fn(a, b));
        if (std::isnan(r))
            r = std::numeric_limits<double>::infinity();
        if (s.n_points == 0 || r > s.max_abs) {
            s.max_abs = r;
            s.argmax_rho = a;
        }
        total += r;
        ++s.n_points;
    }
    s.mean_abs = s.n_points ? total / s.n_points : 0.0;
    return s;
}

} // namespace detail

/// Runs every check for one (kappa, l, lambda) over the grid.
inline std::vector<CheckResult> run_checks(const ModelParams& p, LambdaParam lam, const RadialGrid& grid,
                                           Fault fault = Fault::None, const Tolerances& tol = {})
{
    detail::require_series(p);
    const double scale = fault == Fault::ScaleV ? 2.0 : 1.0;
    const oracle::RealFn v = [&](double rho) { return scale * v_lambda(p, lam, rho); };
    const oracle::RealFn w = [&](double rho) { return 1 / v(rho) + w1(p, rho); };

    std::vector<CheckResult> out;

    out.push_back(detail::make_check(
        "ode_residual", oracle::summarize(grid, [&](double rho) { return oracle::ode_residual(p, v, rho); }),
        tol.ode));

    {
        std::vector<double> pts;
        for (double rho : grid)
            if (std::abs(v(rho)) > tol.riccati_min_abs_v)
                pts.push_back(rho);
        oracle::ResidualSummary s;
        if (!pts.empty())
            s = oracle::summarize(RadialGrid(std::move(pts)),
                                  [&](double rho) { return oracle::riccati_residual(p, w, rho); });
        // A grid where every point sits on a pole has nothing to check; that is not a failure.
        CheckResult c = detail::make_check("riccati_residual", s, tol.riccati);
        if (s.n_points == 0)
            c.pass = true;
        out.push_back(std::move(c));
    }

    out.push_back(detail::make_check("series_vs_quadrature", oracle::summarize(grid, [&](double rho) {
                                         const double series = scale * v_second(p, rho);
                                         const double quad = oracle::v_quadrature(p, rho, 1.0);
                                         return (series - quad) / std::max(1.0, std::abs(series));
                                     }),
                                     tol.series_quadrature));

    const auto pairs = detail::chunk_pairs(grid);
    const oracle::RealFn g_alpha = [&](double a) { return oracle::integrand_alpha(p, AlphaAngle(a)); };
    const oracle::RealFn g_rho = [&](double r) { return oracle::integrand_rho(p, r); };

    out.push_back(detail::make_check("antiderivative_vs_quadrature", detail::summarize_pairs(pairs, [&](double a, double b) {
                                         const AlphaAngle aa = rho_to_alpha(p, a), ab = rho_to_alpha(p, b);
                                         const double ds = s_integral(p, ab) - s_integral(p, aa);
                                         const double q = oracle::quad_adaptive(g_alpha, aa, ab);
                                         return (ds - q) / q;
                                     }),
                                     tol.antiderivative_quadrature));

    out.push_back(detail::make_check("substitution", detail::summarize_pairs(pairs, [&](double a, double b) {
                                         const double qr = oracle::quad_adaptive(g_rho, a, b);
                                         const double qa = oracle::quad_adaptive(g_alpha, rho_to_alpha(p, a),
                                                                                 rho_to_alpha(p, b));
                                         return (qr - qa) / qr;
                                     }),
                                     tol.substitution));

    out.push_back(detail::make_check("trig_identity", oracle::summarize(grid, [&](double rho) {
                                         const double fsq = f_squared(p, rho);
                                         return (fsq - f_squared_trig(p, rho_to_alpha(p, rho))) / fsq;
                                     }),
                                     tol.trig_identity));

    out.push_back(detail::make_check("integrand_identity", oracle::summarize(grid, [&](double rho) {
                                         return oracle::integrand_rho(p, rho) * f_squared(p, rho) - 1;
                                     }),
                                     tol.integrand_identity));

    out.push_back(detail::make_check("log_derivative", oracle::summarize(grid, [&](double rho) {
                                         const oracle::RealFn lnf = [&](double r) { return log_f_radial(p, r); };
                                         return w1(p, rho) + oracle::fd_derivative(lnf, rho, oracle::fd_step(rho));
                                     }),
                                     tol.log_derivative));
    return out;
}

inline bool all_pass(const std::vector<CheckResult>& checks)
{
    for (const auto& c : checks)
        if (!c.pass)
            return false;
    return true;
}

} // namespace dosusy
