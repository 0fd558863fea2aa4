#pragma once

// Particular superpotential W1 of the Demkov-Ostrovsky Riccati equation
//     W^2 - dW/drho = U_eff,
// its ground-state factor f (W1 = -d ln f / drho) and the map
//     rho^kappa = tan(alpha/2)
// between the radial coordinate and the cosecant angle.

#include "domain.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dosusy {

/// Angle in the open interval (0, pi).
class AlphaAngle {
public:
    explicit AlphaAngle(double alpha) : alpha_(alpha)
    {
        if (!(alpha > 0 && alpha < std::numbers::pi))
            throw std::domain_error("alpha must lie in (0, pi)");
    }
    double value() const { return alpha_; }
    operator double() const { return alpha_; }

private:
    double alpha_;
};

namespace detail {

/// log(1 + rho^(2 kappa)) without overflowing rho^(2 kappa).
inline double log1p_rho_pow(double kappa, double rho)
{
    const double x = 2 * kappa * std::log(rho);
    return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

} // namespace detail

/// W1 = l/rho - (2l+1)/(rho (1 + rho^(2 kappa))).
inline double w1(const ModelParams& p, double rho)
{
    detail::check_rho(rho);
    const double l = p.l();
    const double q = std::pow(rho, 2 * p.kappa());
    return l / rho - (2 * l + 1) / (rho * (1 + q));
}

/// Analytic dW1/drho.
inline double w1_prime(const ModelParams& p, double rho)
{
    detail::check_rho(rho);
    const double l = p.l();
    const double k = p.kappa();
    const double q = std::pow(rho, 2 * k);
    // s = 1/(1+q), t = q/(1+q); both stay finite when q overflows or underflows.
    const double s = 1 / (1 + q);
    const double t = 1 / (1 + 1 / q);
    // (1 + (1+2k) q)/(1+q)^2 = s^2 + (1+2k) s t
    return (-l + (2 * l + 1) * (s * s + (1 + 2 * k) * s * t)) / (rho * rho);
}

/// ln f = (l+1) ln rho - (2l+1)/(2 kappa) ln(1 + rho^(2 kappa)).
inline double log_f_radial(const ModelParams& p, double rho)
{
    detail::check_rho(rho);
    const double l = p.l();
    return (l + 1) * std::log(rho) - (2 * l + 1) / (2 * p.kappa()) * detail::log1p_rho_pow(p.kappa(), rho);
}

/// Ground-state factor f = rho^(l+1) (1 + rho^(2 kappa))^(-(2l+1)/(2 kappa)).
inline double f_radial(const ModelParams& p, double rho)
{
    return std::exp(log_f_radial(p, rho));
}

inline double f_squared(const ModelParams& p, double rho)
{
    return std::exp(2 * log_f_radial(p, rho));
}

/// Riccati right-hand side W1^2 - W1'.
inline double u_eff(const ModelParams& p, double rho)
{
    const double w = w1(p, rho);
    return w * w - w1_prime(p, rho);
}

inline AlphaAngle rho_to_alpha(const ModelParams& p, double rho)
{
    detail::check_rho(rho);
    double alpha = 2 * std::atan(std::pow(rho, p.kappa()));
    // Saturates for extreme rho; keep it inside the open interval.
    if (alpha <= 0)
        alpha = std::numeric_limits<double>::denorm_min();
    if (alpha >= std::numbers::pi)
        alpha = std::nextafter(std::numbers::pi, 0.0);
    return AlphaAngle(alpha);
}

inline double alpha_to_rho(const ModelParams& p, AlphaAngle alpha)
{
    return std::pow(std::tan(alpha.value() / 2), 1 / p.kappa());
}

/// f^2 written through alpha: 2^(-2l) sin^(2l)(a) sin^2(a/2) for kappa = 1 and
/// 2^(-4l) sin^(4l)(a) sin^4(a/2) for kappa = 1/2.
inline double f_squared_trig(const ModelParams& p, AlphaAngle alpha)
{
    const double a = alpha.value();
    const double l = p.l();
    switch (p.series_case()) {
    case SeriesCase::MaxwellFisheye:
        return std::pow(std::sin(a) / 2, 2 * l) * std::pow(std::sin(a / 2), 2);
    case SeriesCase::AtomicAufbau:
        return std::pow(std::sin(a) / 2, 4 * l) * std::pow(std::sin(a / 2), 4);
    case SeriesCase::GeneralKappa:
        break;
    }
    throw std::invalid_argument("trigonometric f^2 form exists only for kappa = 1 or 1/2");
}

} // namespace dosusy
