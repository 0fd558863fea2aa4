#pragma once

// The non-regular solution V of V' + 2 W1 V = -1, the lambda family built on it, and W = 1/V + W1.
//
// With W = 1/V + W1 the Riccati equation reduces to
//     dV/drho + 2 W1 V = -1,
// solved by V = -f^2 * integral(f^-2). Substituting rho^kappa = tan(alpha/2)
// turns the integral into
//     2^((2l+1)/kappa)/kappa * integral(csc^n(alpha)),  n = (2l + kappa + 1)/kappa,
// whose antiderivative is built here by the standard cosecant-power reduction.
// The general solution adds the homogeneous piece: V_lambda = V - lambda f^2.

#include "domain.hpp"
#include "superpotential.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dosusy {

struct CosTerm {
    double coeff;
    int csc_power;

    friend bool operator==(const CosTerm&, const CosTerm&) = default;
};

/// Antiderivative of csc^n(alpha) in the form
///     cos(alpha) * sum_k coeff_k csc^(p_k)(alpha) + log_coeff * ln tan(alpha/2),
/// with no integration constant. cos_terms are ordered by descending power.
struct CosecantSeries {
    int n = 0;
    std::vector<CosTerm> cos_terms;
    double log_coeff = 0.0;

    double cos_part(AlphaAngle alpha) const
    {
        const double a = alpha.value();
        const double csc = 1 / std::sin(a);
        // smallest power first
        double sum = 0.0;
        for (auto it = cos_terms.rbegin(); it != cos_terms.rend(); ++it)
            sum += it->coeff * std::pow(csc, it->csc_power);
        return std::cos(a) * sum;
    }

    double log_part(AlphaAngle alpha) const
    {
        return log_coeff == 0.0 ? 0.0 : log_coeff * std::log(std::tan(alpha.value() / 2));
    }

    double evaluate(AlphaAngle alpha) const { return cos_part(alpha) + log_part(alpha); }
};

/// Reduction
///     I_n = -cos a csc^(n-1) a / (n-1) + (n-2)/(n-1) I_(n-2),
/// closed by I_2 = -cos a csc a and I_1 = ln tan(a/2).
inline CosecantSeries csc_antiderivative(int n)
{
    if (n < 1 || n > 4 * L_MAX + 3)
        throw std::invalid_argument("csc_antiderivative: n must lie in [1, "
                                    + std::to_string(4 * L_MAX + 3) + "], got " + std::to_string(n));
    CosecantSeries s;
    s.n = n;
    double carry = 1.0; // product of the (m-2)/(m-1) factors accumulated so far
    int m = n;
    for (; m > 2; m -= 2) {
        s.cos_terms.push_back({-carry / (m - 1), m - 1});
        carry *= static_cast<double>(m - 2) / (m - 1);
    }
    if (m == 2)
        s.cos_terms.push_back({-carry, 1});
    else
        s.log_coeff = carry;
    return s;
}

namespace detail {

inline void require_series(const ModelParams& p)
{
    if (!p.has_series())
        throw std::invalid_argument("closed-form series exist only for kappa = 1 or 1/2, got kappa = "
                                    + p.kappa_exact().str());
}

} // namespace detail

/// Prefactor 2^((2l+1)/kappa)/kappa of the cosecant integral.
inline double s_prefactor(const ModelParams& p)
{
    detail::require_series(p);
    const int l = p.l();
    return p.series_case() == SeriesCase::MaxwellFisheye ? std::ldexp(1.0, 2 * l + 1)
                                                         : std::ldexp(1.0, 4 * l + 3);
}

inline CosecantSeries series_for(const ModelParams& p)
{
    detail::require_series(p);
    return csc_antiderivative(*p.csc_exponent());
}

/// Canonical antiderivative of f^-2 expressed in alpha. Vanishes at alpha = pi/2.
inline double s_integral(const ModelParams& p, AlphaAngle alpha)
{
    return s_prefactor(p) * series_for(p).evaluate(alpha);
}

/// V = -f^2 * S, the particular solution of dV/drho + 2 W1 V = -1.
inline double v_second(const ModelParams& p, double rho)
{
    detail::require_series(p);
    return -f_squared(p, rho) * s_integral(p, rho_to_alpha(p, rho));
}

inline double v_lambda(const ModelParams& p, LambdaParam lam, double rho)
{
    return v_second(p, rho) - lam.value() * f_squared(p, rho);
}

/// |V_lambda| below this fraction of max(1, f^2) is treated as a pole of W.
inline constexpr double SINGULAR_THRESHOLD = 1e-12;

/// Second superpotential W = 1/V_lambda + W1; std::nullopt at a pole.
inline std::optional<double> w_second(const ModelParams& p, LambdaParam lam, double rho)
{
    const double fsq = f_squared(p, rho);
    const double v = v_lambda(p, lam, rho);
    if (std::abs(v) < SINGULAR_THRESHOLD * std::max(1.0, fsq))
        return std::nullopt;
    return 1 / v + w1(p, rho);
}

struct SecondSolutionEval {
    double rho;
    double alpha;
    double S;
    double f_sq;
    double V;
    double V_lambda;
    std::optional<double> W2;
};

inline SecondSolutionEval evaluate_second_solution(const ModelParams& p, LambdaParam lam, double rho)
{
    detail::require_series(p);
    SecondSolutionEval e{};
    e.rho = rho;
    const AlphaAngle alpha = rho_to_alpha(p, rho);
    e.alpha = alpha.value();
    e.S = s_integral(p, alpha);
    e.f_sq = f_squared(p, rho);
    e.V = -e.f_sq * e.S;
    e.V_lambda = e.V - lam.value() * e.f_sq;
    if (std::abs(e.V_lambda) >= SINGULAR_THRESHOLD * std::max(1.0, e.f_sq))
        e.W2 = 1 / e.V_lambda + w1(p, rho);
    return e;
}

} // namespace dosusy
