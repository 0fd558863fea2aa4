#pragma once

// Symbol-by-symbol transcriptions of the four printed closed forms for the
// fisheye (kappa = 1) and Aufbau (kappa = 1/2) cases. They are kept verbatim,
// including any inconsistency, so that audit.hpp can compare them against the
// reduction-built antiderivative. Nothing in the library's primary surface
// calls into this header.

#include "superpotential.hpp"

#include <cmath>
#include <stdexcept>

namespace dosusy::transcribed {

/// A printed expression split into its cos(alpha) polynomial and its
/// ln tan(alpha/2) part. `log_coeff` is the factor multiplying ln tan(alpha/2).
struct Split {
    double cos_part = 0.0;
    double log_part = 0.0;
    double log_coeff = 0.0;
    double value() const { return cos_part + log_part; }
};

/// How to read the falling product in the printed fisheye V-series.
enum class ProductReading {
    AsPrinted,        ///< l(l-1)...(l-m): m+1 factors
    FisheyeSeriesForm ///< l(l-1)...(l+1-m): m factors, as in the fisheye S-series
};

namespace detail {

inline void check_l(int l)
{
    if (l < 0 || l > L_MAX)
        throw std::invalid_argument("transcribed forms need 0 <= l <= L_MAX");
}

/// 4 (4l+1)!! 4^l / (2l+1)!, built as a running product.
inline double aufbau_log_coeff(int l)
{
    double r = 4.0;
    for (int i = 1; i <= 2 * l + 1; ++i)
        r *= static_cast<double>(2 * i - 1) / i;
    return std::ldexp(r, 2 * l);
}

/// (4l+1)(4l-1)...(4l-2m+3) / [(2l)(2l-1)...(2l-m+1)] for m = 1..2l,
/// updated one factor at a time.
inline double aufbau_ratio_step(int l, int m)
{
    return static_cast<double>(4 * l - 2 * m + 3) / (2 * l - m + 1);
}

} // namespace detail

/// Fisheye antiderivative series:
/// -(2^(2l+1)/(2l+1)) cos a { csc^(2l+1) a
///     + sum_{m=1}^{l} 2^m [l(l-1)...(l+1-m)] / [(2l-1)(2l-3)...(2l+1-2m)] csc^(2l+1-2m) a }
inline double s1(int l, AlphaAngle alpha)
{
    detail::check_l(l);
    const double a = alpha.value();
    const double csc = 1 / std::sin(a);
    double braces = std::pow(csc, 2 * l + 1);
    double coeff = 1.0;
    for (int m = 1; m <= l; ++m) {
        coeff *= 2.0 * (l + 1 - m) / (2 * l + 1 - 2 * m);
        braces += coeff * std::pow(csc, 2 * l + 1 - 2 * m);
    }
    return -std::ldexp(1.0, 2 * l + 1) / (2 * l + 1) * std::cos(a) * braces;
}

/// Aufbau antiderivative series:
/// -(2^(4l+3)/(2l+1)) cos a (csc^2 a)^(2l+1) { 1 + sum_{m=1}^{2l}
///     [(4l+1)(4l-1)...(4l-2m+3)] / ((2 csc^2 a)^m [(2l)(2l-1)...(2l-m+1)]) }
/// + 4 [(4l+1)!!] / (4^-l (2l+1)!) ln tan(a/2)
inline Split s_half_split(int l, AlphaAngle alpha)
{
    detail::check_l(l);
    const double a = alpha.value();
    const double csc2 = 1 / (std::sin(a) * std::sin(a));
    double braces = 1.0;
    double coeff = 1.0;
    for (int m = 1; m <= 2 * l; ++m) {
        coeff *= detail::aufbau_ratio_step(l, m) / (2 * csc2);
        braces += coeff;
    }
    Split out;
    out.cos_part = -std::ldexp(1.0, 4 * l + 3) / (2 * l + 1) * std::cos(a) * std::pow(csc2, 2 * l + 1) * braces;
    out.log_coeff = detail::aufbau_log_coeff(l);
    out.log_part = out.log_coeff * std::log(std::tan(a / 2));
    return out;
}

inline double s_half(int l, AlphaAngle alpha) { return s_half_split(l, alpha).value(); }

/// Fisheye second solution:
/// (2 cos a/(2l+1)) tan(a/2) { 1 + sum_{m=1}^{l} (2 sin^2 a)^m [l(l-1)...(l-m)] / [(2l-1)...(2l+1-2m)] }
inline double v1(int l, AlphaAngle alpha, ProductReading reading = ProductReading::AsPrinted)
{
    detail::check_l(l);
    const double a = alpha.value();
    const double x = 2 * std::sin(a) * std::sin(a);
    double braces = 1.0;
    double numer = reading == ProductReading::AsPrinted ? static_cast<double>(l) : 1.0;
    double denom = 1.0;
    double xm = 1.0;
    for (int m = 1; m <= l; ++m) {
        numer *= reading == ProductReading::AsPrinted ? static_cast<double>(l - m)
                                                      : static_cast<double>(l + 1 - m);
        denom *= 2 * l + 1 - 2 * m;
        xm *= x;
        braces += xm * numer / denom;
    }
    return 2 * std::cos(a) / (2 * l + 1) * std::tan(a / 2) * braces;
}

/// Aufbau second solution:
/// (2 cos a/(2l+1)) tan^2(a/2) { 1 + sum_{m=1}^{2l} (sin^2 a / 2)^m
///     [(4l+1)(4l-1)...(4l-2m+3)] / [(2l)(2l-1)...(2l-m+1)] }
/// + 4 [(4l+1)!!] [sin^2 a / 2]^(2l) / ((2l+1)! [csc(a/2)]^4) ln tan(a/2)
inline Split v_half_split(int l, AlphaAngle alpha)
{
    detail::check_l(l);
    const double a = alpha.value();
    const double y = std::sin(a) * std::sin(a) / 2;
    double braces = 1.0;
    double coeff = 1.0;
    for (int m = 1; m <= 2 * l; ++m) {
        coeff *= detail::aufbau_ratio_step(l, m) * y;
        braces += coeff;
    }
    const double t = std::tan(a / 2);
    Split out;
    out.cos_part = 2 * std::cos(a) / (2 * l + 1) * t * t * braces;
    // 4 (4l+1)!!/(2l+1)! is aufbau_log_coeff without its 4^l.
    const double double_fact_ratio = std::ldexp(detail::aufbau_log_coeff(l), -2 * l);
    const double csc_half = 1 / std::sin(a / 2);
    out.log_coeff = double_fact_ratio * std::pow(y, 2 * l) / std::pow(csc_half, 4);
    out.log_part = out.log_coeff * std::log(t);
    return out;
}

inline double v_half(int l, AlphaAngle alpha) { return v_half_split(l, alpha).value(); }

} // namespace dosusy::transcribed
