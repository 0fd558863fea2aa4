#pragma once

// Parameter and grid types shared by every other part of the library.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dosusy {

/// Largest centrifugal number accepted. Series coefficients come from an
/// iterative floating-point recursion that stays at ~1e-12 relative up to here.
inline constexpr int L_MAX = 30;

/// Exact positive-or-negative rational, always stored in lowest terms with a
/// positive denominator.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den)
    {
        if (den_ == 0)
            throw std::invalid_argument("Rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const auto g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    /// Accepts "p", "p/q" and fixed-point decimals. Decimals convert digit by
    /// digit, so "0.5" is exactly 1/2. Exponent notation is not accepted.
    static Rational parse(std::string_view text)
    {
        auto fail = [&]() -> Rational {
            throw std::invalid_argument("cannot parse rational: '" + std::string(text) + "'");
        };
        if (text.empty())
            return fail();
        const auto slash = text.find('/');
        if (slash != std::string_view::npos) {
            const auto p = parse_integer(text.substr(0, slash));
            const auto q = parse_integer(text.substr(slash + 1));
            if (!p || !q || *q == 0)
                return fail();
            return Rational(*p, *q);
        }
        const auto dot = text.find('.');
        if (dot == std::string_view::npos) {
            const auto p = parse_integer(text);
            if (!p)
                return fail();
            return Rational(*p);
        }
        auto int_part = text.substr(0, dot);
        const auto frac_part = text.substr(dot + 1);
        bool negative = false;
        if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
            negative = int_part.front() == '-';
            int_part.remove_prefix(1);
        }
        if ((int_part.empty() && frac_part.empty()) || frac_part.size() > 15)
            return fail();
        std::int64_t num = 0, den = 1;
        for (char c : int_part) {
            if (c < '0' || c > '9' || num > 100000000000LL)
                return fail();
            num = num * 10 + (c - '0');
        }
        for (char c : frac_part) {
            if (c < '0' || c > '9' || num > 100000000000000LL)
                return fail();
            num = num * 10 + (c - '0');
            den *= 10;
        }
        return Rational(negative ? -num : num, den);
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string str() const
    {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend bool operator==(const Rational&, const Rational&) = default;

private:
    static std::optional<std::int64_t> parse_integer(std::string_view s)
    {
        bool negative = false;
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
            negative = s.front() == '-';
            s.remove_prefix(1);
        }
        if (s.empty() || s.size() > 15)
            return std::nullopt;
        std::int64_t v = 0;
        for (char c : s) {
            if (c < '0' || c > '9')
                return std::nullopt;
            v = v * 10 + (c - '0');
        }
        return negative ? -v : v;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

enum class SeriesCase { MaxwellFisheye, AtomicAufbau, GeneralKappa };

inline std::string_view to_string(SeriesCase c)
{
    switch (c) {
    case SeriesCase::MaxwellFisheye: return "MaxwellFisheye";
    case SeriesCase::AtomicAufbau: return "AtomicAufbau";
    case SeriesCase::GeneralKappa: return "GeneralKappa";
    }
    return "?";
}

/// A validated (kappa, l) pair. Construct through validate_params().
class ModelParams {
public:
    const Rational& kappa_exact() const { return kappa_; }
    double kappa() const { return kappa_.value(); }
    int l() const { return l_; }
    SeriesCase series_case() const { return case_; }
    bool has_series() const { return case_ != SeriesCase::GeneralKappa; }

    /// Cosecant exponent (2l + kappa + 1)/kappa when it is an integer.
    std::optional<int> csc_exponent() const { return exponent_; }

private:
    friend ModelParams validate_params(Rational kappa, int l);
    ModelParams(Rational k, int l, SeriesCase c, std::optional<int> n)
        : kappa_(k), l_(l), case_(c), exponent_(n) {}

    Rational kappa_;
    int l_;
    SeriesCase case_;
    std::optional<int> exponent_;
};

inline ModelParams validate_params(Rational kappa, int l)
{
    if (kappa.num() <= 0)
        throw std::invalid_argument("kappa must be positive, got " + kappa.str());
    if (l < 0 || l > L_MAX)
        throw std::invalid_argument("l must lie in [0, " + std::to_string(L_MAX) + "], got "
                                    + std::to_string(l));

    SeriesCase c = SeriesCase::GeneralKappa;
    if (kappa == Rational(1))
        c = SeriesCase::MaxwellFisheye;
    else if (kappa == Rational(1, 2))
        c = SeriesCase::AtomicAufbau;

    // (2l + 1)/kappa + 1 = (2l + 1) q / p + 1 is integral iff p divides 2l + 1.
    std::optional<int> n;
    const std::int64_t odd = 2 * static_cast<std::int64_t>(l) + 1;
    if (odd % kappa.num() == 0) {
        const std::int64_t value = odd / kappa.num() * kappa.den() + 1;
        if (value <= 1000000)
            n = static_cast<int>(value);
    }
    return ModelParams(kappa, l, c, n);
}

/// Strictly positive, strictly increasing evaluation abscissas in rho.
class RadialGrid {
public:
    explicit RadialGrid(std::vector<double> points) : points_(std::move(points))
    {
        if (points_.empty())
            throw std::invalid_argument("RadialGrid: empty grid");
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (!std::isfinite(points_[i]) || points_[i] <= 0)
                throw std::invalid_argument("RadialGrid: points must be finite and > 0");
            if (i > 0 && !(points_[i] > points_[i - 1]))
                throw std::invalid_argument("RadialGrid: points must be strictly increasing");
        }
    }

    /// `count` points spaced evenly in log(rho) between the two endpoints, inclusive.
    static RadialGrid log_spaced(double rho_min, double rho_max, int count)
    {
        if (!(rho_min > 0) || !(rho_max > rho_min) || !std::isfinite(rho_max))
            throw std::invalid_argument("log_spaced: need 0 < rho_min < rho_max");
        if (count < 2)
            throw std::invalid_argument("log_spaced: need at least 2 points");
        std::vector<double> pts(static_cast<std::size_t>(count));
        const double a = std::log(rho_min), b = std::log(rho_max);
        for (int i = 0; i < count; ++i)
            pts[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (count - 1));
        pts.front() = rho_min;
        pts.back() = rho_max;
        return RadialGrid(std::move(pts));
    }

    const std::vector<double>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    double operator[](std::size_t i) const { return points_[i]; }
    auto begin() const { return points_.begin(); }
    auto end() const { return points_.end(); }

private:
    std::vector<double> points_;
};

/// Family parameter of the general second solution.
class LambdaParam {
public:
    explicit LambdaParam(double value = 0.0) : value_(value)
    {
        if (!std::isfinite(value_))
            throw std::invalid_argument("lambda must be finite");
    }
    double value() const { return value_; }

private:
    double value_;
};

namespace detail {

inline void check_rho(double rho)
{
    if (!std::isfinite(rho) || rho <= 0)
        throw std::domain_error("rho must be finite and positive");
}

} // namespace detail

} // namespace dosusy
