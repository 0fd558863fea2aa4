#pragma once

// Arbitration between the printed closed forms (transcribed.hpp) and the
// reduction-built second solution (second_solution.hpp), with the ODE
// residual from oracle.hpp as the absolute referee for the V-series.

#include "domain.hpp"
#include "oracle.hpp"
#include "second_solution.hpp"
#include "superpotential.hpp"
#include "transcribed.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dosusy {

enum class Verdict { Match, ConstantRatio, StructuralMismatch };

/// Relative deviation (normalized by the reference's max magnitude) at or
/// below which two series are considered equal.
inline constexpr double AUDIT_MATCH_TOL = 1e-10;

struct Comparison {
    Verdict verdict = Verdict::StructuralMismatch;
    double fitted_ratio = std::numeric_limits<double>::quiet_NaN();
    double max_rel_dev = std::numeric_limits<double>::quiet_NaN();
    double max_rel_dev_after_ratio = std::numeric_limits<double>::quiet_NaN();
};

inline std::string verdict_text(const Comparison& c)
{
    switch (c.verdict) {
    case Verdict::Match: return "MATCH";
    case Verdict::StructuralMismatch: return "STRUCTURAL_MISMATCH";
    case Verdict::ConstantRatio: {
        char buf[64];
        std::snprintf(buf, sizeof buf, "CONSTANT_RATIO(%.12g)", c.fitted_ratio);
        return buf;
    }
    }
    return "?";
}

/// Least-squares ratio r minimizing |tested - r reference|, and the verdict.
inline Comparison compare_series(std::span<const double> tested, std::span<const double> reference,
                                 double tol = AUDIT_MATCH_TOL)
{
    if (tested.size() != reference.size() || tested.empty())
        throw std::invalid_argument("compare_series: need equal, non-empty inputs");
    double ab = 0, bb = 0, scale = 0, raw = 0;
    for (std::size_t i = 0; i < tested.size(); ++i) {
        ab += tested[i] * reference[i];
        bb += reference[i] * reference[i];
        scale = std::max(scale, std::abs(reference[i]));
        raw = std::max(raw, std::abs(tested[i] - reference[i]));
    }
    Comparison c;
    if (scale == 0) {
        // Reference identically zero: only an identically zero tested series matches.
        double t = 0;
        for (double v : tested)
            t = std::max(t, std::abs(v));
        c.max_rel_dev = t;
        c.verdict = t <= tol ? Verdict::Match : Verdict::StructuralMismatch;
        if (c.verdict == Verdict::Match)
            c.fitted_ratio = 1.0;
        return c;
    }
    c.fitted_ratio = ab / bb;
    double resid = 0;
    for (std::size_t i = 0; i < tested.size(); ++i)
        resid = std::max(resid, std::abs(tested[i] - c.fitted_ratio * reference[i]));
    c.max_rel_dev = raw / scale;
    c.max_rel_dev_after_ratio = resid / scale;
    if (c.max_rel_dev <= tol)
        c.verdict = Verdict::Match;
    else if (c.max_rel_dev_after_ratio <= tol)
        c.verdict = Verdict::ConstantRatio;
    else
        c.verdict = Verdict::StructuralMismatch;
    return c;
}

struct ComponentAudit {
    std::string name;
    Comparison comparison;
};

struct FormAudit {
    std::string form;    ///< which printed closed form
    std::string quantity; ///< "S" (antiderivative) or "V" (second solution)
    std::string reading; ///< product reading, where the printed notation is ambiguous
    Comparison overall;
    std::vector<ComponentAudit> components;
    std::optional<double> ode_residual_max; ///< V-series only
    std::optional<double> printed_log_coeff;
    std::optional<double> canonical_log_coeff;
};

struct AuditReport {
    Rational kappa;
    int l;
    std::vector<double> grid;
    std::vector<FormAudit> forms;
};

namespace detail {

template <class Fn>
std::vector<double> sample(const RadialGrid& grid, Fn&& fn)
{
    std::vector<double> out;
    out.reserve(grid.size());
    for (double rho : grid)
        out.push_back(fn(rho));
    return out;
}

/// x_i - x_0 for i >= 1.
inline std::vector<double> differences(const std::vector<double>& x)
{
    std::vector<double> d;
    for (std::size_t i = 1; i < x.size(); ++i)
        d.push_back(x[i] - x[0]);
    return d;
}

inline double ode_residual_max(const ModelParams& p, const oracle::RealFn& v, const RadialGrid& grid)
{
    return oracle::summarize(grid, [&](double rho) { return oracle::ode_residual(p, v, rho); }).max_abs;
}

} // namespace detail

inline constexpr int AUDIT_L_MAX = 5;

inline AuditReport audit(const ModelParams& p, const RadialGrid& grid)
{
    detail::require_series(p);
    if (p.l() > AUDIT_L_MAX)
        throw std::invalid_argument("audit: l must be <= " + std::to_string(AUDIT_L_MAX));
    if (grid.size() < 2)
        throw std::invalid_argument("audit: grid needs at least 2 points");

    const int l = p.l();
    const double pre = s_prefactor(p);
    const CosecantSeries series = series_for(p);
    auto alpha_of = [&](double rho) { return rho_to_alpha(p, rho); };

    AuditReport report{p.kappa_exact(), l, grid.points(), {}};

    const auto canon_s = detail::sample(grid, [&](double rho) { return s_integral(p, alpha_of(rho)); });
    const auto canon_v = detail::sample(grid, [&](double rho) { return v_second(p, rho); });

    if (p.series_case() == SeriesCase::MaxwellFisheye) {
        FormAudit s;
        s.form = "fisheye_antiderivative";
        s.quantity = "S";
        const auto printed = detail::sample(grid, [&](double rho) { return transcribed::s1(l, alpha_of(rho)); });
        s.overall = compare_series(detail::differences(printed), detail::differences(canon_s));
        report.forms.push_back(std::move(s));

        for (auto reading : {transcribed::ProductReading::AsPrinted, transcribed::ProductReading::FisheyeSeriesForm}) {
            FormAudit v;
            v.form = "fisheye_second_solution";
            v.quantity = "V";
            v.reading = reading == transcribed::ProductReading::AsPrinted ? "as_printed" : "fisheye_series_product";
            const oracle::RealFn fn = [&, reading](double rho) { return transcribed::v1(l, alpha_of(rho), reading); };
            v.overall = compare_series(detail::sample(grid, fn), canon_v);
            v.ode_residual_max = detail::ode_residual_max(p, fn, grid);
            report.forms.push_back(std::move(v));
        }
        return report;
    }

    // Aufbau: both printed forms carry a logarithmic part that is audited separately.
    {
        FormAudit s;
        s.form = "aufbau_antiderivative";
        s.quantity = "S";
        const auto printed = detail::sample(grid, [&](double rho) { return transcribed::s_half(l, alpha_of(rho)); });
        s.overall = compare_series(detail::differences(printed), detail::differences(canon_s));

        const auto printed_cos
            = detail::sample(grid, [&](double rho) { return transcribed::s_half_split(l, alpha_of(rho)).cos_part; });
        const auto canon_cos = detail::sample(grid, [&](double rho) { return pre * series.cos_part(alpha_of(rho)); });
        s.components.push_back({"cos_part", compare_series(printed_cos, canon_cos)});

        s.printed_log_coeff = transcribed::s_half_split(l, AlphaAngle(1.0)).log_coeff;
        s.canonical_log_coeff = pre * series.log_coeff;
        const double pl[] = {*s.printed_log_coeff};
        const double cl[] = {*s.canonical_log_coeff};
        s.components.push_back({"log_coefficient", compare_series(pl, cl)});
        report.forms.push_back(std::move(s));
    }
    {
        FormAudit v;
        v.form = "aufbau_second_solution";
        v.quantity = "V";
        const oracle::RealFn fn = [&](double rho) { return transcribed::v_half(l, alpha_of(rho)); };
        v.overall = compare_series(detail::sample(grid, fn), canon_v);
        v.ode_residual_max = detail::ode_residual_max(p, fn, grid);

        const auto printed_cos
            = detail::sample(grid, [&](double rho) { return transcribed::v_half_split(l, alpha_of(rho)).cos_part; });
        const auto canon_cos = detail::sample(
            grid, [&](double rho) { return -f_squared(p, rho) * pre * series.cos_part(alpha_of(rho)); });
        v.components.push_back({"cos_part", compare_series(printed_cos, canon_cos)});

        const auto printed_log
            = detail::sample(grid, [&](double rho) { return transcribed::v_half_split(l, alpha_of(rho)).log_part; });
        const auto canon_log = detail::sample(
            grid, [&](double rho) { return -f_squared(p, rho) * pre * series.log_part(alpha_of(rho)); });
        v.components.push_back({"log_part", compare_series(printed_log, canon_log)});
        report.forms.push_back(std::move(v));
    }
    return report;
}

} // namespace dosusy
