#pragma once

// Command-line front end: tabulate, verify, audit, sweep.
// Requires CLI11, nlohmann/json and fmt in addition to the core headers.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 I/O error.

#include "audit.hpp"
#include "domain.hpp"
#include "second_solution.hpp"
#include "superpotential.hpp"
#include "verify.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

namespace dosusy::cli {

enum ExitCode : int { Pass = 0, VerificationFailure = 1, UsageError = 2, IoError = 3 };

enum class Command { Tabulate, Verify, Audit, Sweep };
enum class Format { Csv, Json };

struct RunConfig {
    Command command = Command::Tabulate;
    Rational kappa{1};
    int l_first = 0;
    int l_last = 0;
    double lambda = 0.0;
    double rho_min = 0.1;
    double rho_max = 10.0;
    int points = 200;
    Format format = Format::Csv;
    std::string output; ///< empty: standard output
    Fault fault = Fault::None;
};

class BadUsage : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Fixed 17-significant-digit form, lossless for doubles.
inline std::string num(double x) { return fmt::format("{:.17g}", x); }

/// "3" or "0..5".
inline std::pair<int, int> parse_l_spec(const std::string& text)
{
    auto to_int = [&](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            throw BadUsage("invalid l: '" + text + "'");
        }
        if (used != s.size())
            throw BadUsage("invalid l: '" + text + "'");
        return v;
    };
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const int v = to_int(text);
        return {v, v};
    }
    const int a = to_int(text.substr(0, dots));
    const int b = to_int(text.substr(dots + 2));
    if (b < a)
        throw BadUsage("empty l range: '" + text + "'");
    return {a, b};
}

inline ModelParams params_for(const RunConfig& cfg, int l)
{
    try {
        auto p = validate_params(cfg.kappa, l);
        if (!p.has_series())
            throw BadUsage("kappa must be 1 or 1/2 for this command, got " + cfg.kappa.str());
        return p;
    } catch (const BadUsage&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw BadUsage(e.what());
    }
}

inline RadialGrid grid_for(const RunConfig& cfg)
{
    if (!(cfg.rho_min > 0) || !(cfg.rho_max > cfg.rho_min) || !std::isfinite(cfg.rho_max))
        throw BadUsage("need 0 < rho-min < rho-max");
    if (cfg.points < 2)
        throw BadUsage("need --points >= 2");
    return RadialGrid::log_spaced(cfg.rho_min, cfg.rho_max, cfg.points);
}

// ---------------------------------------------------------------- tabulate

inline const std::vector<std::string>& tabulate_columns()
{
    static const std::vector<std::string> cols
        = {"rho", "alpha", "w1", "w1_prime", "u_eff", "f", "f_sq", "S", "V", "V_lambda", "W2"};
    return cols;
}

inline int cmd_tabulate(const RunConfig& cfg, std::ostream& out, std::ostream&)
{
    const ModelParams p = params_for(cfg, cfg.l_first);
    const RadialGrid grid = grid_for(cfg);
    const LambdaParam lam(cfg.lambda);

    if (cfg.format == Format::Csv) {
        const auto& cols = tabulate_columns();
        for (std::size_t i = 0; i < cols.size(); ++i)
            out << (i ? "," : "") << cols[i];
        out << '\n';
        for (double rho : grid) {
            const auto e = evaluate_second_solution(p, lam, rho);
            out << num(rho) << ',' << num(e.alpha) << ',' << num(w1(p, rho)) << ',' << num(w1_prime(p, rho)) << ','
                << num(u_eff(p, rho)) << ',' << num(f_radial(p, rho)) << ',' << num(e.f_sq) << ',' << num(e.S)
                << ',' << num(e.V) << ',' << num(e.V_lambda) << ',' << (e.W2 ? num(*e.W2) : "SINGULAR") << '\n';
        }
        return Pass;
    }

    nlohmann::ordered_json doc;
    doc["kappa"] = cfg.kappa.str();
    doc["l"] = p.l();
    doc["lambda"] = cfg.lambda;
    doc["columns"] = tabulate_columns();
    auto rows = nlohmann::ordered_json::array();
    for (double rho : grid) {
        const auto e = evaluate_second_solution(p, lam, rho);
        nlohmann::ordered_json row = nlohmann::ordered_json::array(
            {rho, e.alpha, w1(p, rho), w1_prime(p, rho), u_eff(p, rho), f_radial(p, rho), e.f_sq, e.S, e.V,
             e.V_lambda});
        if (e.W2)
            row.push_back(*e.W2);
        else
            row.push_back("SINGULAR");
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << '\n';
    return Pass;
}

// ---------------------------------------------------------------- verify

inline void write_checks_csv(std::ostream& out, const std::vector<CheckResult>& checks)
{
    out << "check,max_abs,mean_abs,argmax_rho,n_points,tolerance,status\n";
    for (const auto& c : checks)
        out << c.name << ',' << num(c.summary.max_abs) << ',' << num(c.summary.mean_abs) << ','
            << num(c.summary.argmax_rho) << ',' << c.summary.n_points << ',' << num(c.tolerance) << ','
            << (c.pass ? "pass" : "FAIL") << '\n';
}

inline nlohmann::ordered_json checks_json(const std::vector<CheckResult>& checks)
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : checks)
        arr.push_back({{"check", c.name},
                       {"max_abs", c.summary.max_abs},
                       {"mean_abs", c.summary.mean_abs},
                       {"argmax_rho", c.summary.argmax_rho},
                       {"n_points", c.summary.n_points},
                       {"tolerance", c.tolerance},
                       {"pass", c.pass}});
    return arr;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const ModelParams p = params_for(cfg, cfg.l_first);
    const RadialGrid grid = grid_for(cfg);
    const auto checks = run_checks(p, LambdaParam(cfg.lambda), grid, cfg.fault);
    const bool ok = all_pass(checks);

    if (cfg.format == Format::Csv) {
        write_checks_csv(out, checks);
    } else {
        nlohmann::ordered_json doc;
        doc["kappa"] = cfg.kappa.str();
        doc["l"] = p.l();
        doc["lambda"] = cfg.lambda;
        doc["fault"] = cfg.fault == Fault::ScaleV ? "scale-v" : "none";
        doc["checks"] = checks_json(checks);
        doc["pass"] = ok;
        out << doc.dump(2) << '\n';
    }
    for (const auto& c : checks)
        err << fmt::format("{:<30} max {:<12.4g} tol {:<8.1g} {}\n", c.name, c.summary.max_abs, c.tolerance,
                           c.pass ? "pass" : "FAIL");
    err << (ok ? "verify: all checks pass\n" : "verify: FAILED\n");
    return ok ? Pass : VerificationFailure;
}

// ---------------------------------------------------------------- audit

inline nlohmann::ordered_json comparison_json(const Comparison& c)
{
    auto finite_or_null = [](double x) -> nlohmann::ordered_json {
        if (std::isfinite(x))
            return x;
        return nullptr;
    };
    return {{"verdict", verdict_text(c)},
            {"fitted_ratio", finite_or_null(c.fitted_ratio)},
            {"max_rel_dev", finite_or_null(c.max_rel_dev)},
            {"max_rel_dev_after_ratio", finite_or_null(c.max_rel_dev_after_ratio)}};
}

inline nlohmann::ordered_json audit_json(const AuditReport& r, double canonical_ode_max)
{
    nlohmann::ordered_json doc;
    doc["kappa"] = r.kappa.str();
    doc["l"] = r.l;
    doc["match_tolerance"] = AUDIT_MATCH_TOL;
    doc["canonical_ode_residual_max"] = canonical_ode_max;
    auto forms = nlohmann::ordered_json::array();
    for (const auto& f : r.forms) {
        nlohmann::ordered_json j;
        j["form"] = f.form;
        j["quantity"] = f.quantity;
        if (!f.reading.empty())
            j["reading"] = f.reading;
        auto c = comparison_json(f.overall);
        for (auto it = c.begin(); it != c.end(); ++it)
            j[it.key()] = it.value();
        if (f.ode_residual_max)
            j["ode_residual_max"] = *f.ode_residual_max;
        if (f.printed_log_coeff)
            j["printed_log_coeff"] = *f.printed_log_coeff;
        if (f.canonical_log_coeff)
            j["canonical_log_coeff"] = *f.canonical_log_coeff;
        if (!f.components.empty()) {
            auto comps = nlohmann::ordered_json::array();
            for (const auto& comp : f.components) {
                auto cj = comparison_json(comp.comparison);
                cj["component"] = comp.name;
                comps.push_back(std::move(cj));
            }
            j["components"] = std::move(comps);
        }
        forms.push_back(std::move(j));
    }
    doc["forms"] = std::move(forms);
    doc["grid"] = r.grid;
    return doc;
}

inline int cmd_audit(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const ModelParams p = params_for(cfg, cfg.l_first);
    if (p.l() > AUDIT_L_MAX)
        throw BadUsage("audit needs l <= " + std::to_string(AUDIT_L_MAX));
    const RadialGrid grid = grid_for(cfg);
    const AuditReport report = audit(p, grid);

    // The referee itself must hold, otherwise the verdicts mean nothing.
    const oracle::RealFn v = [&](double rho) { return v_second(p, rho); };
    const double ode_max = oracle::summarize(grid, [&](double rho) { return oracle::ode_residual(p, v, rho); }).max_abs;
    const bool referee_ok = ode_max <= Tolerances{}.ode;

    out << audit_json(report, ode_max).dump(2) << '\n';

    err << fmt::format("audit kappa={} l={} ({} grid points)\n", cfg.kappa.str(), p.l(), grid.size());
    for (const auto& f : report.forms) {
        err << fmt::format("  {:<26} {:<24} {}", f.form, f.reading, verdict_text(f.overall));
        if (f.ode_residual_max)
            err << fmt::format("  (ODE residual max {:.3g})", *f.ode_residual_max);
        err << '\n';
        for (const auto& c : f.components)
            err << fmt::format("      {:<20} {}\n", c.name, verdict_text(c.comparison));
    }
    if (!referee_ok)
        err << fmt::format("audit: canonical solution fails the ODE check ({:.3g})\n", ode_max);
    return referee_ok ? Pass : VerificationFailure;
}

// ---------------------------------------------------------------- sweep

inline int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    std::vector<ModelParams> params;
    for (int l = cfg.l_first; l <= cfg.l_last; ++l)
        params.push_back(params_for(cfg, l));
    const RadialGrid grid = grid_for(cfg);
    const LambdaParam lam(cfg.lambda);

    std::vector<std::future<std::vector<CheckResult>>> jobs;
    for (const auto& p : params)
        jobs.push_back(std::async(std::launch::async, [&grid, lam, fault = cfg.fault, p] {
            return run_checks(p, lam, grid, fault);
        }));
    std::vector<std::vector<CheckResult>> results;
    for (auto& j : jobs)
        results.push_back(j.get());

    bool ok = true;
    if (cfg.format == Format::Csv) {
        out << "kappa,l,lambda";
        for (const auto& c : results.front())
            out << ',' << c.name;
        out << ",status\n";
        for (std::size_t i = 0; i < results.size(); ++i) {
            const bool row_ok = all_pass(results[i]);
            ok = ok && row_ok;
            out << cfg.kappa.str() << ',' << params[i].l() << ',' << num(cfg.lambda);
            for (const auto& c : results[i])
                out << ',' << num(c.summary.max_abs);
            out << ',' << (row_ok ? "pass" : "FAIL") << '\n';
        }
    } else {
        auto rows = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < results.size(); ++i) {
            const bool row_ok = all_pass(results[i]);
            ok = ok && row_ok;
            rows.push_back({{"kappa", cfg.kappa.str()},
                            {"l", params[i].l()},
                            {"lambda", cfg.lambda},
                            {"checks", checks_json(results[i])},
                            {"pass", row_ok}});
        }
        out << rows.dump(2) << '\n';
    }
    for (std::size_t i = 0; i < results.size(); ++i)
        err << fmt::format("sweep kappa={} l={}: {}\n", cfg.kappa.str(), params[i].l(),
                           all_pass(results[i]) ? "pass" : "FAIL");
    return ok ? Pass : VerificationFailure;
}

// ---------------------------------------------------------------- driver

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        switch (cfg.command) {
        case Command::Tabulate: return cmd_tabulate(cfg, out, err);
        case Command::Verify: return cmd_verify(cfg, out, err);
        case Command::Audit: return cmd_audit(cfg, out, err);
        case Command::Sweep: return cmd_sweep(cfg, out, err);
        }
    } catch (const BadUsage& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    }
    return UsageError;
}

/// Parses argv into a RunConfig. Returns an exit code instead when parsing
/// ends the program (help, usage error).
inline std::variant<RunConfig, int> parse_args(int argc, const char* const* argv, std::ostream& out,
                                               std::ostream& err)
{
    CLI::App app{"Singular superpotentials for Demkov-Ostrovsky potentials: tables, residual checks, audit"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string kappa_text = "1";
    std::string l_text = "0";
    std::string format_text = "csv";
    std::string fault_text = "none";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--kappa", kappa_text, "DO index: 1, 1/2 or 0.5")->capture_default_str();
        sub->add_option("-l,--l", l_text, "centrifugal number (sweep: range such as 0..5)")->capture_default_str();
        sub->add_option("--lambda", cfg.lambda, "family parameter")->capture_default_str();
        sub->add_option("--rho-min", cfg.rho_min, "smallest grid radius")->capture_default_str();
        sub->add_option("--rho-max", cfg.rho_max, "largest grid radius")->capture_default_str();
        sub->add_option("--points", cfg.points, "number of log-spaced grid points")->capture_default_str();
        sub->add_option("--format", format_text, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        sub->add_option("-o,--output", cfg.output, "output file (default: standard output)");
    };

    auto* tab = app.add_subcommand("tabulate", "tabulate W1, f, S, V, V_lambda and W on a grid");
    auto* ver = app.add_subcommand("verify", "run the residual and quadrature checks");
    auto* aud = app.add_subcommand("audit", "compare printed closed forms against the reduction-built series");
    auto* swp = app.add_subcommand("sweep", "run verify over a range of l");
    for (auto* s : {tab, ver, aud, swp})
        add_common(s);
    for (auto* s : {ver, swp})
        s->add_option("--fault", fault_text, "inject a fault for harness self-tests")
            ->check(CLI::IsMember({"none", "scale-v"}))
            ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : static_cast<int>(UsageError);
    }

    try {
        cfg.command = tab->parsed() ? Command::Tabulate
                    : ver->parsed() ? Command::Verify
                    : aud->parsed() ? Command::Audit
                                    : Command::Sweep;
        cfg.kappa = Rational::parse(kappa_text);
        std::tie(cfg.l_first, cfg.l_last) = parse_l_spec(l_text);
        if (cfg.command != Command::Sweep && cfg.l_first != cfg.l_last)
            throw BadUsage("an l range is only accepted by sweep");
        cfg.format = format_text == "json" ? Format::Json : Format::Csv;
        cfg.fault = fault_text == "scale-v" ? Fault::ScaleV : Fault::None;
        if (!std::isfinite(cfg.lambda))
            throw BadUsage("lambda must be finite");
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(UsageError);
    }
    return cfg;
}

/// Full entry point: parse, run, write to cfg.output or `out`.
inline int main_with(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    auto parsed = parse_args(argc, argv, out, err);
    if (auto* code = std::get_if<int>(&parsed))
        return *code;
    const RunConfig& cfg = std::get<RunConfig>(parsed);
    if (cfg.output.empty())
        return run(cfg, out, err);

    std::ostringstream buffer;
    const int code = run(cfg, buffer, err);
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file || !(file << buffer.str()) || !file.flush()) {
        err << "error: cannot write " << cfg.output << '\n';
        return IoError;
    }
    return code;
}

} // namespace dosusy::cli
