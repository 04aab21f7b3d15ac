#include "cfs/coeffs.hpp"
#include "cfs/config.hpp"
#include "cfs/output.hpp"
#include "cfs/verify.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

using namespace cfs;

namespace {

enum Exit { ok = 0, other = 1, config_error = 2, quadrature_failure = 3, verification_failure = 4 };

struct Overrides {
    std::string config_path;
    std::string out;
    std::optional<double> eps, mass, c, tol;
    std::optional<int> grid_n;
    std::string fault;
    bool verbose = false;
};

RunConfig build_config(const Overrides& o) {
    RunConfig cfg = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
    if (o.eps) cfg.params.epsilon = *o.eps;
    if (o.mass) cfg.params.mass = *o.mass;
    if (o.c) cfg.params.c = *o.c;
    if (o.tol) cfg.quad.rel_tol = *o.tol;
    if (o.grid_n) cfg.grid.n_t = cfg.grid.n_r = *o.grid_n;
    if (!o.out.empty()) cfg.output = o.out;
    if (o.verbose) cfg.verbose = true;
    validate_config(cfg);
    return cfg;
}

// Writes to cfg.output, or stdout when empty.
void emit(const RunConfig& cfg, const std::function<void(std::ostream&)>& body) {
    if (cfg.output.empty()) {
        body(std::cout);
        return;
    }
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + cfg.output);
    body(f);
    if (!f) throw std::runtime_error("write failed for " + cfg.output);
}

int cmd_alpha(const RunConfig& cfg) {
    const auto table = coefficient_table(cfg.params, cfg.quad, cfg.mode, false);
    const auto a = coupling_alpha(table);
    emit(cfg, [&](std::ostream& out) {
        out << "alpha=" << format_number(a.alpha) << "\n";
        out << "inverse_alpha=" << format_number(1.0 / a.alpha) << "\n";
        out << "ratio_spread=" << format_number(a.ratio_spread) << "\n";
        static const char* names[] = {"C0", "Ct_PS", "Ct_PB", "Cr_PS", "Cr_PB"};
        for (int i = 0; i < 5; ++i) out << "ratio_" << names[i] << "=" << format_number(a.ratios[i]) << "\n";
        out << "frozen_ratio_inverse=" << format_number(1.0 / frozen_ratio(cfg.params)) << "\n";
        out << "closed_form_alpha_196=" << format_number(alpha_closed_form(cfg.params.c)) << "\n";
    });
    return ok;
}

int cmd_verify(const RunConfig& cfg, const std::string& fault) {
    const auto checks = run_verification(cfg, fault);
    print_checks(std::cout, checks, cfg.verbose);
    if (cfg.output.empty()) {
        std::cout << "\n";
        write_checks_csv(std::cout, checks);
    } else {
        emit(cfg, [&](std::ostream& out) { write_checks_csv(out, checks); });
    }
    for (const auto& c : checks)
        if (!c.pass) return verification_failure;
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuum-limit kernels, structure functions and current coefficients"};
    app.require_subcommand(1);
    Overrides o;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "key=value configuration file");
        sub->add_option("--out", o.out, "output file (default stdout)");
        sub->add_option("--eps", o.eps, "regularization length");
        sub->add_option("--mass", o.mass, "fermion mass");
        sub->add_option("--c", o.c, "constant replacing T^(1)");
        sub->add_option("--tol", o.tol, "relative quadrature tolerance");
        sub->add_option("--grid-n", o.grid_n, "grid points per axis");
        sub->add_flag("--verbose", o.verbose, "print measured values for every check");
    };
    auto* grid = app.add_subcommand("grid", "|T^(-1)(t, r)|^2 on a grid (gnuplot format)");
    auto* coeffs = app.add_subcommand("coeffs", "current coefficients as CSV");
    auto* alpha = app.add_subcommand("alpha", "coupling constant from the coefficient ratios");
    auto* scan = app.add_subcommand("scan", "coefficients and alpha for each epsilon in eps_list");
    auto* verify = app.add_subcommand("verify", "run the oracle suites");
    for (auto* s : {grid, coeffs, alpha, scan, verify}) add_common(s);
#ifdef CFS_FAULT_INJECTION
    verify->add_option("--fault-inject", o.fault, "test hook: fa_parity");
#endif

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    RunConfig cfg;
    try {
        cfg = build_config(o);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_error;
    }

    try {
        if (grid->parsed()) {
            emit(cfg, [&](std::ostream& out) { write_grid(out, cfg); });
        } else if (coeffs->parsed()) {
            const auto table = coefficient_table(cfg.params, cfg.quad, cfg.mode, cfg.tail_check);
            emit(cfg, [&](std::ostream& out) { write_coefficients(out, cfg, table); });
        } else if (alpha->parsed()) {
            return cmd_alpha(cfg);
        } else if (scan->parsed()) {
            const auto rows = epsilon_scan(cfg.eps_list, cfg.params, cfg.quad);
            emit(cfg, [&](std::ostream& out) { write_scan(out, cfg, rows); });
        } else if (verify->parsed()) {
            return cmd_verify(cfg, o.fault);
        }
    } catch (const QuadratureError& e) {
        std::cerr << "quadrature failure: " << e.what() << "\n";
        return quadrature_failure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return other;
    }
    return ok;
}
