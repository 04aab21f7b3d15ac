#include "cfs/output.hpp"

#include <cmath>
#include <cstdio>

namespace cfs {

namespace {

void metadata(std::ostream& out, const RunConfig& cfg, const Params& p) {
    out << "# m=" << format_number(p.mass) << "\n";
    out << "# epsilon=" << format_number(p.epsilon) << "\n";
    out << "# c=" << format_number(p.c) << "\n";
    out << "# rel_tol=" << format_number(cfg.quad.rel_tol) << "\n";
    out << "# domain_scale=" << format_number(cfg.quad.domain_scale) << "\n";
    out << "# max_subdivisions=" << cfg.quad.max_subdivisions << "\n";
    out << "# mode=" << (cfg.mode == MaxwellMode::frozen ? "frozen" : "exact") << "\n";
}

}  // namespace

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15e", x);
    return buf;
}

std::vector<double> grid_axis(int n, double extent, double eps) {
    if (n == 1) return {0.0};
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = eps * extent * (-1.0 + 2.0 * i / (n - 1));
    return v;
}

void write_grid(std::ostream& out, const RunConfig& cfg) {
    const Params& p = cfg.params;
    const auto ts = grid_axis(cfg.grid.n_t, cfg.grid.extent, p.epsilon);
    const auto rs = grid_axis(cfg.grid.n_r, cfg.grid.extent, p.epsilon);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (i > 0) out << "\n";
        for (double r : rs) {
            const auto xi = RegularizedXi::make(ts[i], {0.0, 0.0, r}, p.epsilon);
            out << format_number(ts[i]) << " " << format_number(r) << " "
                << format_number(std::norm(t_family(-1, xi, p))) << "\n";
        }
    }
}

void write_coefficients(std::ostream& out, const RunConfig& cfg, const CoefficientTable& table) {
    metadata(out, cfg, table.params);
    if (std::isfinite(table.tail_change)) out << "# tail_change=" << format_number(table.tail_change) << "\n";
    out << "# two_sector_zeroth_axial_factor=5i/6 (a competing 5i/2 form is not used)\n";
    out << "name,value,error_estimate\n";
    if (cfg.coefficients.empty()) return;
    for (auto c : cfg.coefficients) {
        const auto& v = table.get(c, Family::dirac);
        out << coefficient_name(c) << "," << format_number(v.value) << "," << format_number(v.error) << "\n";
    }
    for (auto c : cfg.coefficients) {
        const auto& v = table.get(c, Family::maxwell);
        out << "maxwell_" << coefficient_name(c) << "," << format_number(v.value) << "," << format_number(v.error)
            << "\n";
    }
    const auto a = coupling_alpha(table);
    const auto& d0 = table.get(Coefficient::C0, Family::dirac);
    const auto& m0 = table.get(Coefficient::C0, Family::maxwell);
    const double alpha_err = std::abs(a.alpha) * (d0.error / std::abs(d0.value) + m0.error / std::abs(m0.value));
    out << "alpha," << format_number(a.alpha) << "," << format_number(alpha_err) << "\n";
    out << "ratio_spread," << format_number(a.ratio_spread) << "," << format_number(0.0) << "\n";
}

void write_scan(std::ostream& out, const RunConfig& cfg, const std::vector<ScanRow>& rows) {
    metadata(out, cfg, cfg.params);
    out << "# columns: epsilon, the nine Dirac-family coefficients, alpha = C0 Dirac/Maxwell ratio,\n";
    out << "#          ratio_spread over the five one-sector ratios, peak = |T^(-1)(0,0)|^2\n";
    out << "epsilon";
    for (auto c : kAllCoefficients) out << "," << coefficient_name(c);
    out << ",alpha,ratio_spread,peak\n";
    std::vector<double> eps, peak;
    for (const auto& r : rows) {
        out << format_number(r.epsilon);
        for (auto c : kAllCoefficients) out << "," << format_number(r.table.get(c).value);
        out << "," << format_number(r.alpha.alpha) << "," << format_number(r.alpha.ratio_spread) << ","
            << format_number(r.peak) << "\n";
        eps.push_back(r.epsilon);
        peak.push_back(r.peak);
    }
    if (rows.size() >= 2) out << "# peak_slope=" << format_number(loglog_slope(eps, peak)) << "\n";
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace cfs
