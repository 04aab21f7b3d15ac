#include "cfs/verify.hpp"

#include "cfs/chain.hpp"
#include "cfs/currents.hpp"
#include "cfs/moments.hpp"
#include "cfs/output.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace cfs {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel(cplx a, cplx b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng); }
    Vec3 unit() {
        std::normal_distribution<double> n;
        const double x = n(eng), y = n(eng), z = n(eng), s = std::sqrt(x * x + y * y + z * z);
        return {x / s, y / s, z / s};
    }
    Spinor spinor() {
        Spinor v;
        for (int i = 0; i < 4; ++i) v[i] = cplx(uniform(-1, 1), uniform(-1, 1));
        return v;
    }
    RegularizedXi xi(double t_range, double r_lo, double r_hi, double eps) {
        const double t = uniform(-t_range, t_range), r = uniform(r_lo, r_hi);
        const auto d = unit();
        return RegularizedXi::make(t, {r * d[0], r * d[1], r * d[2]}, eps);
    }
};

double pairing_error(const SpinMatrix& a, cplx lp, cplx lm) {
    Eigen::ComplexEigenSolver<SpinMatrix> es(a, false);
    std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + 4);
    const double scale = std::max(std::abs(lp), std::abs(lm));
    double worst = 0.0;
    for (cplx target : {lp, lp, lm, lm}) {
        auto it = std::min_element(ev.begin(), ev.end(),
                                   [&](cplx x, cplx y) { return std::abs(x - target) < std::abs(y - target); });
        worst = std::max(worst, std::abs(*it - target) / scale);
        ev.erase(it);
    }
    return worst;
}

RegularizedXi shifted(const RegularizedXi& xi, int mu, double s) {
    RegularizedXi z = xi;
    if (mu == 0)
        z.xi0 -= s;
    else
        z.spatial[mu - 1] -= s;
    return z;
}

Polynomial random_quadratic(Rng& g) {
    Polynomial p = Polynomial::constant(2.0);
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; a + b <= 2; ++b)
            for (int c = 0; a + b + c <= 2; ++c)
                for (int d = 0; a + b + c + d <= 2; ++d)
                    if (a + b + c + d > 0) p = p + Polynomial::monomial(g.uniform(-1, 1), {a, b, c, d});
    return p;
}

double slope_of(double e_coarse, double e_fine, double ratio) { return std::log(e_coarse / e_fine) / std::log(ratio); }

}  // namespace

KernelOracleReport measure_kernel_oracle(const Params& p, int points, std::uint64_t seed, double range) {
    const auto t0 = Clock::now();
    Rng g(seed);
    KernelOracleReport rep;
    const double e = p.epsilon;
    for (int k = 0; k < points; ++k) {
        const auto xi = g.xi(range * e, 0.0, range * e, e);
        const double r = xi.r();
        const auto s = momentum_oracle(OracleComponent::scalar, xi, p, 1e-10).value;
        const auto v0 = momentum_oracle(OracleComponent::vector0, xi, p, 1e-10).value;
        const auto vr = momentum_oracle(OracleComponent::vector_r, xi, p, 1e-10).value;
        rep.t0 = std::max(rep.t0, rel(s, t_family(0, xi, p)));
        rep.tm1 = std::max(rep.tm1, rel(v0 / (cplx(0, 0.5) * xi.xi0), t_family(-1, xi, p)));
        SpinMatrix oracle = p.mass * s * identity4() + v0 * gamma(0);
        if (r > 0.0) {
            const auto d = xi.direction();
            for (int i = 0; i < 3; ++i) oracle += vr * d[i] * gamma(i + 1);
        }
        const SpinMatrix closed = fermionic_projector(xi, p);
        rep.projector = std::max(rep.projector, (oracle - closed).norm() / closed.norm());
    }
    rep.seconds = seconds_since(t0);
    return rep;
}

SpectralReport measure_spectral(const Params& p, int points, std::uint64_t seed, double eps_lo) {
    const auto t0 = Clock::now();
    Rng g(seed);
    SpectralReport rep;
    const double e = p.epsilon;
    for (int k = 0; k < points; ++k) {
        const auto xi = g.xi(10 * e, 1e-2 * e, 10 * e, e);
        const SpinMatrix a = closed_chain(xi, p);
        const auto [lp, lm] = eigenvalues_closed_form(chain_components(a));
        rep.pairing = std::max(rep.pairing, pairing_error(a, lp, lm));
    }
    // Relative error of the continuum eigenvalues at fixed (t/eps, r/eps), fitted in eps.
    const std::array<std::pair<double, double>, 3> shape{{{0.5, 1.3}, {0.0, 1.0}, {1.5, 0.7}}};
    double sum = 0.0;
    for (auto [u, v] : shape) {
        std::vector<double> xs, ys;
        for (int i = 0; i <= 4; ++i) {
            Params q = p;
            q.epsilon = eps_lo * std::pow(10.0, i / 4.0) / p.mass;
            const auto xi = RegularizedXi::make(u * q.epsilon, {0.0, 0.0, v * q.epsilon}, q.epsilon);
            const auto [lp, lm] = eigenvalues_closed_form(chain_components(closed_chain(xi, q)));
            const auto sd = continuum_spectral(xi, q);
            const cplx exact = std::abs(sd.lambda_plus - lp) < std::abs(sd.lambda_plus - lm) ? lp : lm;
            xs.push_back(q.epsilon);
            ys.push_back(std::abs(sd.lambda_plus - exact) / std::abs(exact));
        }
        sum += loglog_slope(xs, ys);
    }
    rep.continuum_slope = sum / shape.size();
    rep.seconds = seconds_since(t0);
    return rep;
}

ProjectorReport measure_projectors(const Params& p, int points, std::uint64_t seed) {
    Rng g(seed);
    ProjectorReport rep;
    const double e = p.epsilon;
    for (int k = 0; k < points; ++k) {
        const auto sd = continuum_spectral(g.xi(5 * e, 1e-2 * e, 5 * e, e), p);
        SpinMatrix sum = SpinMatrix::Zero();
        for (int i = 0; i < 4; ++i) {
            const SpinMatrix& a = sd.projectors[i];
            sum += a;
            rep.idempotency = std::max(rep.idempotency, max_abs(a * a - a));
            rep.trace = std::max(rep.trace, std::abs(a.trace() - 1.0));
            rep.chirality = std::max({rep.chirality, max_abs(chi_left() * a - a * chi_left()),
                                      max_abs(chi_right() * a - a * chi_right())});
            for (int j = 0; j < 4; ++j)
                if (j != i) rep.orthogonality = std::max(rep.orthogonality, max_abs(a * sd.projectors[j]));
        }
        rep.completeness = std::max(rep.completeness, max_abs(sum - identity4()));
    }
    return rep;
}

namespace {

cplx kg_box(const Polynomial& a, const Point4& x, const RegularizedXi& xi, const Params& p, double h) {
    const auto tr = exact_truncation(a);
    auto dt = [&](int mu, double s) {
        Point4 xs = x;
        xs[mu] += s;
        return delta_t(a, xs, shifted(xi, mu, s), p, tr);
    };
    const cplx c = delta_t(a, x, xi, p, tr);
    cplx box = 0.0;
    for (int mu = 0; mu < 4; ++mu) box += eta(mu, mu) * (dt(mu, h) - 2.0 * c + dt(mu, -h)) / (h * h);
    return box;
}

double kg_relative(const Polynomial& a, const Point4& x, const RegularizedXi& xi, const Params& p, cplx box) {
    const cplx c = delta_t(a, x, xi, p, exact_truncation(a));
    const cplx src = a.evaluate(x) * t_family(0, xi, p);
    return std::abs(box + p.mass * p.mass * c + src) / std::abs(src);
}

}  // namespace

double klein_gordon_residual(const Polynomial& a, const Point4& x, const RegularizedXi& xi, const Params& p,
                             double h) {
    return kg_relative(a, x, xi, p, kg_box(a, x, xi, p, h));
}

double klein_gordon_residual_extrapolated(const Polynomial& a, const Point4& x, const RegularizedXi& xi,
                                          const Params& p, double h) {
    const cplx coarse = kg_box(a, x, xi, p, h), fine = kg_box(a, x, xi, p, h / 2);
    return kg_relative(a, x, xi, p, (4.0 * fine - coarse) / 3.0);
}

LightconeReport measure_lightcone(const Params& p, int samples, std::uint64_t seed) {
    Rng g(seed);
    const double e = p.epsilon;
    LightconeReport rep;
    rep.kg_slope_min = rep.ladder_slope_min = 1e300;
    rep.kg_slope_max = rep.ladder_slope_max = -1e300;
    for (int k = 0; k < samples; ++k) {
        const Polynomial a = random_quadratic(g);
        const Point4 x{g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1)};
        const auto xi = g.xi(3 * e, 0.1 * e, 3 * e, e);
        const double r25 = klein_gordon_residual(a, x, xi, p, e / 25);
        const double r50 = klein_gordon_residual(a, x, xi, p, e / 50);
        const double r100 = klein_gordon_residual(a, x, xi, p, e / 100);
        const double s = slope_of(r25, r100, 4.0);
        rep.kg_slope_min = std::min(rep.kg_slope_min, s);
        rep.kg_slope_max = std::max(rep.kg_slope_max, s);
        rep.kg_residual = std::max(rep.kg_residual, r50);
        rep.kg_extrapolated =
            std::max(rep.kg_extrapolated, klein_gordon_residual_extrapolated(a, x, xi, p, e / 50));
    }
    for (int n = -2; n <= 2; ++n) {
        const auto xi = g.xi(3 * e, 0.1 * e, 3 * e, e);
        const auto c = ladder_residuals(n, xi, p, e / 25);
        const auto m = ladder_residuals(n, xi, p, e / 50);
        const auto f = ladder_residuals(n, xi, p, e / 100);
        for (double s : {slope_of(c.first, f.first, 4.0), slope_of(c.second, f.second, 4.0)}) {
            rep.ladder_slope_min = std::min(rep.ladder_slope_min, s);
            rep.ladder_slope_max = std::max(rep.ladder_slope_max, s);
        }
        rep.ladder_residual = std::max({rep.ladder_residual, m.first, m.second});
    }
    return rep;
}

StructureReport measure_structure(const Params& p, double ratio_target, std::uint64_t seed, const std::string& fault) {
#ifndef CFS_FAULT_INJECTION
    if (!fault.empty()) throw std::invalid_argument("fault injection is not compiled in");
#endif
    if (!fault.empty() && fault != "fa_parity") throw std::invalid_argument("unknown fault '" + fault + "'");
    const bool flip = fault == "fa_parity";
    const double e = p.epsilon;
    StructureReport rep;
    auto sample = [&](double t, double r, bool maxwell) {
        auto s = maxwell ? maxwell_structure_functions(t, r, p) : dirac_structure_functions(t, r, p);
        if (flip && t < 0.0) s.f_a = -s.f_a;
        return s;
    };
    double ratio_sum = 0.0;
    int count = 0;
    for (int i = 0; i < 50; ++i)
        for (int j = 0; j < 50; ++j) {
            const double t = 3 * e * (i + 0.5) / 50, r = 3 * e * (j + 0.5) / 50;
            for (bool mx : {false, true}) {
                const auto a = sample(t, r, mx), b = sample(-t, r, mx);
                const double scale = std::abs(a.f_s) + std::abs(a.f_a);
                rep.parity = std::max({rep.parity, std::abs(a.f_s - b.f_s) / scale, std::abs(a.f_a + b.f_a) / scale});
            }
            const auto d = dirac_structure_functions(t, r, p);
            const auto m = maxwell_structure_functions(t, r, p);
            const double scale = std::abs(ratio_target) * (std::abs(d.f_s) + std::abs(d.f_a));
            rep.ratio_deviation = std::max({rep.ratio_deviation, std::abs(m.f_s - ratio_target * d.f_s) / scale,
                                            std::abs(m.f_a - ratio_target * d.f_a) / scale});
            if (std::abs(d.f_s) > 0.1 * (std::abs(d.f_s) + std::abs(d.f_a))) {
                ratio_sum += m.f_s / d.f_s;
                ++count;
            }
        }
    rep.ratio_mean = ratio_sum / count;
    Rng g(seed);
    for (int k = 0; k < 50; ++k) {
        const double t = g.uniform(-3 * e, 3 * e), r = g.uniform(0.05 * e, 3 * e);
        const auto x = extracted_structure_functions(t, r, g.unit(), p);
        const auto c = dirac_structure_functions(t, r, p);
        const double scale = std::abs(c.f_s) + std::abs(c.f_a);
        rep.extraction = std::max({rep.extraction, std::abs(x.f_s - c.f_s) / scale, std::abs(x.f_a - c.f_a) / scale});
    }
    return rep;
}

CancellationSummary measure_cancellation(const CoefficientTable& table, int spinors, std::uint64_t seed) {
    Rng g(seed);
    const double alpha = coupling_alpha(table).alpha;
    CancellationSummary rep;
    for (int k = 0; k < spinors; ++k) {
        const SpinorValue phi{g.spinor()};
        for (int sectors : {1, 2}) {
            const auto m = verify_cancellation(phi, table, alpha, sectors);
            (sectors == 1 ? rep.axial : rep.vector) = std::max(sectors == 1 ? rep.axial : rep.vector, m.max_residual);
            const auto w = verify_cancellation(phi, table, 2 * alpha, sectors);
            for (double r : w.residuals) rep.mismatch = std::max(rep.mismatch, std::abs(r - 0.5));
        }
    }
    return rep;
}

FigureReport measure_figure(const RunConfig& cfg) {
    const Params& p = cfg.params;
    const double e = p.epsilon;
    const auto ts = grid_axis(cfg.grid.n_t, cfg.grid.extent, e);
    const auto rs = grid_axis(cfg.grid.n_r, cfg.grid.extent, e);
    FigureReport rep;
    double best = -1.0;
    for (int i = 0; i < static_cast<int>(ts.size()); ++i)
        for (int j = 0; j < static_cast<int>(rs.size()); ++j) {
            const double v = std::norm(t_family(-1, RegularizedXi::make(ts[i], {0, 0, rs[j]}, e), p));
            if (v > best) best = v, rep.peak_row = i, rep.peak_col = j;
        }
    auto min_abs = [](const std::vector<double>& v) {
        double m = 1e300;
        for (double x : v) m = std::min(m, std::abs(x));
        return m;
    };
    rep.peak_at_origin = std::abs(ts[rep.peak_row]) == min_abs(ts) && std::abs(rs[rep.peak_col]) == min_abs(rs);
    rep.lightcone = std::abs(t_family(-1, RegularizedXi::make(2 * e, {0, 0, 2 * e}, e), p));
    rep.spacelike = std::abs(t_family(-1, RegularizedXi::make(0.0, {0, 0, 2 * std::sqrt(2.0) * e}, e), p));
    std::vector<double> xs, ys;
    for (int i = 0; i <= 10; ++i) {
        const double eps = 0.02 / p.mass * std::pow(10.0, i / 10.0);
        xs.push_back(eps);
        ys.push_back(std::norm(t_family(-1, RegularizedXi::make(0.0, {0, 0, 0}, eps), p)));
    }
    rep.peak_slope = loglog_slope(xs, ys);
    return rep;
}

bool deterministic_grid(const RunConfig& cfg) {
    std::ostringstream a, b;
    write_grid(a, cfg);
    write_grid(b, cfg);
    return a.str() == b.str() && !a.str().empty();
}

bool deterministic_coefficients(const RunConfig& cfg) {
    std::ostringstream a, b;
    write_coefficients(a, cfg, coefficient_table(cfg.params, cfg.quad, cfg.mode, cfg.tail_check));
    write_coefficients(b, cfg, coefficient_table(cfg.params, cfg.quad, cfg.mode, cfg.tail_check));
    return a.str() == b.str() && !a.str().empty();
}

std::vector<Check> run_verification(const RunConfig& cfg, const std::string& fault) {
    std::vector<Check> out;
    auto le = [&](std::string suite, std::string name, double v, double thr) {
        out.push_back({std::move(suite), std::move(name), v <= thr, v, thr, false});
    };
    auto within = [&](std::string suite, std::string name, double v, double target, double tol) {
        out.push_back({std::move(suite), std::move(name), std::abs(v - target) <= tol, v, target, false});
    };
    auto info = [&](std::string suite, std::string name, double v, double ref) {
        out.push_back({std::move(suite), std::move(name), true, v, ref, true});
    };
    const Params& p = cfg.params;

    const auto k = measure_kernel_oracle(p, 20, 1);
    le("kernel", "T0_vs_momentum_oracle", k.t0, 1e-6);
    le("kernel", "Tm1_vs_momentum_oracle", k.tm1, 1e-6);
    le("kernel", "P_vs_momentum_oracle", k.projector, 1e-6);

    const auto s = measure_spectral(p, 1000, 2);
    le("spectral", "eigensolver_pairing", s.pairing, 1e-10);
    within("spectral", "continuum_error_order", s.continuum_slope, 2.0, 0.2);

    const auto pr = measure_projectors(p, 200, 3);
    le("projectors", "idempotent", pr.idempotency, 1e-10);
    le("projectors", "complete", pr.completeness, 1e-10);
    le("projectors", "orthogonal", pr.orthogonality, 1e-10);
    le("projectors", "chirality", pr.chirality, 1e-10);
    le("projectors", "unit_trace", pr.trace, 1e-10);

    const auto lc = measure_lightcone(p, 10, 4);
    within("lightcone", "kg_order_min", lc.kg_slope_min, 2.0, 0.1);
    within("lightcone", "kg_order_max", lc.kg_slope_max, 2.0, 0.1);
    le("lightcone", "kg_residual_extrapolated", lc.kg_extrapolated, 1e-6);
    info("lightcone", "kg_residual_h_eps50", lc.kg_residual, 1e-5);
    info("lightcone", "ladder_residual_h_eps50", lc.ladder_residual, 1e-5);
    within("lightcone", "ladder_order_min", lc.ladder_slope_min, 2.0, 0.1);
    within("lightcone", "ladder_order_max", lc.ladder_slope_max, 2.0, 0.1);

    const auto st = measure_structure(p, frozen_ratio(p), 5, fault);
    le("parity", "time_flip_50x50", st.parity, 1e-12);
    le("structure", "trace_extraction", st.extraction, 1e-8);
    le("structure", "frozen_ratio_constant", st.ratio_deviation, 1e-12);
    info("structure", "frozen_ratio_vs_196_closed_form", st.ratio_mean, 1.0 / alpha_closed_form(p.c));

    const auto table = coefficient_table(p, cfg.quad, MaxwellMode::frozen, cfg.tail_check);
    for (int i = 0; i < 2; ++i)
        le("coefficients", i == 0 ? "parity_probe_C0" : "parity_probe_Ct_PS", std::abs(table.parity_probes[i].value),
           cfg.quad.rel_tol * table.parity_scales[i]);
    {
        const auto& t = table;
        const double dt = t.get(Coefficient::Ct_PB).value - t.get(Coefficient::Cr_PS).value - t.pb_minus_ps_t.value;
        const double et = t.get(Coefficient::Ct_PB).error + t.get(Coefficient::Cr_PS).error + t.pb_minus_ps_t.error;
        const double dr = t.get(Coefficient::Cr_PB).value - t.get(Coefficient::Ct_PS).value - t.pb_minus_ps_r.value;
        const double er = t.get(Coefficient::Cr_PB).error + t.get(Coefficient::Ct_PS).error + t.pb_minus_ps_r.error;
        le("coefficients", "identity_t", std::abs(dt), et);
        le("coefficients", "identity_r", std::abs(dr), er);
    }
    if (cfg.tail_check) info("coefficients", "tail_change_on_doubling", table.tail_change, cfg.quad.rel_tol);

    const auto a = coupling_alpha(table);
    le("alpha", "ratio_spread", a.ratio_spread, std::max(1e-8, cfg.quad.rel_tol));
    le("alpha", "alpha_vs_frozen_ratio", std::abs(1.0 / a.alpha - frozen_ratio(p)) / std::abs(frozen_ratio(p)),
       std::max(1e-8, cfg.quad.rel_tol));
    info("alpha", "alpha_vs_196_closed_form", a.alpha, alpha_closed_form(p.c));
    if (cfg.eps_list.size() >= 2) {
        const auto rows = epsilon_scan(cfg.eps_list, p, cfg.quad);
        double lo = 1e300, hi = -1e300;
        for (const auto& r : rows) lo = std::min(lo, r.alpha.alpha), hi = std::max(hi, r.alpha.alpha);
        le("alpha", "epsilon_independence", (hi - lo) / std::abs(a.alpha), 1e-6);
    }

    const auto cn = measure_cancellation(table, 10, 6);
    le("cancellation", "axial_one_sector", cn.axial, 1e-6);
    le("cancellation", "vector_two_sectors", cn.vector, 1e-6);
    le("cancellation", "doubled_alpha_half_residual", cn.mismatch, 1e-6);

    const auto fig = measure_figure(cfg);
    le("figure", "peak_at_origin", fig.peak_at_origin ? 0.0 : 1.0, 0.0);
    le("figure", "slower_decay_on_lightcone", fig.spacelike / fig.lightcone, 1.0);
    within("figure", "peak_scaling", fig.peak_slope, -8.0, 0.05);

    le("determinism", "grid_bytes", deterministic_grid(cfg) ? 0.0 : 1.0, 0.0);
    return out;
}

void print_checks(std::ostream& out, const std::vector<Check>& checks, bool verbose) {
    char buf[64];
    for (const auto& c : checks) {
        out << (c.informational ? "INFO" : (c.pass ? "PASS" : "FAIL")) << " " << c.suite << "/" << c.name;
        if (verbose || c.informational || !c.pass) {
            std::snprintf(buf, sizeof buf, "  measured=%.6e %s=%.6e", c.measured,
                          c.informational ? "reference" : "threshold", c.threshold);
            out << buf;
        }
        out << "\n";
    }
}

void write_checks_csv(std::ostream& out, const std::vector<Check>& checks) {
    out << "suite,check,status,measured,threshold\n";
    for (const auto& c : checks)
        out << c.suite << "," << c.name << "," << (c.informational ? "INFO" : (c.pass ? "PASS" : "FAIL")) << ","
            << format_number(c.measured) << "," << format_number(c.threshold) << "\n";
}

}  // namespace cfs
