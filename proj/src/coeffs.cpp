#include "cfs/coeffs.hpp"

#include "cfs/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cfs {

namespace {

constexpr double pi = std::numbers::pi;

constexpr int kFamily = kCoefficientCount;
constexpr int kControlled = 2 * kFamily + 2;
constexpr int kProbes = 2;
constexpr int kInner = kControlled + kProbes;

constexpr std::array<std::string_view, kCoefficientCount> kNames{"C0",   "Ct_PS", "Ct_PB", "Cr_PS", "Cr_PB",
                                                                 "Ct_S", "Ct_B",  "Cr_S",  "Cr_B"};

// The nine coefficient integrands for one family at physical (t, r).
void family_integrands(double* out, double fs, double fa, double t, double r, double eps, double w, cplx ratio,
                       cplx xi0) {
    const double q = t * t + r * r + eps * eps;
    const double r2 = r * r, r3 = r2 * r;
    const double im_rx = (ratio * xi0).imag(), im_r = ratio.imag();
    const double cr_ps = -pi / 12.0 * w * fs * q * r2 * eps;
    out[0] = 4.0 * pi * r2 * fs;
    out[1] = -pi / 2.0 * w * fa * t * r3 * eps;
    out[2] = cr_ps + 2.0 * pi / 3.0 * fs * r2 * im_rx;
    out[3] = cr_ps;
    out[4] = 2.0 * pi * fa * (r3 / 3.0 * im_r - w / 4.0 * t * r3 * eps);
    out[5] = -pi / 2.0 * fs * w * q * r2 * eps - 4.0 * pi * fs * r2 * im_rx;
    out[6] = pi / 24.0 * w * fs * q * r2 * eps + 4.0 * pi / 3.0 * im_rx * fs * r2;
    out[7] = -pi / 3.0 * fa * w * t * r3 * eps - 4.0 * pi / 3.0 * fa * r3 * im_r;
    out[8] = -pi / 2.0 * fs * w * eps * q * r2;
}

quad::Vec integrand(double u, double v, const Params& p, MaxwellMode mode) {
    const double eps = p.epsilon, t = u * eps, r = v * eps;
    const KernelSample k = kernel_sample(t, r, p, mode);
    const double xx = t * t + eps * eps - r * r;
    const double w = 16.0 / std::norm(cplx(xx, 2.0 * eps * r));
    const cplx xi0(t, -eps);
    quad::Vec out(kInner);
    family_integrands(out.data(), k.dirac.f_s, k.dirac.f_a, t, r, eps, w, k.ladder_ratio, xi0);
    family_integrands(out.data() + kFamily, k.maxwell.f_s, k.maxwell.f_a, t, r, eps, w, k.ladder_ratio, xi0);
    out[2 * kFamily] = 2.0 * pi / 3.0 * k.dirac.f_s * r * r * (k.ladder_ratio * xi0).imag();
    out[2 * kFamily + 1] = 2.0 * pi / 3.0 * k.dirac.f_a * r * r * r * k.ladder_ratio.imag();
    out[kControlled] = 4.0 * pi * r * r * k.dirac.f_a;
    out[kControlled + 1] = -pi / 2.0 * w * k.dirac.f_s * t * r * r * r * eps;
    return out;
}

CoefficientTable integrate_table(const Params& p, const QuadratureSpec& q, MaxwellMode mode, double scale,
                                 bool strict) {
    const double len = q.domain_scale * scale;
    quad::Options inner_opt;
    inner_opt.rel_tol = std::max(q.rel_tol * 1e-3, 1e-13);
    inner_opt.l1_floor = q.rel_tol * 1e-3;
    inner_opt.max_intervals = q.max_subdivisions;
    inner_opt.controlled = kControlled;

    quad::Options outer_opt;
    outer_opt.rel_tol = q.rel_tol / 2.0;
    outer_opt.l1_floor = q.rel_tol * 1e-3;
    outer_opt.max_intervals = q.max_subdivisions;
    outer_opt.controlled = kControlled;

    bool inner_failed = false;
    auto outer = [&](double u) {
        std::vector<double> breaks;
        const double a = std::abs(u);
        for (double b : {a - 1.0, a, a + 1.0})
            if (b > 0.0 && b < len) breaks.push_back(b);
        const auto res = quad::integrate([&](double v) { return integrand(u, v, p, mode); }, kInner, 0.0, len,
                                         breaks, inner_opt);
        if (!res.converged) inner_failed = true;
        quad::Vec out(2 * kInner);
        out << res.value, res.error;
        return out;
    };
    std::vector<double> breaks{-2.0, -1.0, 0.0, 1.0, 2.0};
    const auto res = quad::integrate(outer, 2 * kInner, -len, len, breaks, outer_opt);
    if (!res.converged || inner_failed)
        throw QuadratureError("coefficient quadrature did not reach rel_tol " + std::to_string(q.rel_tol) +
                              " within " + std::to_string(q.max_subdivisions) + " subdivisions");

    const double jac = p.epsilon * p.epsilon;
    auto value = [&](int i) {
        return CoefficientValue{jac * res.value[i], jac * (res.error[i] + res.value[kInner + i])};
    };
    CoefficientTable t;
    t.params = p;
    t.quad = q;
    t.quad.domain_scale = len;
    t.mode = mode;
    for (int i = 0; i < kFamily; ++i) {
        t.dirac[i] = value(i);
        t.maxwell[i] = value(kFamily + i);
    }
    t.pb_minus_ps_t = value(2 * kFamily);
    t.pb_minus_ps_r = value(2 * kFamily + 1);
    for (int i = 0; i < kProbes; ++i) {
        t.parity_probes[i] = value(kControlled + i);
        // l1 of the outer integrand bounds l1 of the inner one from below; the
        // probes are odd in u so the outer l1 is the right reference.
        t.parity_scales[i] = jac * res.l1[kControlled + i];
    }
    t.outer_intervals = res.intervals;
    if (strict)
        for (int i = 0; i < kFamily; ++i)
            for (const auto* v : {&t.dirac[i], &t.maxwell[i]})
                if (v->error > q.rel_tol * std::abs(v->value))
                    throw QuadratureError("error estimate of " + std::string(kNames[i]) + " exceeds rel_tol");
    return t;
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(domain_scale >= 10.0)) throw std::invalid_argument("domain_scale must be >= 10");
    if (!(rel_tol >= 1e-10 && rel_tol <= 1e-3)) throw std::invalid_argument("rel_tol must lie in [1e-10, 1e-3]");
    if (max_subdivisions < 1) throw std::invalid_argument("max_subdivisions must be positive");
}

std::string_view coefficient_name(Coefficient c) { return kNames[static_cast<int>(c)]; }

std::optional<Coefficient> parse_coefficient(std::string_view name) {
    for (int i = 0; i < kCoefficientCount; ++i)
        if (kNames[i] == name) return static_cast<Coefficient>(i);
    return std::nullopt;
}

const CoefficientValue& CoefficientTable::get(Coefficient c, Family f) const {
    return f == Family::dirac ? dirac[static_cast<int>(c)] : maxwell[static_cast<int>(c)];
}

double angular_weight(int i, int j) {
    if (i < 1 || i > 3 || j < 1 || j > 3) throw std::out_of_range("spatial index must be 1..3");
    return i == j ? 4.0 * pi / 3.0 : 0.0;
}

double angular_weight(int i) {
    if (i < 1 || i > 3) throw std::out_of_range("spatial index must be 1..3");
    return 0.0;
}

CoefficientTable coefficient_table(const Params& p, const QuadratureSpec& q, MaxwellMode mode, bool tail_check) {
    p.validate();
    q.validate();
    CoefficientTable t = integrate_table(p, q, mode, 1.0, true);
    if (!tail_check) {
        t.tail_change = std::numeric_limits<double>::quiet_NaN();
        return t;
    }
    const CoefficientTable wide = integrate_table(p, q, mode, 2.0, false);
    double change = 0.0;
    for (int i = 0; i < kCoefficientCount; ++i)
        change = std::max(change, std::abs(wide.dirac[i].value - t.dirac[i].value) / std::abs(t.dirac[i].value));
    t.tail_change = change;
    if (q.enforce_tail && change > q.rel_tol)
        throw QuadratureError("tail check failed: doubling the domain changes a coefficient by " +
                              std::to_string(change));
    return t;
}

CoefficientValue coefficient(Coefficient c, const Params& p, const QuadratureSpec& q) {
    return coefficient_table(p, q, MaxwellMode::frozen, false).get(c);
}

AlphaResult coupling_alpha(const CoefficientTable& table) {
    AlphaResult a;
    for (std::size_t i = 0; i < kAxialCoefficients.size(); ++i) {
        const auto& d = table.get(kAxialCoefficients[i], Family::dirac);
        if (d.value == 0.0 || std::abs(d.value) <= d.error)
            throw std::runtime_error("Dirac coefficient " + std::string(coefficient_name(kAxialCoefficients[i])) +
                                     " is indistinguishable from zero");
        a.ratios[i] = table.get(kAxialCoefficients[i], Family::maxwell).value / d.value;
    }
    a.alpha = 1.0 / a.ratios[0];
    for (double r : a.ratios) a.ratio_spread = std::max(a.ratio_spread, std::abs(r - a.ratios[0]) / std::abs(a.ratios[0]));
    return a;
}

AlphaResult coupling_alpha(const Params& p, const QuadratureSpec& q) {
    return coupling_alpha(coefficient_table(p, q, MaxwellMode::frozen, false));
}

double alpha_closed_form(double c) { return 1.0 / (1.0 / (196.0 * pi * pi) - 2.0 * pi / 3.0 * c); }

std::vector<ScanRow> epsilon_scan(std::vector<double> eps_list, const Params& base, const QuadratureSpec& q) {
    for (double e : eps_list)
        if (!(e > 0.0)) throw std::invalid_argument("epsilon values must be positive");
    std::sort(eps_list.begin(), eps_list.end());
    std::vector<ScanRow> rows;
    for (double e : eps_list) {
        Params p = base;
        p.epsilon = e;
        ScanRow row;
        row.epsilon = e;
        row.table = coefficient_table(p, q, MaxwellMode::frozen, false);
        row.alpha = coupling_alpha(row.table);
        row.peak = std::norm(t_family(-1, RegularizedXi::make(0.0, {0.0, 0.0, 0.0}, e), p));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace cfs
