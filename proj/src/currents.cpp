#include "cfs/currents.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cfs {

namespace {

constexpr double pi = std::numbers::pi;

void require_r(double r) {
    if (!(r > 0.0)) throw std::invalid_argument("structure functions require r > 0");
}

// The common bracket shared by the Dirac and Maxwell displays.
std::pair<double, double> bracket(const RegularizedXi& xi, double r, cplx w) {
    const double eps = xi.eps(), xx = xi.dot_conj();
    const double fs = 2.0 * eps * r * r * w.real() - xx * (w * xi.xi0).imag();
    const double fa = 2.0 * eps * r * (w * xi.xi0).real() - r * xx * w.imag();
    return {fs, fa};
}

StructureFunctionSample dirac_from(const RegularizedXi& xi, double r, cplx tm1) {
    const double pref = std::norm(tm1) / (8.0 * pi);
    const auto [s, a] = bracket(xi, r, tm1);
    return {xi.t(), r, pref * s, pref * a};
}

StructureFunctionSample maxwell_from(const RegularizedXi& xi, double r, cplx tm1, cplx t0, cplx t1) {
    const double tsq = std::norm(tm1);
    const double lam2 = std::norm(tsq / 4.0 * cplx(xi.dot_conj(), 2.0 * xi.eps() * r));
    const auto [s, a] = bracket(xi, r, std::conj(t1) * tm1);
    const cplx q = t0 / tm1;
    return {xi.t(), r, -tsq / 12.0 * s - lam2 / 12.0 * (q * xi.xi0).imag(), -tsq / 12.0 * a - lam2 / 12.0 * r * q.imag()};
}

RegularizedXi radial(double t, double r, const Params& p) {
    require_r(r);
    return RegularizedXi::make(t, {0.0, 0.0, r}, p.epsilon);
}

}  // namespace

SpinMatrix perturbed_chain(const SpinMatrix& p_xy, const SpinMatrix& dp_xy, const SpinMatrix& dp_yx) {
    const double scale = std::max(max_abs(dp_xy), max_abs(dp_yx));
    if (max_abs(spin_adjoint(dp_xy) - dp_yx) > 1e-9 * scale)
        throw std::invalid_argument("perturbation is not spin symmetric");
    return p_xy * dp_yx + dp_xy * spin_adjoint(p_xy);
}

double trace_kernel(const SpectralData& spec, int sign, Chirality chi, const SpinMatrix& dA) {
    return (std::conj(spec.lambda(sign)) * (spec.projector(sign, chi) * dA).trace()).real();
}

int axial_sign(int sign, Chirality chi) { return (sign > 0) == (chi == Chirality::left) ? -1 : 1; }

SpinMatrix continuum_kernel(const RegularizedXi& xi, const Params& p) {
    return cplx(0.0, 0.5) * t_family(-1, xi, p) * slash_upper(xi.upper());
}

StructureFunctionSample dirac_structure_functions(double t, double r, const Params& p) {
    const auto xi = radial(t, r, p);
    return dirac_from(xi, r, t_family(-1, xi, p));
}

KernelSample kernel_sample(double t, double r, const Params& p, MaxwellMode mode) {
    const auto xi = radial(t, r, p);
    const auto tf = t_family_all(xi, p);
    const cplx tm2 = tf[-2 - kMinTOrder], tm1 = tf[-1 - kMinTOrder];
    cplx t0, t1;
    if (mode == MaxwellMode::frozen) {
        t0 = 1.0 / (8.0 * pi * pi * pi * xi.minus_square());
        t1 = p.c;
    } else {
        t0 = tf[0 - kMinTOrder];
        t1 = tf[1 - kMinTOrder];
    }
    return {dirac_from(xi, r, tm1), maxwell_from(xi, r, tm1, t0, t1), tm2 / tm1};
}

StructureFunctionSample maxwell_structure_functions(double t, double r, const Params& p, MaxwellMode mode) {
    return kernel_sample(t, r, p, mode).maxwell;
}

double frozen_ratio(const Params& p) { return 1.0 / (192.0 * pi * pi) - 2.0 * pi / 3.0 * p.c; }

TraceCoefficients extract_trace_coefficients(const RegularizedXi& xi, const Params& p, int sign,
                                             Chirality chi, const std::array<Spinor, 4>& probes) {
    const SpectralData spec = continuum_spectral(xi, p);
    const SpinMatrix pk = continuum_kernel(xi, p);
    const auto lower = xi.lower();
    const double r = xi.r();
    Eigen::Matrix4d m;
    Eigen::Vector4d rhs;
    for (int k = 0; k < 4; ++k) {
        const SpinorValue s{probes[k]};
        const auto jv = s.vector_current();
        const auto ja = s.axial_current();
        double jvr = 0.0, jar = 0.0;
        for (int i = 1; i < 4; ++i) {
            jvr += lower[i].real() * jv[i] / r;
            jar += lower[i].real() * ja[i] / r;
        }
        m.row(k) << jv[0], jvr, jar, ja[0];
        const SpinMatrix d = dirac_perturbation(s, p);
        rhs[k] = trace_kernel(spec, sign, chi, perturbed_chain(pk, d, d));
    }
    Eigen::FullPivLU<Eigen::Matrix4d> lu(m);
    if (lu.rank() < 4) throw std::runtime_error("degenerate probe spinors");
    const Eigen::Vector4d c = lu.solve(rhs);
    return {c[0], c[1], c[2], c[3]};
}

TraceCoefficients extract_trace_coefficients(const RegularizedXi& xi, const Params& p, int sign,
                                             Chirality chi) {
    using C = cplx;
    std::array<Spinor, 4> probes;
    probes[0] << C(1, 0), C(0, 0), C(0.3, 0), C(0, 0);
    probes[1] << C(0, 0), C(1, 0.2), C(0, 0), C(-0.4, 0.5);
    probes[2] << C(0.5, -0.1), C(0.2, 0), C(0, 0.8), C(0.3, 0);
    probes[3] << C(0.1, 0.3), C(0, -0.7), C(0.6, 0), C(0, 0.2);
    return extract_trace_coefficients(xi, p, sign, chi, probes);
}

StructureFunctionSample extracted_structure_functions(double t, double r, const Vec3& direction,
                                                      const Params& p) {
    require_r(r);
    const auto xi = RegularizedXi::make(t, {r * direction[0], r * direction[1], r * direction[2]}, p.epsilon);
    const auto c = extract_trace_coefficients(xi, p, +1, Chirality::left);
    return {t, r, 4.0 * c.v0, 4.0 * c.vr};
}

}  // namespace cfs
