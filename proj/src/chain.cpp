#include "cfs/chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cfs {

namespace {
const cplx I{0.0, 1.0};
}

const SpinMatrix& SpectralData::projector(int sign, Chirality chi) const {
    const int idx = (chi == Chirality::left ? 0 : 2) + (sign > 0 ? 0 : 1);
    return projectors[idx];
}

SpinMatrix fermionic_projector(const RegularizedXi& xi, const Params& p) {
    const auto t = t_family_all(xi, p);
    const cplx tm1 = t[-1 - kMinTOrder], t0 = t[0 - kMinTOrder];
    return 0.5 * I * tm1 * slash_upper(xi.upper()) + p.mass * t0 * SpinMatrix::Identity();
}

SpinMatrix closed_chain(const RegularizedXi& xi, const Params& p) {
    return fermionic_projector(xi, p) * fermionic_projector(xi.reversed(), p);
}

ChainComponents chain_components(const SpinMatrix& a) {
    const double scale = std::max(max_abs(a), 1e-300);
    if (max_abs(spin_adjoint(a) - a) > 1e-9 * scale)
        throw std::invalid_argument("chain_components: input is not spin symmetric");
    const auto d = decompose(a);
    ChainComponents c;
    c.b = d.scalar.real();
    double im = std::abs(d.scalar.imag());
    for (int mu = 0; mu < 4; ++mu) {
        c.a[mu] = d.vector[mu].real();
        im = std::max(im, std::abs(d.vector[mu].imag()));
    }
    for (int i = 0; i < 3; ++i) {
        c.c[i] = d.bilinear[i].real();
        im = std::max(im, std::abs(d.bilinear[i].imag()));
    }
    double ps = std::abs(d.pseudoscalar);
    for (const auto& v : d.pseudovector) ps = std::max(ps, std::abs(v));
    for (const auto& v : d.pseudobilinear) ps = std::max(ps, std::abs(v));
    c.imaginary_residual = im / scale;
    c.pseudo_residual = ps / scale;
    return c;
}

double chain_discriminant(const ChainComponents& c) {
    double aa = 0.0;
    for (int mu = 0; mu < 4; ++mu) aa += eta(mu, mu) * c.a[mu] * c.a[mu];
    // 2 c_{mu nu} c^{mu nu} with c_{0i} = c_i / 2 reduces to -|c|^2.
    const double cc = c.c[0] * c.c[0] + c.c[1] * c.c[1] + c.c[2] * c.c[2];
    return aa - cc;
}

std::pair<cplx, cplx> eigenvalues_closed_form(const ChainComponents& c) {
    const cplx root = std::sqrt(cplx(chain_discriminant(c), 0.0));
    return {c.b + root, c.b - root};
}

ExactProjectors projectors_exact(const SpinMatrix& a, const ChainComponents& c) {
    const SpinMatrix id = SpinMatrix::Identity();
    const SpinMatrix shifted = a - c.b * id;
    const cplx tr = (shifted * shifted).trace();
    if (std::abs(tr) < 1e-12 * (c.b * c.b + 1.0))
        throw std::domain_error("projectors_exact: degenerate discriminant (lightlike separation)");
    const cplx root = std::sqrt(tr);
    ExactProjectors out;
    out.plus = 0.5 * id + shifted / root;
    out.minus = 0.5 * id - shifted / root;
    out.lambda_plus = c.b + 0.5 * root;
    out.lambda_minus = c.b - 0.5 * root;
    out.idempotency_residual =
        std::max(max_abs(out.plus * out.plus - out.plus), max_abs(out.minus * out.minus - out.minus));
    const double lam = std::max(std::abs(out.lambda_plus), std::abs(out.lambda_minus));
    out.eigen_residual = std::max(max_abs(a * out.plus - out.lambda_plus * out.plus),
                                  max_abs(a * out.minus - out.lambda_minus * out.minus)) /
                         lam;
    return out;
}

SpectralData continuum_spectral(const RegularizedXi& xi, const Params& p) {
    const double r = xi.r();
    if (!(r > 0.0)) throw std::invalid_argument("continuum_spectral: requires r > 0");
    const double eps = xi.eps();
    const double t2 = std::norm(t_family(-1, xi, p));
    const double xx = xi.dot_conj();
    SpectralData s;
    s.lambda_plus = 0.25 * t2 * cplx(xx, 2.0 * eps * r);
    s.lambda_minus = 0.25 * t2 * cplx(xx, -2.0 * eps * r);
    // xi_k Gamma^k with lower spatial components xi_k = -xi^k.
    SpinMatrix xg = SpinMatrix::Zero();
    for (int k = 1; k <= 3; ++k) xg -= xi.spatial[k - 1] * bilinear_gamma(k);
    const SpinMatrix id = SpinMatrix::Identity();
    const SpinMatrix lp = 0.5 * id + I * xg / (2.0 * r);
    const SpinMatrix lm = 0.5 * id - I * xg / (2.0 * r);
    s.projectors = {chi_left() * lp, chi_left() * lm, chi_right() * lp, chi_right() * lm};
    return s;
}

SpinMatrix projector_derivative(int mu, const RegularizedXi& xi, const Params& p) {
    if (mu < 0 || mu > 3) throw std::out_of_range("projector_derivative: index must be 0..3");
    if (!(xi.r() > 0.0)) throw std::invalid_argument("projector_derivative: requires r > 0");
    const auto t = t_family_all(xi, p);
    const cplx tm2 = std::conj(t[-2 - kMinTOrder]);
    const cplx tm1 = std::conj(t[-1 - kMinTOrder]);
    const auto low = xi.lower();
    const cplx xbar_mu = std::conj(low[mu]);
    // xi(y, x) = -conj(xi).
    const auto rev = xi.reversed().upper();
    const SpinMatrix vec_rev = 0.5 * I * slash_upper(rev);
    return 0.5 * xbar_mu * tm2 * vec_rev + 0.5 * I * tm1 * eta(mu, mu) * gamma(mu) +
           p.mass * 0.5 * xbar_mu * tm1 * SpinMatrix::Identity();
}

}  // namespace cfs
