#pragma once

#include "cfs/besselt.hpp"
#include "cfs/clifford.hpp"

#include <array>
#include <utility>

namespace cfs {

/// A = b + a_mu g^mu + c_i Gamma^i.
struct ChainComponents {
    double b = 0.0;
    std::array<double, 4> a{};  // lower index
    Vec3 c{};
    double imaginary_residual = 0.0;  // largest |Im| of the kept components, relative
    double pseudo_residual = 0.0;     // largest pseudo component, relative
};

enum class Chirality { left, right };

struct SpectralData {
    cplx lambda_plus;
    cplx lambda_minus;
    // Ordered (+,L), (-,L), (+,R), (-,R).
    std::array<SpinMatrix, 4> projectors;

    const SpinMatrix& projector(int sign, Chirality chi) const;
    cplx lambda(int sign) const { return sign > 0 ? lambda_plus : lambda_minus; }
};

struct ExactProjectors {
    SpinMatrix plus;
    SpinMatrix minus;
    cplx lambda_plus;
    cplx lambda_minus;
    double idempotency_residual = 0.0;  // max |Lambda^2 - Lambda| relative to 1
    double eigen_residual = 0.0;        // max |A Lambda - lambda Lambda| relative to |lambda|
};

/// P(x, y) = (i/2) T^(-1) xi-slash + m T^(0) for xi = y - x.
SpinMatrix fermionic_projector(const RegularizedXi& xi, const Params& p);
/// A_xy = P(x, y) P(y, x).
SpinMatrix closed_chain(const RegularizedXi& xi, const Params& p);

/// Throws std::invalid_argument for a non-symmetric input.
ChainComponents chain_components(const SpinMatrix& a);
/// a_mu a^mu - |c|^2, equal to tr[(A - b)^2] / 4.
double chain_discriminant(const ChainComponents& c);
std::pair<cplx, cplx> eigenvalues_closed_form(const ChainComponents& c);

/// Throws std::domain_error when the discriminant is degenerate.
ExactProjectors projectors_exact(const SpinMatrix& a, const ChainComponents& c);

/// Continuum-limit eigenvalues and chiral eigenspace projectors. Requires r > 0.
SpectralData continuum_spectral(const RegularizedXi& xi, const Params& p);

/// d/dx^mu P(y, x) in closed form. Requires r > 0.
SpinMatrix projector_derivative(int mu, const RegularizedXi& xi, const Params& p);

}  // namespace cfs
