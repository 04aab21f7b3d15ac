#pragma once

#include "cfs/clifford.hpp"

#include <array>
#include <complex>

namespace cfs {

/// Physical and regularization parameters. lagrange_r is fixed to 0 in the
/// continuum limit.
struct Params {
    double mass = 1.0;
    double epsilon = 0.1;
    double c = 0.0;
    double lagrange_r = 0.0;

    void validate() const;
};

using Vec3 = std::array<double, 3>;

struct SpacetimeDisplacement {
    double t = 0.0;
    double r = 0.0;
    Vec3 direction{0.0, 0.0, 1.0};
};

/// xi = y - x with the time component shifted to t - i eps.
struct RegularizedXi {
    cplx xi0;
    Vec3 spatial{};

    static RegularizedXi make(double t, const Vec3& rvec, double eps);
    static RegularizedXi from(const SpacetimeDisplacement& d, const Params& p);

    double t() const { return xi0.real(); }
    double eps() const { return -xi0.imag(); }
    double r() const;
    Vec3 direction() const;
    std::array<cplx, 4> upper() const;
    std::array<cplx, 4> lower() const;
    /// xi of the reversed pair (y, x): time and direction flipped.
    RegularizedXi reversed() const;
    /// -xi_mu xi^mu = r^2 - (t - i eps)^2.
    cplx minus_square() const;
    /// xi_mu conj(xi^mu) = t^2 + eps^2 - r^2.
    double dot_conj() const;
};

cplx z_arg(const RegularizedXi& xi, const Params& p);

/// Modified Bessel function of the second kind K_nu(z), nu in 0..3, Re z > 0,
/// 1e-6 <= |z| <= 1e4. Throws std::domain_error outside the working domain.
cplx bessel_k(int nu, cplx z);
/// K_0..K_3 from a single evaluation.
std::array<cplx, 4> bessel_k_all(cplx z);

constexpr int kMinTOrder = -2;
constexpr int kMaxTOrder = 3;

/// Regularized kernel family T^(n), n in -2..3, normalized so that
/// d/dx^mu T^(n+1) = (xi_mu / 2) T^(n) and (box + m^2) T^(n+1) = -(n+1) T^(n).
cplx t_family(int n, const RegularizedXi& xi, const Params& p);

/// All orders -2..3 from one Bessel evaluation; index n - kMinTOrder.
std::array<cplx, 6> t_family_all(const RegularizedXi& xi, const Params& p);

enum class OracleComponent { scalar, vector0, vector_r };

struct OracleResult {
    cplx value;
    double error;
};

/// Direct radial momentum integration of the regularized Dirac sea.
/// scalar -> T^(0); vector0 -> coefficient of g^0 in P; vector_r -> coefficient
/// of (r_hat . g) in P. Throws std::runtime_error on non-convergence.
OracleResult momentum_oracle(OracleComponent c, const RegularizedXi& xi, const Params& p,
                             double tol);

/// The radial integrand before integration (for damping checks).
cplx momentum_integrand(OracleComponent c, double k, const RegularizedXi& xi, const Params& p);

}  // namespace cfs
