#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace cfs {

using cplx = std::complex<double>;
using SpinMatrix = Eigen::Matrix4cd;
using Spinor = Eigen::Vector4cd;

// Minkowski metric diag(+,-,-,-).
constexpr double eta(int mu, int nu) { return mu != nu ? 0.0 : (mu == 0 ? 1.0 : -1.0); }

/// Coefficients of a spin matrix in the symmetric basis
/// (1, i g5, g^mu, g5 g^mu, Gamma^i, i g5 Gamma^i).
struct BasisComponents {
    cplx scalar{};
    cplx pseudoscalar{};
    std::array<cplx, 4> vector{};
    std::array<cplx, 4> pseudovector{};
    std::array<cplx, 3> bilinear{};
    std::array<cplx, 3> pseudobilinear{};

    std::array<cplx, 16> flat() const;
    static BasisComponents from_flat(const std::array<cplx, 16>& v);
};

const SpinMatrix& gamma(int mu);
const SpinMatrix& gamma5();
/// Gamma^i = Sigma^{0i} = i g^0 g^i.
const SpinMatrix& bilinear_gamma(int i);
const SpinMatrix& chi_left();
const SpinMatrix& chi_right();
const SpinMatrix& identity4();

/// Basis ordered (1, i g5, g^0..g^3, g5 g^0..g5 g^3, Gamma^1..3, i g5 Gamma^1..3).
const std::array<SpinMatrix, 16>& basis16();
/// tr(B_k B_k) for each basis element, computed once from the matrices.
const std::array<double, 16>& basis_norms();

/// Dirac adjoint g^0 M^dagger g^0.
SpinMatrix spin_adjoint(const SpinMatrix& m);

BasisComponents decompose(const SpinMatrix& m);
SpinMatrix reconstruct(const BasisComponents& c);

/// v_mu g^mu for a covariant (lower index) vector.
SpinMatrix slash_lower(const std::array<cplx, 4>& v_lower);
/// v_mu g^mu for a contravariant (upper index) vector.
SpinMatrix slash_upper(const std::array<cplx, 4>& v_upper);

double max_abs(const SpinMatrix& m);

}  // namespace cfs
