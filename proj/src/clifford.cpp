#include "cfs/clifford.hpp"

#include <stdexcept>

namespace cfs {

namespace {

const cplx I{0.0, 1.0};

std::array<SpinMatrix, 4> make_gammas() {
    std::array<SpinMatrix, 4> g;
    for (auto& m : g) m.setZero();
    g[0].diagonal() << 1, 1, -1, -1;
    Eigen::Matrix2cd s[3];
    s[0] << 0, 1, 1, 0;
    s[1] << 0, -I, I, 0;
    s[2] << 1, 0, 0, -1;
    for (int i = 0; i < 3; ++i) {
        g[i + 1].block<2, 2>(0, 2) = s[i];
        g[i + 1].block<2, 2>(2, 0) = -s[i];
    }
    return g;
}

struct Algebra {
    std::array<SpinMatrix, 4> g = make_gammas();
    SpinMatrix g5 = I * g[0] * g[1] * g[2] * g[3];
    std::array<SpinMatrix, 3> big;
    SpinMatrix id = SpinMatrix::Identity();
    SpinMatrix chiL, chiR;
    std::array<SpinMatrix, 16> basis;
    std::array<double, 16> norms{};

    Algebra() {
        for (int i = 0; i < 3; ++i) big[i] = I * g[0] * g[i + 1];
        chiL = 0.5 * (id - g5);
        chiR = 0.5 * (id + g5);
        basis[0] = id;
        basis[1] = I * g5;
        for (int mu = 0; mu < 4; ++mu) {
            basis[2 + mu] = g[mu];
            basis[6 + mu] = g5 * g[mu];
        }
        for (int i = 0; i < 3; ++i) {
            basis[10 + i] = big[i];
            basis[13 + i] = I * g5 * big[i];
        }
        for (int k = 0; k < 16; ++k) norms[k] = (basis[k] * basis[k]).trace().real();
    }
};

const Algebra& alg() {
    static const Algebra a;
    return a;
}

}  // namespace

std::array<cplx, 16> BasisComponents::flat() const {
    std::array<cplx, 16> v{};
    v[0] = scalar;
    v[1] = pseudoscalar;
    for (int mu = 0; mu < 4; ++mu) {
        v[2 + mu] = vector[mu];
        v[6 + mu] = pseudovector[mu];
    }
    for (int i = 0; i < 3; ++i) {
        v[10 + i] = bilinear[i];
        v[13 + i] = pseudobilinear[i];
    }
    return v;
}

BasisComponents BasisComponents::from_flat(const std::array<cplx, 16>& v) {
    BasisComponents c;
    c.scalar = v[0];
    c.pseudoscalar = v[1];
    for (int mu = 0; mu < 4; ++mu) {
        c.vector[mu] = v[2 + mu];
        c.pseudovector[mu] = v[6 + mu];
    }
    for (int i = 0; i < 3; ++i) {
        c.bilinear[i] = v[10 + i];
        c.pseudobilinear[i] = v[13 + i];
    }
    return c;
}

const SpinMatrix& gamma(int mu) {
    if (mu < 0 || mu > 3) throw std::out_of_range("gamma: index must be 0..3");
    return alg().g[mu];
}
const SpinMatrix& gamma5() { return alg().g5; }
const SpinMatrix& bilinear_gamma(int i) {
    if (i < 1 || i > 3) throw std::out_of_range("bilinear_gamma: index must be 1..3");
    return alg().big[i - 1];
}
const SpinMatrix& chi_left() { return alg().chiL; }
const SpinMatrix& chi_right() { return alg().chiR; }
const SpinMatrix& identity4() { return alg().id; }
const std::array<SpinMatrix, 16>& basis16() { return alg().basis; }
const std::array<double, 16>& basis_norms() { return alg().norms; }

SpinMatrix spin_adjoint(const SpinMatrix& m) {
    const auto& g0 = alg().g[0];
    return g0 * m.adjoint() * g0;
}

BasisComponents decompose(const SpinMatrix& m) {
    const auto& b = basis16();
    const auto& n = basis_norms();
    std::array<cplx, 16> v{};
    for (int k = 0; k < 16; ++k) v[k] = (b[k] * m).trace() / n[k];
    return BasisComponents::from_flat(v);
}

SpinMatrix reconstruct(const BasisComponents& c) {
    const auto v = c.flat();
    SpinMatrix m = SpinMatrix::Zero();
    for (int k = 0; k < 16; ++k) m += v[k] * basis16()[k];
    return m;
}

SpinMatrix slash_lower(const std::array<cplx, 4>& v) {
    SpinMatrix m = SpinMatrix::Zero();
    for (int mu = 0; mu < 4; ++mu) m += v[mu] * alg().g[mu];
    return m;
}

SpinMatrix slash_upper(const std::array<cplx, 4>& v) {
    SpinMatrix m = SpinMatrix::Zero();
    for (int mu = 0; mu < 4; ++mu) m += eta(mu, mu) * v[mu] * alg().g[mu];
    return m;
}

double max_abs(const SpinMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace cfs
