#include "cfs/moments.hpp"

#include <stdexcept>

namespace cfs {

namespace {

const cplx I(0.0, 1.0);

void axial_entries(std::vector<MomentEntry>& out, int order, int mu, const CoefficientTable& t, Family f,
                   double scale) {
    auto c = [&](Coefficient k) { return t.get(k, f).value * scale; };
    const SpinMatrix& g5 = gamma5();
    if (order == 0) {
        for (int k = 1; k < 4; ++k)
            out.push_back({"g5*Gamma^" + std::to_string(k), g5 * bilinear_gamma(k), Channel::axial, k,
                           I * c(Coefficient::C0) / 3.0});
        return;
    }
    if (mu == 0) {
        out.push_back({"g5", g5, Channel::axial, 0, I * c(Coefficient::Ct_PS)});
        for (int k = 1; k < 4; ++k)
            out.push_back({"g5*Gamma^" + std::to_string(k), g5 * bilinear_gamma(k), Channel::axial, k,
                           cplx(c(Coefficient::Ct_PB))});
    } else {
        out.push_back({"g5", g5, Channel::axial, mu, I * c(Coefficient::Cr_PS)});
        out.push_back({"g5*Gamma_" + std::to_string(mu), -(g5 * bilinear_gamma(mu)), Channel::axial, 0,
                       cplx(c(Coefficient::Cr_PB))});
    }
}

void vector_entries(std::vector<MomentEntry>& out, int order, int mu, const CoefficientTable& t, Family f) {
    auto c = [&](Coefficient k) { return t.get(k, f).value; };
    const SpinMatrix& one = identity4();
    if (order == 0) {
        out.push_back({"1", one, Channel::vector, 0, cplx(2.0 * c(Coefficient::C0))});
        return;
    }
    if (mu == 0) {
        out.push_back({"1", one, Channel::vector, 0, I * c(Coefficient::Ct_S)});
        for (int k = 1; k < 4; ++k)
            out.push_back({"Gamma^" + std::to_string(k), bilinear_gamma(k), Channel::vector, k,
                           cplx(c(Coefficient::Ct_B))});
    } else {
        out.push_back({"1", one, Channel::vector, mu, I * c(Coefficient::Cr_S)});
        out.push_back({"Gamma_" + std::to_string(mu), -bilinear_gamma(mu), Channel::vector, 0,
                       cplx(c(Coefficient::Cr_B))});
    }
}

}  // namespace

Moment assemble_moment(int order, int mu, PerturbationKind kind, int sectors, const CoefficientTable& table) {
    if (order != 0 && order != 1) throw std::invalid_argument("moment order must be 0 or 1");
    if (mu < 0 || mu > 3) throw std::invalid_argument("derivative index must be 0..3");
    if (sectors != 1 && sectors != 2) throw std::invalid_argument("sectors must be 1 or 2");
    if (kind == PerturbationKind::vector_maxwell && sectors == 1)
        throw std::invalid_argument("a vector perturbation of one sector does not contribute");
    if (kind == PerturbationKind::axial_maxwell && sectors == 2)
        throw std::invalid_argument("axial Maxwell perturbations are supported for one sector only");

    Moment m{order, order == 0 ? 0 : mu, sectors, {}};
    const Family f = kind == PerturbationKind::dirac ? Family::dirac : Family::maxwell;
    if (sectors == 2) vector_entries(m.entries, order, m.mu, table, f);
    if (kind != PerturbationKind::vector_maxwell)
        axial_entries(m.entries, order, m.mu, table, f, sectors == 2 ? 2.5 : 1.0);
    return m;
}

SpinMatrix materialize(const Moment& m, const CurrentValues& j, std::optional<Channel> only) {
    SpinMatrix out = SpinMatrix::Zero();
    for (const auto& e : m.entries) {
        if (only && *only != e.channel) continue;
        const double current = e.channel == Channel::vector ? j.vector[e.index] : j.axial[e.index];
        out += e.coefficient * current * e.matrix;
    }
    return out;
}

std::array<double, 4> lower_index(const std::array<double, 4>& upper) {
    return {upper[0], -upper[1], -upper[2], -upper[3]};
}

PolynomialPotential potential_with_current(const std::array<double, 4>& j_lower) {
    Polynomial q;
    for (int k = 1; k < 4; ++k) q = q + Polynomial::coordinate(k) * Polynomial::coordinate(k);
    PolynomialPotential a;
    for (int mu = 0; mu < 4; ++mu) a.components[mu] = q * (-(mu == 0 ? 1.0 : 1.5) * j_lower[mu] / 6.0);
    return a;
}

CancellationReport verify_cancellation(const SpinorValue& phi, const CoefficientTable& table, double alpha,
                                       int sectors) {
    if (sectors != 1 && sectors != 2) throw std::invalid_argument("sectors must be 1 or 2");
    CurrentValues dirac{lower_index(phi.vector_current()), lower_index(phi.axial_current())};
    const auto& source = sectors == 1 ? dirac.axial : dirac.vector;
    std::array<double, 4> target{};
    for (int mu = 0; mu < 4; ++mu) target[mu] = alpha * source[mu];
    const PolynomialPotential a = potential_with_current(target);

    CurrentValues field;
    auto& slot = sectors == 1 ? field.axial : field.vector;
    for (int mu = 0; mu < 4; ++mu) slot[mu] = -a.current(mu).evaluate(Point4{0.0, 0.0, 0.0, 0.0});

    const auto kind = sectors == 1 ? PerturbationKind::axial_maxwell : PerturbationKind::vector_maxwell;
    const std::optional<Channel> only = sectors == 1 ? std::nullopt : std::optional<Channel>(Channel::vector);
    CancellationReport rep;
    for (int i = 0; i < 5; ++i) {
        const int order = i == 0 ? 0 : 1, mu = i == 0 ? 0 : i - 1;
        const SpinMatrix d = materialize(assemble_moment(order, mu, PerturbationKind::dirac, sectors, table), dirac, only);
        const SpinMatrix m = materialize(assemble_moment(order, mu, kind, sectors, table), field, only);
        rep.dirac_norm[i] = d.norm();
        rep.maxwell_norm[i] = m.norm();
        const double s = std::max(rep.dirac_norm[i], rep.maxwell_norm[i]);
        rep.residuals[i] = s == 0.0 ? 0.0 : (d - m).norm() / s;
        rep.max_residual = std::max(rep.max_residual, rep.residuals[i]);
    }
    return rep;
}

}  // namespace cfs
