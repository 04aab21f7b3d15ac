#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cfs/moments.hpp"
#include "support.hpp"

#include <cmath>

using namespace cfs;
using testsupport::Gen;

namespace {

const CoefficientTable& table() {
    static const CoefficientTable t = [] {
        QuadratureSpec q;
        q.rel_tol = 1e-8;
        return coefficient_table(Params{1.0, 0.1, 0.0, 0.0}, q, MaxwellMode::frozen, false);
    }();
    return t;
}

const cplx I(0.0, 1.0);

}  // namespace

TEST_CASE("one-sector moment structure") {
    const auto& t = table();
    const auto m0 = assemble_moment(0, 0, PerturbationKind::dirac, 1, t);
    REQUIRE(m0.entries.size() == 3);
    for (const auto& e : m0.entries) {
        CHECK(e.channel == Channel::axial);
        CHECK(e.coefficient == I * t.get(Coefficient::C0).value / 3.0);
        CHECK(max_abs(e.matrix - gamma5() * bilinear_gamma(e.index)) == 0.0);
    }
    const auto m1 = assemble_moment(1, 0, PerturbationKind::dirac, 1, t);
    REQUIRE(m1.entries.size() == 4);
    CHECK(m1.entries[0].basis == "g5");
    CHECK(m1.entries[0].index == 0);
    CHECK(m1.entries[0].coefficient == I * t.get(Coefficient::Ct_PS).value);
    CHECK(m1.entries[1].coefficient == cplx(t.get(Coefficient::Ct_PB).value));
    const auto m2 = assemble_moment(1, 2, PerturbationKind::dirac, 1, t);
    REQUIRE(m2.entries.size() == 2);
    CHECK(m2.entries[0].index == 2);
    CHECK(m2.entries[0].coefficient == I * t.get(Coefficient::Cr_PS).value);
    CHECK(m2.entries[1].index == 0);
    CHECK(m2.entries[1].coefficient == cplx(t.get(Coefficient::Cr_PB).value));
}

TEST_CASE("two-sector moment structure") {
    const auto& t = table();
    const auto m0 = assemble_moment(0, 0, PerturbationKind::dirac, 2, t);
    REQUIRE(m0.entries.size() == 4);
    CHECK(m0.entries[0].channel == Channel::vector);
    CHECK(m0.entries[0].coefficient == cplx(2.0 * t.get(Coefficient::C0).value));
    CHECK(std::abs(m0.entries[1].coefficient - 5.0 * I / 6.0 * t.get(Coefficient::C0).value) <
          1e-15 * std::abs(t.get(Coefficient::C0).value));
    const auto mv = assemble_moment(1, 0, PerturbationKind::vector_maxwell, 2, t);
    for (const auto& e : mv.entries) CHECK(e.channel == Channel::vector);
    CHECK(mv.entries[0].coefficient == I * t.get(Coefficient::Ct_S, Family::maxwell).value);
}

TEST_CASE("unsupported combinations") {
    const auto& t = table();
    CHECK_THROWS_AS(assemble_moment(0, 0, PerturbationKind::vector_maxwell, 1, t), std::invalid_argument);
    CHECK_THROWS_AS(assemble_moment(0, 0, PerturbationKind::axial_maxwell, 2, t), std::invalid_argument);
    CHECK_THROWS_AS(assemble_moment(2, 0, PerturbationKind::dirac, 1, t), std::invalid_argument);
    CHECK_THROWS_AS(assemble_moment(1, 4, PerturbationKind::dirac, 1, t), std::invalid_argument);
    CHECK_THROWS_AS(assemble_moment(0, 0, PerturbationKind::dirac, 3, t), std::invalid_argument);
}

TEST_CASE("moments are linear in the currents") {
    const auto& t = table();
    Gen g(80);
    for (int k = 0; k < 20; ++k) {
        const SpinorValue a{g.spinor()}, b{g.spinor()};
        const CurrentValues ja{lower_index(a.vector_current()), lower_index(a.axial_current())};
        const CurrentValues jb{lower_index(b.vector_current()), lower_index(b.axial_current())};
        CurrentValues sum;
        for (int mu = 0; mu < 4; ++mu) {
            sum.vector[mu] = ja.vector[mu] + jb.vector[mu];
            sum.axial[mu] = ja.axial[mu] + jb.axial[mu];
        }
        for (int sectors : {1, 2})
            for (int order : {0, 1})
                for (int mu = 0; mu < 4; ++mu) {
                    const auto m = assemble_moment(order, mu, PerturbationKind::dirac, sectors, t);
                    const SpinMatrix lhs = materialize(m, sum), rhs = materialize(m, ja) + materialize(m, jb);
                    CHECK((lhs - rhs).norm() <= 1e-10 * lhs.norm());
                }
    }
}

TEST_CASE("potential with a prescribed current") {
    Gen g(81);
    const std::array<double, 4> j{g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1)};
    const auto a = potential_with_current(j);
    for (int mu = 0; mu < 4; ++mu) {
        const Point4 x{g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1)};
        CHECK(-a.current(mu).evaluate(x) == doctest::Approx(j[mu]).epsilon(1e-14));
    }
}

TEST_CASE("cancellation of matched pairs") {
    const auto& t = table();
    const auto alpha = coupling_alpha(t).alpha;
    Gen g(82);
    for (int k = 0; k < 10; ++k) {
        const SpinorValue phi{g.spinor()};
        for (int sectors : {1, 2}) {
            const auto rep = verify_cancellation(phi, t, alpha, sectors);
            CHECK(rep.max_residual <= 1e-6);
            for (double n : rep.dirac_norm) CHECK(n > 0.0);
            const auto twice = verify_cancellation(phi, t, 2 * alpha, sectors);
            for (double r : twice.residuals) CHECK(std::abs(r - 0.5) <= 1e-6);
        }
    }
    const auto zero = verify_cancellation(SpinorValue{}, t, alpha, 1);
    for (double r : zero.residuals) CHECK(r == 0.0);
    CHECK(zero.max_residual == 0.0);
}
