#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cfs/coeffs.hpp"
#include "support.hpp"

#include <cmath>
#include <numbers>

using namespace cfs;
using testsupport::Gen;

namespace {

constexpr double pi = std::numbers::pi;

QuadratureSpec spec(double tol, double len = 40.0) {
    QuadratureSpec q;
    q.rel_tol = tol;
    q.domain_scale = len;
    return q;
}

}  // namespace

TEST_CASE("angular weights") {
    for (int i = 1; i <= 3; ++i) {
        CHECK(angular_weight(i) == 0.0);
        for (int j = 1; j <= 3; ++j) CHECK(angular_weight(i, j) == (i == j ? 4 * pi / 3 : 0.0));
    }
    CHECK_THROWS_AS(angular_weight(0, 1), std::out_of_range);

    // Monte-Carlo sphere averages.
    Gen g(70);
    const int n = 200000;
    double s12 = 0.0, s11 = 0.0, s1 = 0.0;
    for (int k = 0; k < n; ++k) {
        const auto u = g.unit();
        s12 += u[0] * u[1];
        s11 += u[0] * u[0];
        s1 += u[0];
    }
    const double sigma = 4 * pi / std::sqrt(double(n));
    CHECK(std::abs(4 * pi * s12 / n - angular_weight(1, 2)) < 5 * sigma);
    CHECK(std::abs(4 * pi * s11 / n - angular_weight(1, 1)) < 5 * sigma);
    CHECK(std::abs(4 * pi * s1 / n - angular_weight(1)) < 5 * sigma);
}

TEST_CASE("quadrature spec validation") {
    CHECK_NOTHROW(spec(1e-8).validate());
    CHECK_THROWS_AS(spec(1e-11).validate(), std::invalid_argument);
    CHECK_THROWS_AS(spec(1e-2).validate(), std::invalid_argument);
    CHECK_THROWS_AS(spec(1e-8, 5.0).validate(), std::invalid_argument);
    CHECK(parse_coefficient("Ct_PB") == Coefficient::Ct_PB);
    CHECK(!parse_coefficient("C1").has_value());
    for (auto c : kAllCoefficients) CHECK(parse_coefficient(coefficient_name(c)) == c);
}

TEST_CASE("coefficient table at the default parameters") {
    const Params p{1.0, 0.1, 0.0, 0.0};
    const auto t = coefficient_table(p, spec(1e-8), MaxwellMode::frozen, false);
    for (auto c : kAllCoefficients) {
        const auto& v = t.get(c);
        INFO(coefficient_name(c));
        CHECK(std::isfinite(v.value));
        CHECK(v.error <= 1e-8 * std::abs(v.value));
    }
    SUBCASE("parity probes vanish") {
        for (int i = 0; i < 2; ++i) CHECK(std::abs(t.parity_probes[i].value) <= 1e-8 * t.parity_scales[i]);
    }
    SUBCASE("pseudo-bilinear identities") {
        const auto id_t = t.get(Coefficient::Ct_PB).value - t.get(Coefficient::Cr_PS).value;
        const auto id_r = t.get(Coefficient::Cr_PB).value - t.get(Coefficient::Ct_PS).value;
        const double et = t.get(Coefficient::Ct_PB).error + t.get(Coefficient::Cr_PS).error + t.pb_minus_ps_t.error;
        const double er = t.get(Coefficient::Cr_PB).error + t.get(Coefficient::Ct_PS).error + t.pb_minus_ps_r.error;
        CHECK(std::abs(id_t - t.pb_minus_ps_t.value) <= et);
        CHECK(std::abs(id_r - t.pb_minus_ps_r.value) <= er);
        CHECK(std::abs(t.pb_minus_ps_t.value) > 100 * et);
    }
    SUBCASE("frozen ratios") {
        const auto a = coupling_alpha(t);
        CHECK(a.ratio_spread <= 1e-8);
        CHECK(1.0 / a.alpha == doctest::Approx(frozen_ratio(p)).epsilon(1e-10));
        CHECK(a.alpha == doctest::Approx(192 * pi * pi).epsilon(1e-10));
        // The paper's closed form uses 196 and is not reproduced.
        CHECK(std::abs(a.alpha / alpha_closed_form(0.0) - 1.0) > 0.02);
    }
    SUBCASE("single coefficient matches the table") {
        const auto v = coefficient(Coefficient::Cr_S, p, spec(1e-8));
        CHECK(v.value == t.get(Coefficient::Cr_S).value);
    }
}

TEST_CASE("halving the tolerance stays within the error estimates") {
    const Params p{1.0, 0.1, 0.0, 0.0};
    const auto a = coefficient_table(p, spec(1e-6), MaxwellMode::frozen, false);
    const auto b = coefficient_table(p, spec(5e-7), MaxwellMode::frozen, false);
    for (auto c : kAllCoefficients) {
        INFO(coefficient_name(c));
        CHECK(std::abs(a.get(c).value - b.get(c).value) <= a.get(c).error + b.get(c).error);
    }
}

TEST_CASE("negative alpha is allowed") {
    const Params p{1.0, 0.1, 1.0 / (64 * pi * pi * pi), 0.0};
    const auto a = coupling_alpha(p, spec(1e-6));
    CHECK(a.alpha < 0.0);
    CHECK(1.0 / a.alpha == doctest::Approx(frozen_ratio(p)).epsilon(1e-8));
    CHECK(alpha_closed_form(p.c) < 0.0);
}

TEST_CASE("alpha does not depend on epsilon") {
    const Params base{1.0, 0.1, 0.001, 0.0};
    const auto rows = epsilon_scan({0.1, 0.01, 0.03}, base, spec(1e-6));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].epsilon == 0.01);
    CHECK(rows[2].epsilon == 0.1);
    for (const auto& r : rows) CHECK(r.alpha.alpha == doctest::Approx(rows[0].alpha.alpha).epsilon(1e-6));
    const double slope = std::log(rows[2].peak / rows[0].peak) / std::log(rows[2].epsilon / rows[0].epsilon);
    CHECK(std::abs(slope + 8.0) < 0.05);
    // A single-epsilon scan reproduces the table.
    Params p = base;
    p.epsilon = 0.03;
    const auto single = epsilon_scan({0.03}, base, spec(1e-6));
    const auto t = coefficient_table(p, spec(1e-6), MaxwellMode::frozen, false);
    for (auto c : kAllCoefficients) CHECK(single[0].table.get(c).value == t.get(c).value);
    CHECK_THROWS_AS(epsilon_scan({0.1, 0.0}, base, spec(1e-6)), std::invalid_argument);
}

TEST_CASE("tail diagnostic") {
    const Params p{1.0, 0.1, 0.0, 0.0};
    const auto t = coefficient_table(p, spec(1e-6), MaxwellMode::frozen, true);
    MESSAGE("relative change on doubling the domain: " << t.tail_change);
    CHECK(std::isfinite(t.tail_change));
    // The truncated integrals are not converged in the box size.
    QuadratureSpec strict = spec(1e-6);
    strict.enforce_tail = true;
    CHECK_THROWS_AS(coefficient_table(p, strict), QuadratureError);
}

TEST_CASE("subdivision budget failure is reported") {
    QuadratureSpec q = spec(1e-10);
    q.max_subdivisions = 3;
    CHECK_THROWS_AS(coefficient_table(Params{1.0, 0.1, 0.0, 0.0}, q, MaxwellMode::frozen, false), QuadratureError);
}

TEST_CASE("exact mode breaks the proportionality") {
    const Params p{1.0, 0.1, 0.0, 0.0};
    const auto t = coefficient_table(p, spec(1e-6), MaxwellMode::exact, false);
    const auto a = coupling_alpha(t);
    MESSAGE("exact-mode ratio spread " << a.ratio_spread);
    CHECK(a.ratio_spread > 1e-6);
}
