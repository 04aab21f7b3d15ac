#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cfs/besselt.hpp"
#include "support.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace cfs;
using std::numbers::pi;
using testsupport::Gen;
using testsupport::rel;

namespace {

// Trapezoid rule on int_0^inf exp(-z cosh u) cosh(nu u) du; the integrand is
// analytic and decays doubly exponentially, so the rule converges spectrally.
cplx k_integral_oracle(int nu, cplx z) {
    const double h = 1e-3;
    cplx s = 0.5 * std::exp(-z);
    for (int i = 1;; ++i) {
        const double u = i * h;
        const cplx term = std::exp(-z * std::cosh(u)) * std::cosh(nu * u);
        s += term;
        if (std::abs(term) < 1e-20 * std::abs(s) && u > 1.0) break;
    }
    return s * h;
}

struct Ref {
    double re, im;
    std::array<std::array<double, 2>, 4> k;
};

// High-precision reference values (30 significant digits arithmetic).
const std::vector<Ref> refs = {
    {0.05, 5, {{{0.45954329220215314724, 0.26757286654969180025}, {0.48865758045813982845, 0.22360467998744707333}, {0.55093065578260649065, 0.07302370800224040236}, {0.55147771009322949354, -0.21651164334228722251}}}},
    {0.01, 10, {{{-0.086767608706970929207, 0.38242306229062542674}, {-0.067804914846428275019, 0.38724061608508115743}, {-0.0093331239074087829387, 0.3960614797447106439}, {0.090615785381192791405, 0.39113228634827229168}}}},
    {0.3, 2.5, {{{-0.57704337923211979834, 0.02272461242997581861}, {-0.5948662287478126436, 0.13220551329972722549}, {-0.52907684465010898528, 0.50437357957806723085}, {0.10053496718287214414, 1.0621766082515837734}}}},
    {0.001, 0.5, {{{0.69862698597935465881, -1.4718339015743368942}, {-0.37663004282345101632, -2.3106630016172844517}, {-8.5470010783201135584, 0.016195013590868234268}, {-0.38382192258210792733, 66.065331241184106702}}}},
    {2.1, 0.2, {{{0.09762329679721685667, -0.02424925167061689987}, {0.1182642824768913986, -0.031363395476777319107}, {0.20642433684490964897, -0.064481155938756516208}, {0.49632709253222527863, -0.19019062679396438145}}}},
    {15.9, 3, {{{-3.8418367714583860718e-8, -1.9110371134234102601e-9}, {-3.957941145556344924e-8, -1.754295992028071185e-9}, {-4.3265971168382745735e-8, -1.2170611148485352643e-9}, {-5.0145549111448728618e-8, -6.6864010376392161269e-11}}}},
    {0.5, 15.5, {{{-0.16414882616200337976, 0.10138483240459079453}, {-0.16114315285257800546, 0.10682093888343404832}, {-0.15104984091238226752, 0.12260004520007250853}, {-0.13079345172750635891, 0.1467805656067930737}}}},
    {1e-05, 1e-05, {{{11.282283390387938041, -0.7853981627833341401}, {49999.999937161588143, -50000.000054984422046}, {-0.49999999998036504592, -9999999999.9999983636}, {-2000000000049999.5092, -1999999999949999.5092}}}},
    {100, 400, {{{2.5102498078609921589e-46, 2.2822126705928871314e-45}, {2.5378313760741961665e-46, 2.2825901512341023622e-45}, {2.6206514989497430891e-46, 2.2837037971820688066e-45}, {2.7589344428653314497e-46, 2.2854970764049310012e-45}}}},
    {0.2, -7, {{{0.038822191042519345198, 0.38513872831116008284}, {0.011693320060967734924, 0.38961716270145540464}, {-0.072310821799976343429, 0.39165490583836502696}, {-0.21310655801640179672, 0.35471954676082233823}}}},
};

RegularizedXi xi_at(double t, double r, double eps) { return RegularizedXi::make(t, {0.0, 0.0, r}, eps); }

}  // namespace

TEST_CASE("K1(1) against the integral representation") {
    const cplx k1 = bessel_k(1, 1.0);
    CHECK(std::abs(k1 - 0.601907230197235) < 1e-14);
    CHECK(rel(k1, k_integral_oracle(1, 1.0)) < 1e-12);
}

TEST_CASE("K_nu against the integral representation away from the imaginary axis") {
    Gen g(21);
    for (int k = 0; k < 200; ++k) {
        const double mod = std::exp(g.uniform(std::log(0.05), std::log(40.0)));
        const double arg = g.uniform(-1.1, 1.1);
        const cplx z = std::polar(mod, arg);
        for (int nu = 0; nu <= 3; ++nu) CHECK(rel(bessel_k(nu, z), k_integral_oracle(nu, z)) < 1e-10);
    }
}

TEST_CASE("K_nu against high-precision references including near-imaginary arguments") {
    for (const auto& r : refs) {
        const cplx z(r.re, r.im);
        const auto k = bessel_k_all(z);
        for (int nu = 0; nu <= 3; ++nu) {
            INFO("z = " << z << " nu = " << nu);
            CHECK(rel(k[nu], cplx(r.k[nu][0], r.k[nu][1])) < 1e-10);
        }
    }
}

TEST_CASE("recurrence and reflection") {
    Gen g(22);
    for (int k = 0; k < 200; ++k) {
        const double mod = std::exp(g.uniform(std::log(1e-4), std::log(100.0)));
        const cplx z = std::polar(mod, g.uniform(-1.55, 1.55));
        const auto kk = bessel_k_all(z);
        CHECK(std::abs(kk[2] - kk[0] - 2.0 / z * kk[1]) <= 1e-10 * std::abs(kk[2]));
        for (int nu = 0; nu <= 3; ++nu) CHECK(rel(bessel_k(nu, std::conj(z)), std::conj(kk[nu])) < 1e-13);
    }
}

TEST_CASE("continuity across the evaluation regions") {
    for (double mod : {2.0, 16.0})
        for (double arg : {0.0, 0.7, 1.4, -1.5}) {
            const cplx a = std::polar(mod * (1 - 1e-12), arg), b = std::polar(mod * (1 + 1e-12), arg);
            for (int nu = 0; nu <= 3; ++nu) CHECK(rel(bessel_k(nu, a), bessel_k(nu, b)) < 1e-10);
        }
}

TEST_CASE("working domain is enforced") {
    CHECK_THROWS_AS(bessel_k(0, cplx(1e-8, 0)), std::domain_error);
    CHECK_THROWS_AS(bessel_k(0, cplx(2e4, 0)), std::domain_error);
    CHECK_THROWS_AS(bessel_k(0, cplx(-1, 0.1)), std::domain_error);
    CHECK_THROWS_AS(bessel_k(4, cplx(1, 0)), std::out_of_range);
}

TEST_CASE("z argument") {
    Params p{1.0, 0.1, 0.0, 0.0};
    CHECK(rel(z_arg(xi_at(0, 0, 0.1), p), cplx(0.1)) < 1e-15);
    const cplx zs = z_arg(xi_at(0, 0.3, 0.1), p);
    CHECK(std::abs(zs.imag()) == 0.0);
    CHECK(std::abs(zs.real() - std::sqrt(0.1)) < 1e-15);
    Gen g(23);
    for (int k = 0; k < 100; ++k) {
        const double t = g.uniform(-1, 1), r = g.uniform(0, 1);
        const cplx z = z_arg(xi_at(t, r, 0.1), p);
        CHECK(z.real() > 0.0);
        if (t != 0.0) CHECK((z.imag() > 0) == (t > 0));
        CHECK(rel(z_arg(xi_at(-t, r, 0.1), p), std::conj(z)) < 1e-15);
        const auto xi = xi_at(t, r, 0.1);
        CHECK(std::abs(xi.minus_square() - cplx(r * r - t * t + 0.01, 0.2 * t)) < 1e-15);
    }
}

TEST_CASE("T family closed forms") {
    Params p{1.0, 1e-3, 0.0, 0.0};
    const cplx t0 = t_family(0, xi_at(0, 0, p.epsilon), p);
    CHECK(std::abs(t0.imag()) == 0.0);
    CHECK(std::abs(t0.real() * 8 * pi * pi * pi * p.epsilon * p.epsilon - 1.0) < 1e-5);
    CHECK_THROWS_AS(t_family(4, xi_at(0, 0, 0.1), p), std::out_of_range);
    CHECK_THROWS_AS(t_family(-3, xi_at(0, 0, 0.1), p), std::out_of_range);

    Gen g(24);
    Params q{2.0, 0.05, 0.0, 0.0};
    for (int k = 0; k < 50; ++k) {
        const double t = g.uniform(-0.3, 0.3), r = g.uniform(0, 0.3);
        const auto a = t_family_all(xi_at(t, r, q.epsilon), q);
        const auto b = t_family_all(xi_at(-t, r, q.epsilon), q);
        for (int i = 0; i < 6; ++i) CHECK(rel(b[i], std::conj(a[i])) < 1e-13);
        // Explicit low orders.
        const cplx z = z_arg(xi_at(t, r, q.epsilon), q);
        const auto kk = bessel_k_all(z);
        const double c = 8 * pi * pi * pi;
        const double m = q.mass;
        CHECK(rel(a[2], m * m * kk[1] / (c * z)) < 1e-14);
        CHECK(rel(a[1], -2.0 * std::pow(m, 4) * kk[2] / (c * z * z)) < 1e-14);
        CHECK(rel(a[3], -kk[0] / (2.0 * c)) < 1e-14);
        CHECK(rel(a[0], 4.0 * std::pow(m, 6) * kk[3] / (c * z * z * z)) < 1e-14);
    }
}

namespace {

// Central differences of T^(n+1) in t and in the radial direction.
std::pair<double, double> ladder_error(int n, double t, double r, double h, const Params& p) {
    auto T = [&](double tt, double rr) { return t_family(n + 1, xi_at(tt, rr, p.epsilon), p); };
    const cplx dt = (T(t + h, r) - T(t - h, r)) / (2 * h);
    const cplx dr = (T(t, r + h) - T(t, r - h)) / (2 * h);
    const cplx tn = t_family(n, xi_at(t, r, p.epsilon), p);
    // d/dy^0 T = -(xi_0/2) T^(n) along x; in terms of y (t = y0 - x0), d/dt T = (xi^0/2)... sign
    // is fixed by d/dx^mu = -d/dy^mu: d/dt T^(n+1) = -(xi_0/2) T^(n) and d/dr T^(n+1) = -(xi_r/2)T^(n)
    // with xi_r = xi_i r_hat^i = -r.
    const cplx et = -0.5 * cplx(t, -p.epsilon) * tn;
    const cplx er = 0.5 * r * tn;
    return {std::abs(dt - et) / std::abs(et), std::abs(dr - er) / std::abs(er)};
}

}  // namespace

TEST_CASE("ladder relation by finite differences, second order") {
    Params p{1.0, 0.1, 0.0, 0.0};
    for (int n : {-2, -1, 0, 1, 2}) {
        const double t = 0.13, r = 0.21;
        std::vector<double> et, er;
        for (double h : {p.epsilon / 20, p.epsilon / 40, p.epsilon / 80}) {
            const auto e = ladder_error(n, t, r, h, p);
            et.push_back(e.first);
            er.push_back(e.second);
        }
        const double st = std::log2(et[0] / et[2]) / 2, sr = std::log2(er[0] / er[2]) / 2;
        INFO("n = " << n << " slopes " << st << " " << sr);
        CHECK(std::abs(st - 2.0) < 0.1);
        CHECK(std::abs(sr - 2.0) < 0.1);
        CHECK(et[2] < 1e-3);
    }
}

TEST_CASE("Klein-Gordon ladder for T1") {
    Params p{1.0, 0.1, 0.0, 0.0};
    const double h = p.epsilon / 50;
    const double t = 0.07, r = 0.18;
    // box = d_t^2 - laplacian; the radial laplacian of a function of r is f'' + 2 f'/r.
    auto T1 = [&](double tt, double rr) { return t_family(1, xi_at(tt, rr, p.epsilon), p); };
    const cplx f = T1(t, r);
    const cplx ftt = (T1(t + h, r) - 2.0 * f + T1(t - h, r)) / (h * h);
    const cplx frr = (T1(t, r + h) - 2.0 * f + T1(t, r - h)) / (h * h);
    const cplx fr = (T1(t, r + h) - T1(t, r - h)) / (2 * h);
    const cplx lhs = ftt - frr - 2.0 * fr / r + p.mass * p.mass * f;
    const cplx t0 = t_family(0, xi_at(t, r, p.epsilon), p);
    CHECK(std::abs(lhs + t0) / std::abs(t0) < 1e-4);
}

TEST_CASE("Fig. 1 shape and peak scaling") {
    Params p{1.0, 0.1, 0.0, 0.0};
    const double e = p.epsilon;
    auto mag = [&](double t, double r) { return std::abs(t_family(-1, xi_at(t, r, e), p)); };
    CHECK(mag(2 * e, 2 * e) > mag(0, 2 * std::sqrt(2.0) * e));
    CHECK(std::abs(mag(0.13, 0.2) - mag(-0.13, 0.2)) < 1e-12 * mag(0.13, 0.2));

    std::vector<double> x, y;
    for (int i = 0; i <= 10; ++i) {
        const double eps = 0.02 * std::pow(10.0, i / 10.0);
        const double v = std::norm(t_family(-1, xi_at(0, 0, eps), p));
        x.push_back(std::log(eps));
        y.push_back(std::log(v));
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= x.size();
    my /= x.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
    CHECK(std::abs(sxy / sxx + 8.0) < 0.05);
    // With the ladder normalization the peak is 1/(4 pi^6 eps^8) at leading order.
    const double peak = std::norm(t_family(-1, xi_at(0, 0, 1e-3), p));
    CHECK(std::abs(peak * 4 * std::pow(pi, 6) * std::pow(1e-3, 8) - 1.0) < 1e-5);
}

TEST_CASE("momentum oracle") {
    Params p{1.0, 0.1, 0.0, 0.0};
    const double e = p.epsilon;
    const auto o0 = momentum_oracle(OracleComponent::scalar, xi_at(0, 0, e), p, 1e-10);
    CHECK(o0.value.real() > 0);
    CHECK(std::abs(o0.value.imag()) <= 1e-12 * o0.value.real());
    CHECK(rel(o0.value, t_family(0, xi_at(0, 0, e), p)) < 1e-9);

    // damping: the exponential factor at k = 10/eps is below e^{-10}; the
    // polynomial prefactor k/2 is not damped, so the full integrand ratio is
    // 10 e^{-9} rather than e^{-10}.
    {
        const auto xi = xi_at(0, 0, e);
        const double k = 10 / e;
        const double w = std::sqrt(k * k + 1);
        const double envelope = std::abs(momentum_integrand(OracleComponent::scalar, k, xi, p)) / (k * k / (2 * w));
        const double pref = 4 * pi / std::pow(2 * pi, 4);
        CHECK(envelope <= std::exp(-10.0) * pref);
        double peak = 0;
        for (int i = 1; i < 2000; ++i)
            peak = std::max(peak, std::abs(momentum_integrand(OracleComponent::scalar, i * 0.01 / e, xi, p)));
        const double ratio = std::abs(momentum_integrand(OracleComponent::scalar, k, xi, p)) / peak;
        CHECK(ratio == doctest::Approx(10 * std::exp(-9.0)).epsilon(1e-3));
    }

    Gen g(25);
    for (int k = 0; k < 5; ++k) {
        const double t = g.uniform(-5 * e, 5 * e), r = g.uniform(0, 5 * e);
        const auto xi = xi_at(t, r, e);
        const auto s = momentum_oracle(OracleComponent::scalar, xi, p, 1e-10);
        const auto v0 = momentum_oracle(OracleComponent::vector0, xi, p, 1e-10);
        const auto vr = momentum_oracle(OracleComponent::vector_r, xi, p, 1e-10);
        const cplx tm1 = t_family(-1, xi, p);
        CHECK(rel(s.value, t_family(0, xi, p)) < 1e-8);
        CHECK(rel(v0.value, cplx(0, 0.5) * tm1 * xi.xi0) < 1e-8);
        CHECK(rel(vr.value, -cplx(0, 0.5) * tm1 * r) < 1e-8);
    }
    // vector0 at t = 0: (i/2) T^(-1) (-i eps) is real.
    const auto v0 = momentum_oracle(OracleComponent::vector0, xi_at(0, 0.2, e), p, 1e-10);
    CHECK(std::abs(v0.value.imag()) < 1e-9 * std::abs(v0.value));
    CHECK_THROWS_AS(momentum_oracle(OracleComponent::scalar, xi_at(0, 0, e), p, 1e-12), std::invalid_argument);
}
