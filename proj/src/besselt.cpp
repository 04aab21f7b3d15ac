#include "cfs/besselt.hpp"

#include "cfs/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cfs {

using std::numbers::pi;

void Params::validate() const {
    if (!(mass > 0.0) || !std::isfinite(mass)) throw std::invalid_argument("mass must be > 0");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw std::invalid_argument("epsilon must be > 0");
    if (!std::isfinite(c)) throw std::invalid_argument("c must be finite");
    if (lagrange_r != 0.0) throw std::invalid_argument("lagrange_r is fixed to 0");
}

RegularizedXi RegularizedXi::make(double t, const Vec3& rvec, double eps) {
    return RegularizedXi{cplx(t, -eps), rvec};
}

RegularizedXi RegularizedXi::from(const SpacetimeDisplacement& d, const Params& p) {
    if (d.r < 0.0) throw std::invalid_argument("r must be >= 0");
    return make(d.t, {d.r * d.direction[0], d.r * d.direction[1], d.r * d.direction[2]},
                p.epsilon);
}

double RegularizedXi::r() const {
    return std::sqrt(spatial[0] * spatial[0] + spatial[1] * spatial[1] + spatial[2] * spatial[2]);
}

Vec3 RegularizedXi::direction() const {
    const double rr = r();
    if (rr == 0.0) return {0.0, 0.0, 1.0};
    return {spatial[0] / rr, spatial[1] / rr, spatial[2] / rr};
}

std::array<cplx, 4> RegularizedXi::upper() const {
    return {xi0, spatial[0], spatial[1], spatial[2]};
}

std::array<cplx, 4> RegularizedXi::lower() const {
    return {xi0, -spatial[0], -spatial[1], -spatial[2]};
}

RegularizedXi RegularizedXi::reversed() const {
    return RegularizedXi{-std::conj(xi0), {-spatial[0], -spatial[1], -spatial[2]}};
}

cplx RegularizedXi::minus_square() const {
    const double rr = r();
    return rr * rr - xi0 * xi0;
}

double RegularizedXi::dot_conj() const {
    const double rr = r();
    return std::norm(xi0) - rr * rr;
}

cplx z_arg(const RegularizedXi& xi, const Params& p) { return p.mass * std::sqrt(xi.minus_square()); }

namespace {

constexpr double euler_gamma = 0.57721566490153286060651209008240243;

// K0, K1 by the ascending series with the logarithmic term.
std::array<cplx, 2> k01_series(cplx z) {
    const cplx q = 0.25 * z * z;
    const cplx lg = std::log(0.5 * z);
    cplx term0 = 1.0;      // (z^2/4)^k / (k!)^2
    cplx term1 = 1.0;      // (z^2/4)^k / (k!(k+1)!)
    cplx i0 = 0.0, i1s = 0.0, s0 = 0.0, s1 = 0.0;
    double psi_k1 = -euler_gamma;        // psi(k+1)
    double psi_k2 = 1.0 - euler_gamma;   // psi(k+2)
    for (int k = 0; k < 60; ++k) {
        i0 += term0;
        i1s += term1;
        s0 += psi_k1 * term0;
        s1 += (psi_k1 + psi_k2) * term1;
        if (std::abs(term0) < 1e-18 * std::abs(i0) && k > 2) break;
        term0 *= q / double((k + 1) * (k + 1));
        term1 *= q / double((k + 1) * (k + 2));
        psi_k1 += 1.0 / (k + 1);
        psi_k2 += 1.0 / (k + 2);
    }
    const cplx K0 = -lg * i0 + s0;
    const cplx I1 = 0.5 * z * i1s;
    const cplx K1 = 1.0 / z + lg * I1 - 0.25 * z * s1;
    return {K0, K1};
}

cplx k_asymptotic(int nu, cplx z) {
    const double mu = 4.0 * nu * nu;
    cplx term = 1.0, sum = 1.0;
    double prev = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * k) / z;
        const double a = std::abs(term);
        if (a > prev) break;
        sum += term;
        if (a < 1e-17 * std::abs(sum)) break;
        prev = a;
    }
    return std::sqrt(pi / (2.0 * z)) * std::exp(-z) * sum;
}

// K_nu(z) = sqrt(pi/(2z)) e^{-z} / Gamma(nu+1/2) * int_0^inf e^{-s} s^{nu-1/2} (1 + s/(2z))^{nu-1/2} ds,
// with s = w^2.
std::array<cplx, 2> k01_integral(cplx z) {
    const cplx inv2z = 0.5 / z;
    auto f = [&](double w) {
        const double e = std::exp(-w * w);
        const cplx q = std::sqrt(1.0 + w * w * inv2z);
        const cplx f0 = 2.0 * e / q;
        const cplx f1 = 2.0 * e * w * w * q;
        quad::Vec v(4);
        v << f0.real(), f0.imag(), f1.real(), f1.imag();
        return v;
    };
    quad::Options opt;
    opt.rel_tol = 1e-14;
    opt.abs_tol = 1e-300;
    opt.max_intervals = 200;
    const auto res = quad::integrate(f, 4, 0.0, 7.0, {1.0, 2.0, 3.0, 4.5}, opt);
    const cplx pref = std::sqrt(pi / (2.0 * z)) * std::exp(-z);
    const cplx I0(res.value[0], res.value[1]);
    const cplx I1(res.value[2], res.value[3]);
    return {pref * I0 / std::sqrt(pi), pref * I1 / (0.5 * std::sqrt(pi))};
}

std::array<cplx, 2> k01(cplx z) {
    const double az = std::abs(z);
    if (!(z.real() > 0.0) || az < 1e-6 || az > 1e4 || !std::isfinite(az))
        throw std::domain_error("bessel_k: argument outside the working domain (Re z > 0, "
                                "1e-6 <= |z| <= 1e4)");
    if (az <= 2.0) return k01_series(z);
    if (az >= 16.0) return {k_asymptotic(0, z), k_asymptotic(1, z)};
    return k01_integral(z);
}

}  // namespace

std::array<cplx, 4> bessel_k_all(cplx z) {
    const auto k = k01(z);
    std::array<cplx, 4> out{k[0], k[1], 0.0, 0.0};
    out[2] = out[0] + 2.0 / z * out[1];
    out[3] = out[1] + 4.0 / z * out[2];
    return out;
}

cplx bessel_k(int nu, cplx z) {
    if (nu < 0 || nu > 3) throw std::out_of_range("bessel_k: nu must be 0..3");
    return bessel_k_all(z)[nu];
}

namespace {

// T^(n) = (-s^2/2)^n z^{1-n} K_{|1-n|}(z) / (8 pi^3 s^2), s^2 = z^2/m^2.
cplx t_from(int n, cplx z, const std::array<cplx, 4>& k, double m) {
    const cplx s2 = z * z / (m * m);
    const int nu = std::abs(1 - n);
    return std::pow(-0.5 * s2, n) * std::pow(z, 1 - n) * k[nu] / (8.0 * pi * pi * pi * s2);
}

}  // namespace

std::array<cplx, 6> t_family_all(const RegularizedXi& xi, const Params& p) {
    const cplx z = z_arg(xi, p);
    const auto k = bessel_k_all(z);
    std::array<cplx, 6> out{};
    for (int n = kMinTOrder; n <= kMaxTOrder; ++n) out[n - kMinTOrder] = t_from(n, z, k, p.mass);
    return out;
}

cplx t_family(int n, const RegularizedXi& xi, const Params& p) {
    if (n < kMinTOrder || n > kMaxTOrder)
        throw std::out_of_range("t_family: unsupported order " + std::to_string(n));
    const cplx z = z_arg(xi, p);
    return t_from(n, z, bessel_k_all(z), p.mass);
}

namespace {

double sinc(double x) {
    if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

// j1(x) / x, regular at 0.
double j1_over_x(double x) {
    if (std::abs(x) < 1e-2) {
        const double x2 = x * x;
        return 1.0 / 3.0 - x2 / 30.0 + x2 * x2 / 840.0;
    }
    return (std::sin(x) - x * std::cos(x)) / (x * x * x);
}

}  // namespace

cplx momentum_integrand(OracleComponent c, double k, const RegularizedXi& xi, const Params& p) {
    const double m = p.mass;
    const double w = std::sqrt(k * k + m * m);
    const double r = xi.r();
    const double pref = 4.0 * pi / std::pow(2.0 * pi, 4);
    const cplx phase = std::exp(cplx(0.0, -w) * xi.xi0);
    const double base = pref * k * k / (2.0 * w);
    switch (c) {
        case OracleComponent::scalar:
            return base * sinc(k * r) * phase;
        case OracleComponent::vector0:
            return -w * base * sinc(k * r) * phase;
        case OracleComponent::vector_r:
            // i 4 pi k j1(kr) r_hat: j1(kr) = kr * j1(kr)/(kr).
            return cplx(0.0, 1.0) * base * k * (k * r) * j1_over_x(k * r) * phase;
    }
    return 0.0;
}

OracleResult momentum_oracle(OracleComponent c, const RegularizedXi& xi, const Params& p,
                             double tol) {
    p.validate();
    if (!(tol >= 1e-10)) throw std::invalid_argument("momentum_oracle: tol must be >= 1e-10");
    const double eps = xi.eps();
    const double m = p.mass;
    // Integrand is bounded by pref * k^3 e^{-eps k} (times w for vector0).
    const double kmax = 60.0 / eps;
    const double pref = 4.0 * pi / std::pow(2.0 * pi, 4);
    auto f = [&](double k) {
        const cplx v = momentum_integrand(c, k, xi, p);
        quad::Vec out(2);
        out << v.real(), v.imag();
        return out;
    };
    const double scale = std::max({std::abs(xi.t()), xi.r(), eps});
    const int panels = std::max(16, static_cast<int>(kmax * scale / 2.0));
    std::vector<double> breaks;
    for (int i = 1; i < panels; ++i) breaks.push_back(kmax * i / panels);
    quad::Options opt;
    opt.rel_tol = 0.1 * tol;
    opt.l1_floor = 1e-3 * tol;
    opt.max_intervals = 20000;
    const auto res = quad::integrate(f, 2, 0.0, kmax, breaks, opt);
    const cplx value(res.value[0], res.value[1]);
    // Tail bound: int_K^inf k^3 (k + m) e^{-eps k} dk / 2, generous polynomial envelope.
    const double K = kmax;
    double poly = 0.0;
    {
        // int_K^inf k^n e^{-eps k} dk = e^{-eps K} sum_j n!/(n-j)! K^{n-j} / eps^{j+1}
        auto tail_n = [&](int n) {
            double s = 0.0, fact = 1.0;
            for (int j = 0; j <= n; ++j) {
                s += fact * std::pow(K, n - j) / std::pow(eps, j + 1);
                fact *= (n - j);
            }
            return s * std::exp(-eps * K);
        };
        poly = 0.5 * pref * (tail_n(3) + m * tail_n(2) + tail_n(2) + m * tail_n(1));
    }
    const double err = std::hypot(res.error[0], res.error[1]) + poly;
    const double size = std::max(std::abs(value), 1e-6 * std::hypot(res.l1[0], res.l1[1]));
    if (!res.converged || err > tol * size)
        throw std::runtime_error("momentum_oracle: radial quadrature did not converge");
    return {value, err};
}

}  // namespace cfs
