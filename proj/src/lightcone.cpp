#include "cfs/lightcone.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cfs {

Polynomial Polynomial::constant(double c) {
    Polynomial p;
    p.add({0, 0, 0, 0}, c);
    return p;
}

Polynomial Polynomial::coordinate(int mu) {
    if (mu < 0 || mu > 3) throw std::out_of_range("Polynomial::coordinate: index must be 0..3");
    Exponents e{0, 0, 0, 0};
    e[mu] = 1;
    return monomial(1.0, e);
}

Polynomial Polynomial::monomial(double coeff, const Exponents& e) {
    for (int v : e)
        if (v < 0) throw std::invalid_argument("Polynomial::monomial: negative exponent");
    Polynomial p;
    p.add(e, coeff);
    return p;
}

void Polynomial::add(const Exponents& e, double c) {
    if (c == 0.0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add(e, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * -1.0; }

Polynomial Polynomial::operator*(double s) const {
    Polynomial r;
    for (const auto& [e, c] : terms_) r.add(e, c * s);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial r;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            Exponents e;
            for (int i = 0; i < 4; ++i) e[i] = e1[i] + e2[i];
            r.add(e, c1 * c2);
        }
    return r;
}

Polynomial Polynomial::derivative(int mu) const {
    if (mu < 0 || mu > 3) throw std::out_of_range("Polynomial::derivative: index must be 0..3");
    Polynomial r;
    for (const auto& [e, c] : terms_) {
        if (e[mu] == 0) continue;
        Exponents d = e;
        d[mu] -= 1;
        r.add(d, c * e[mu]);
    }
    return r;
}

Polynomial Polynomial::box() const {
    Polynomial r = derivative(0).derivative(0);
    for (int i = 1; i <= 3; ++i) r = r - derivative(i).derivative(i);
    return r;
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2] + e[3]);
    return d;
}

cplx Polynomial::evaluate(const CPoint4& x) const {
    cplx s = 0.0;
    for (const auto& [e, c] : terms_) {
        cplx m = c;
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < e[i]; ++k) m *= x[i];
        s += m;
    }
    return s;
}

double Polynomial::evaluate(const Point4& x) const {
    return evaluate(CPoint4{x[0], x[1], x[2], x[3]}).real();
}

std::vector<cplx> Polynomial::along_line(const Point4& x, const CPoint4& d) const {
    const int deg = std::max(degree(), 0);
    std::vector<cplx> out(deg + 1, 0.0);
    for (const auto& [e, c] : terms_) {
        std::vector<cplx> prod{c};
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < e[i]; ++k) {
                std::vector<cplx> next(prod.size() + 1, 0.0);
                for (std::size_t j = 0; j < prod.size(); ++j) {
                    next[j] += prod[j] * x[i];
                    next[j + 1] += prod[j] * d[i];
                }
                prod = std::move(next);
            }
        for (std::size_t j = 0; j < prod.size(); ++j) out[j] += prod[j];
    }
    return out;
}

PolynomialPotential PolynomialPotential::gradient(const Polynomial& lambda) {
    PolynomialPotential a;
    for (int mu = 0; mu < 4; ++mu) a.components[mu] = lambda.derivative(mu);
    return a;
}

PolynomialPotential PolynomialPotential::operator+(const PolynomialPotential& o) const {
    PolynomialPotential r;
    for (int mu = 0; mu < 4; ++mu) r.components[mu] = components[mu] + o.components[mu];
    return r;
}

Polynomial PolynomialPotential::field_strength(int mu, int nu) const {
    return components[nu].derivative(mu) - components[mu].derivative(nu);
}

Polynomial PolynomialPotential::current(int mu) const {
    Polynomial j;
    for (int nu = 0; nu < 4; ++nu) j = j + field_strength(mu, nu).derivative(nu) * eta(nu, nu);
    return j;
}

int PolynomialPotential::degree() const {
    int d = -1;
    for (const auto& c : components) d = std::max(d, c.degree());
    return d;
}

SeriesTruncation exact_truncation(const Polynomial& a) {
    const int d = std::max(a.degree(), 0);
    return {(d + 1) / 2, 0.0};
}

namespace {

// int_0^1 tau^{n+k} (1 - tau)^n dtau = n! (n+k)! / (2n+k+1)!.
double beta_weight(int n, int k) {
    // n! / ((n+k+1)(n+k+2)...(2n+k+1)) = n! (n+k)! / (2n+k+1)!
    double v = 1.0 / (n + k + 1);
    for (int i = 1; i <= n; ++i) v *= static_cast<double>(i) / (n + k + 1 + i);
    return v;
}

CPoint4 line_direction(const RegularizedXi& xi) { return xi.upper(); }

}  // namespace

cplx delta_t(const Polynomial& a, const Point4& x, const RegularizedXi& xi, const Params& p,
             const SeriesTruncation& trunc) {
    // Highest n with box^n A != 0.
    int needed = 0;
    std::vector<Polynomial> boxes{a};
    while (true) {
        Polynomial next = boxes.back().box();
        if (next.is_zero()) break;
        boxes.push_back(next);
        ++needed;
    }
    if (a.is_zero()) return 0.0;
    if (trunc.n_max < needed)
        throw std::invalid_argument("delta_t: truncation order " + std::to_string(trunc.n_max) +
                                    " is below the exact truncation order " +
                                    std::to_string(needed));
    if (needed + 1 > kMaxTOrder)
        throw std::invalid_argument("delta_t: potential degree too high for the supported T orders");
    const auto t = t_family_all(xi, p);
    const CPoint4 d = line_direction(xi);
    cplx sum = 0.0;
    double fact = 1.0;
    for (int n = 0; n <= needed; ++n) {
        if (n > 0) fact *= n;
        const auto coeffs = boxes[n].along_line(x, d);
        cplx integral = 0.0;
        for (std::size_t k = 0; k < coeffs.size(); ++k) integral += coeffs[k] * beta_weight(n, static_cast<int>(k));
        sum += t[n + 1 - kMinTOrder] / fact * integral;
    }
    return sum;
}

namespace {

enum class Weight { one, tau_minus_tau2, one_minus_tau, one_minus_tau_sq };

double weight_moment(Weight w, int k) {
    const double a = 1.0 / (k + 1), b = 1.0 / (k + 2), c = 1.0 / (k + 3);
    switch (w) {
        case Weight::one: return a;
        case Weight::tau_minus_tau2: return b - c;
        case Weight::one_minus_tau: return a - b;
        case Weight::one_minus_tau_sq: return a - 2.0 * b + c;
    }
    return 0.0;
}

cplx segment_integral(const Polynomial& f, Weight w, const Point4& x, const CPoint4& d) {
    if (f.is_zero()) return 0.0;
    const auto c = f.along_line(x, d);
    cplx s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) s += c[k] * weight_moment(w, static_cast<int>(k));
    return s;
}

}  // namespace

MaxwellTerms maxwell_terms(const PolynomialPotential& a, PotentialKind kind, const Point4& x,
                           const RegularizedXi& xi, const Params& p) {
    const auto t = t_family_all(xi, p);
    const cplx tm1 = t[-1 - kMinTOrder], t0 = t[0 - kMinTOrder], t1 = t[1 - kMinTOrder];
    const CPoint4 up = xi.upper();
    const SpinMatrix xs = slash_upper(up);

    cplx ax = 0.0;
    cplx jx = 0.0;
    SpinMatrix ff = SpinMatrix::Zero(), fx = SpinMatrix::Zero(), jg = SpinMatrix::Zero();
    for (int mu = 0; mu < 4; ++mu) {
        ax += segment_integral(a.components[mu], Weight::one, x, up) * up[mu];
        const Polynomial j = a.current(mu);
        jx += up[mu] * segment_integral(j, Weight::tau_minus_tau2, x, up);
        jg += segment_integral(j, Weight::one_minus_tau_sq, x, up) * gamma(mu);
        for (int nu = 0; nu < 4; ++nu) {
            if (mu == nu) continue;
            const Polynomial f = a.field_strength(mu, nu);
            ff += segment_integral(f, Weight::one, x, up) * (gamma(mu) * gamma(nu));
            fx += up[mu] * segment_integral(f, Weight::one_minus_tau, x, up) * gamma(nu);
        }
    }
    MaxwellTerms m;
    m.gauge = 0.5 * xs * ax * tm1;
    m.current_t0 = -0.5 * xs * jx * t0;
    m.field_t0a = 0.25 * xs * ff * t0;
    m.field_t0b = -fx * t0;
    m.current_t1 = -jg * t1;
    if (kind == PotentialKind::axial) {
        // i d-slash anticommutes with g^5, so the axial expansion is -g^5 times the vector one.
        const SpinMatrix g = -gamma5();
        m.gauge = g * m.gauge;
        m.current_t0 = g * m.current_t0;
        m.field_t0a = g * m.field_t0a;
        m.field_t0b = g * m.field_t0b;
        m.current_t1 = g * m.current_t1;
    }
    return m;
}

SpinMatrix maxwell_perturbation(const PolynomialPotential& a, PotentialKind kind, const Point4& x,
                                const RegularizedXi& xi, const Params& p) {
    return maxwell_terms(a, kind, x, xi, p).total();
}

Eigen::RowVector4cd SpinorValue::bar() const { return phi.adjoint() * gamma(0); }

std::array<double, 4> SpinorValue::vector_current() const {
    std::array<double, 4> j{};
    const auto b = bar();
    for (int mu = 0; mu < 4; ++mu) j[mu] = (b * gamma(mu) * phi)(0).real();
    return j;
}

std::array<double, 4> SpinorValue::axial_current() const {
    std::array<double, 4> j{};
    const auto b = bar();
    for (int mu = 0; mu < 4; ++mu) j[mu] = (b * gamma5() * gamma(mu) * phi)(0).real();
    return j;
}

SpinMatrix dirac_perturbation(const SpinorValue& phi, const Params&) {
    return phi.phi * phi.bar() / (2.0 * std::numbers::pi);
}

namespace {

RegularizedXi shifted(const RegularizedXi& xi, int mu, double delta) {
    RegularizedXi s = xi;
    if (mu == 0)
        s.xi0 += delta;
    else
        s.spatial[mu - 1] += delta;
    return s;
}

}  // namespace

std::pair<double, double> ladder_residuals(int n, const RegularizedXi& xi, const Params& p, double h) {
    if (!(h > 0.0) || h > xi.eps() / 10.0)
        throw std::invalid_argument("ladder_residuals: step must satisfy 0 < h <= eps/10");
    if (n < kMinTOrder || n + 1 > kMaxTOrder)
        throw std::out_of_range("ladder_residuals: unsupported order");
    auto T = [&](const RegularizedXi& s) { return t_family(n + 1, s, p); };
    const cplx tn = t_family(n, xi, p);
    const cplx center = T(xi);
    const auto low = xi.lower();
    double res1 = 0.0, mag1 = 0.0;
    cplx box = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
        // Moving x by +h moves xi by -h.
        const cplx fp = T(shifted(xi, mu, -h)), fm = T(shifted(xi, mu, h));
        const cplx d = (fp - fm) / (2.0 * h);
        const cplx expect = 0.5 * low[mu] * tn;
        res1 = std::max(res1, std::abs(d - expect));
        mag1 = std::max(mag1, std::abs(expect));
        box += eta(mu, mu) * (fp - 2.0 * center + fm) / (h * h);
    }
    const cplx lhs = box + p.mass * p.mass * center;
    const cplx rhs = -static_cast<double>(n + 1) * tn;
    const double mag2 = std::max({std::abs(box), std::abs(p.mass * p.mass * center), std::abs(rhs)});
    return {res1 / mag1, std::abs(lhs - rhs) / mag2};
}

}  // namespace cfs
