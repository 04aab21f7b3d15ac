#pragma once

#include "cfs/besselt.hpp"
#include "cfs/clifford.hpp"

#include <array>
#include <map>
#include <utility>
#include <vector>

namespace cfs {

using Point4 = std::array<double, 4>;
using CPoint4 = std::array<cplx, 4>;
using Exponents = std::array<int, 4>;

/// Real polynomial in the contravariant coordinates x^0..x^3.
class Polynomial {
public:
    Polynomial() = default;
    static Polynomial constant(double c);
    static Polynomial coordinate(int mu);
    static Polynomial monomial(double coeff, const Exponents& e);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(double s) const;

    /// d/dx^mu.
    Polynomial derivative(int mu) const;
    /// d_t^2 - laplacian.
    Polynomial box() const;
    int degree() const;  // -1 for the zero polynomial
    bool is_zero() const { return terms_.empty(); }

    cplx evaluate(const CPoint4& x) const;
    double evaluate(const Point4& x) const;
    /// Coefficients c_k of p(x + tau d) = sum_k c_k tau^k.
    std::vector<cplx> along_line(const Point4& x, const CPoint4& d) const;

    const std::map<Exponents, double>& terms() const { return terms_; }

private:
    void add(const Exponents& e, double c);
    std::map<Exponents, double> terms_;
};

/// Four covariant components A_mu.
struct PolynomialPotential {
    std::array<Polynomial, 4> components;

    /// A_mu = d_mu Lambda.
    static PolynomialPotential gradient(const Polynomial& lambda);
    PolynomialPotential operator+(const PolynomialPotential& o) const;

    /// F_{mu nu} = d_mu A_nu - d_nu A_mu.
    Polynomial field_strength(int mu, int nu) const;
    /// d^nu F_{mu nu}.
    Polynomial current(int mu) const;
    int degree() const;
};

struct SeriesTruncation {
    int n_max = 0;
    double tail_bound = 0.0;
};

/// Exact truncation order ceil(D/2) for a polynomial of degree D, tail 0.
SeriesTruncation exact_truncation(const Polynomial& a);

/// sum_n T^(n+1)/n! int_0^1 (tau - tau^2)^n (box^n A)(x + tau xi) dtau, exactly.
cplx delta_t(const Polynomial& a, const Point4& x, const RegularizedXi& xi, const Params& p,
             const SeriesTruncation& trunc);

enum class PotentialKind { vector, axial };

/// The five terms of the first-order perturbation D_v P(x, y).
struct MaxwellTerms {
    SpinMatrix gauge;      // proportional to int A.xi
    SpinMatrix current_t0; // xi-slash xi^mu (d^nu F_{mu nu}) T^(0)
    SpinMatrix field_t0a;  // xi-slash g^mu g^nu F_{mu nu} T^(0)
    SpinMatrix field_t0b;  // xi^mu g^nu F_{mu nu} T^(0)
    SpinMatrix current_t1; // g^mu (d^nu F_{mu nu}) T^(1)

    SpinMatrix total() const { return gauge + current_t0 + field_t0a + field_t0b + current_t1; }
    /// The current-carrying part kept for the structure functions.
    SpinMatrix current_part() const { return current_t0 + current_t1; }
};

MaxwellTerms maxwell_terms(const PolynomialPotential& a, PotentialKind kind, const Point4& x,
                           const RegularizedXi& xi, const Params& p);
SpinMatrix maxwell_perturbation(const PolynomialPotential& a, PotentialKind kind, const Point4& x,
                                const RegularizedXi& xi, const Params& p);

/// A constant Dirac spinor with its vector and axial currents.
struct SpinorValue {
    Spinor phi = Spinor::Zero();

    /// phi-bar = phi^dagger g^0 as a row.
    Eigen::RowVector4cd bar() const;
    /// j_v^mu = phi-bar g^mu phi (upper index).
    std::array<double, 4> vector_current() const;
    /// j_a^mu = phi-bar g^5 g^mu phi (upper index).
    std::array<double, 4> axial_current() const;
};

/// (1/2pi) phi phi-bar.
SpinMatrix dirac_perturbation(const SpinorValue& phi, const Params& p);

/// Relative residuals of d_mu T^(n+1) = (xi_mu/2) T^(n) and
/// (box + m^2) T^(n+1) = -(n+1) T^(n) by central differences of step h.
std::pair<double, double> ladder_residuals(int n, const RegularizedXi& xi, const Params& p, double h);

}  // namespace cfs
