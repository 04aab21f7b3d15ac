#pragma once

#include "cfs/besselt.hpp"
#include "cfs/currents.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cfs {

struct QuadratureSpec {
    double domain_scale = 40.0;  // box |t|, r <= L eps
    double rel_tol = 1e-8;
    int max_subdivisions = 4000;
    bool enforce_tail = false;   // fail when doubling L moves a coefficient by more than rel_tol
    void validate() const;
};

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Coefficient { C0, Ct_PS, Ct_PB, Cr_PS, Cr_PB, Ct_S, Ct_B, Cr_S, Cr_B };
constexpr int kCoefficientCount = 9;
constexpr std::array<Coefficient, kCoefficientCount> kAllCoefficients{
    Coefficient::C0,   Coefficient::Ct_PS, Coefficient::Ct_PB, Coefficient::Cr_PS, Coefficient::Cr_PB,
    Coefficient::Ct_S, Coefficient::Ct_B,  Coefficient::Cr_S,  Coefficient::Cr_B};
/// The five coefficients of the one-sector moments, in ratio order.
constexpr std::array<Coefficient, 5> kAxialCoefficients{Coefficient::C0, Coefficient::Ct_PS, Coefficient::Ct_PB,
                                                        Coefficient::Cr_PS, Coefficient::Cr_PB};

std::string_view coefficient_name(Coefficient c);
std::optional<Coefficient> parse_coefficient(std::string_view name);

enum class Family { dirac, maxwell };

struct CoefficientValue {
    double value = 0.0;
    double error = 0.0;
};

struct CoefficientTable {
    Params params;
    QuadratureSpec quad;
    MaxwellMode mode = MaxwellMode::frozen;
    std::array<CoefficientValue, kCoefficientCount> dirac{};
    std::array<CoefficientValue, kCoefficientCount> maxwell{};
    // (2pi/3) int f_s r^2 Im[R xi^0] and (2pi/3) int f_a r^3 Im R, R = T^(-2)/T^(-1).
    CoefficientValue pb_minus_ps_t{};
    CoefficientValue pb_minus_ps_r{};
    // Odd-in-t integrands, kept for the parity check: value and int |f|.
    std::array<CoefficientValue, 2> parity_probes{};
    std::array<double, 2> parity_scales{};
    // Largest relative change of a Dirac coefficient when L is doubled (NaN if not run).
    double tail_change = 0.0;
    int outer_intervals = 0;

    const CoefficientValue& get(Coefficient c, Family f = Family::dirac) const;
};

/// int over S^2 of xi^i xi^j / r^2 (i, j in 1..3).
double angular_weight(int i, int j);
/// int over S^2 of xi^i / r.
double angular_weight(int i);

/// All coefficients of both families from one nested adaptive quadrature.
/// Throws QuadratureError if the tolerance is not met.
CoefficientTable coefficient_table(const Params& p, const QuadratureSpec& q,
                                   MaxwellMode mode = MaxwellMode::frozen, bool tail_check = true);

CoefficientValue coefficient(Coefficient c, const Params& p, const QuadratureSpec& q);

struct AlphaResult {
    double alpha = 0.0;
    double ratio_spread = 0.0;
    std::array<double, 5> ratios{};  // C^M / C^D in kAxialCoefficients order
};

/// Throws std::runtime_error if a Dirac coefficient is indistinguishable from 0.
AlphaResult coupling_alpha(const CoefficientTable& table);
AlphaResult coupling_alpha(const Params& p, const QuadratureSpec& q);

/// The paper's closed form 1/alpha = 1/(196 pi^2) - (2 pi/3) c.
double alpha_closed_form(double c);

struct ScanRow {
    double epsilon = 0.0;
    CoefficientTable table;
    AlphaResult alpha;
    double peak = 0.0;  // |T^(-1)(0,0)|^2
};

std::vector<ScanRow> epsilon_scan(std::vector<double> eps_list, const Params& base, const QuadratureSpec& q);

}  // namespace cfs
