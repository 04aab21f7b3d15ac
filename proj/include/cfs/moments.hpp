#pragma once

#include "cfs/coeffs.hpp"
#include "cfs/lightcone.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace cfs {

enum class PerturbationKind { dirac, axial_maxwell, vector_maxwell };
enum class Channel { vector, axial };

/// coefficient * current[channel][index] * matrix.
struct MomentEntry {
    std::string basis;
    SpinMatrix matrix;
    Channel channel;
    int index;  // lower spacetime index of the current
    cplx coefficient;
};

struct Moment {
    int order = 0;
    int mu = 0;
    int sectors = 1;
    std::vector<MomentEntry> entries;
};

/// Lower-index currents plugged into a moment.
struct CurrentValues {
    std::array<double, 4> vector{};
    std::array<double, 4> axial{};
};

/// Operator-valued moment of the CFS current of order 0 or 1 (mu is the
/// derivative index for order 1). Coefficients of the Dirac family are used
/// for dirac, of the Maxwell family otherwise. Supported: dirac with 1 or 2
/// sectors, axial_maxwell with 1, vector_maxwell with 2. Throws
/// std::invalid_argument otherwise.
Moment assemble_moment(int order, int mu, PerturbationKind kind, int sectors, const CoefficientTable& table);

SpinMatrix materialize(const Moment& m, const CurrentValues& j, std::optional<Channel> only = std::nullopt);

std::array<double, 4> lower_index(const std::array<double, 4>& upper);

/// A quadratic potential whose current d^nu F_{nu mu} equals j (lower index) everywhere.
PolynomialPotential potential_with_current(const std::array<double, 4>& j_lower);

struct CancellationReport {
    // Order 0, then order 1 with mu = 0..3.
    std::array<double, 5> residuals{};
    std::array<double, 5> dirac_norm{};
    std::array<double, 5> maxwell_norm{};
    double max_residual = 0.0;
};

/// Pairs the Dirac perturbation of phi with a Maxwell perturbation whose
/// current is alpha times the Dirac current (axial for one sector, vector for
/// two) and compares the moments. Residual |D - M| / max(|D|, |M|), 0 if both vanish.
/// For two sectors only the vector channel is compared.
CancellationReport verify_cancellation(const SpinorValue& phi, const CoefficientTable& table, double alpha,
                                       int sectors);

}  // namespace cfs
