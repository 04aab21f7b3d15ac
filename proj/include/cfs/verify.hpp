#pragma once

#include "cfs/coeffs.hpp"
#include "cfs/config.hpp"
#include "cfs/lightcone.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace cfs {

struct KernelOracleReport {
    double t0 = 0.0;         // max relative error of T^(0)
    double tm1 = 0.0;        // of T^(-1) (from the g^0 component)
    double projector = 0.0;  // of the assembled P(x, y)
    double seconds = 0.0;
};
/// Closed forms against the momentum oracle at random |t|, r <= range eps.
KernelOracleReport measure_kernel_oracle(const Params& p, int points, std::uint64_t seed, double range = 5.0);

struct SpectralReport {
    double pairing = 0.0;          // closed form vs dense eigensolver, relative
    double continuum_slope = 0.0;  // log-log slope of the continuum eigenvalue error in eps
    double seconds = 0.0;
};
/// Eigenvalue pairing at `points` random points; slope fitted over eps in [eps_lo, 10 eps_lo].
SpectralReport measure_spectral(const Params& p, int points, std::uint64_t seed, double eps_lo = 0.01);

struct ProjectorReport {
    double idempotency = 0.0;
    double completeness = 0.0;
    double orthogonality = 0.0;
    double chirality = 0.0;
    double trace = 0.0;
};
ProjectorReport measure_projectors(const Params& p, int points, std::uint64_t seed);

/// (box + m^2) Delta T + A T^(0) by central differences of step h, relative to |A T^(0)|.
double klein_gordon_residual(const Polynomial& a, const Point4& x, const RegularizedXi& xi, const Params& p,
                             double h);
/// Same with the Richardson combination of steps h and h/2 for the box.
double klein_gordon_residual_extrapolated(const Polynomial& a, const Point4& x, const RegularizedXi& xi,
                                          const Params& p, double h);

struct LightconeReport {
    double kg_slope_min = 0.0;
    double kg_slope_max = 0.0;
    double kg_residual = 0.0;     // max at h = eps/50
    double kg_extrapolated = 0.0; // max of the extrapolated residual at h = eps/50
    double ladder_slope_min = 0.0;
    double ladder_slope_max = 0.0;
    double ladder_residual = 0.0; // max at h = eps/50
};
/// Quadratic potentials at random points; ladder identities for n = -2..2.
LightconeReport measure_lightcone(const Params& p, int samples, std::uint64_t seed);

struct StructureReport {
    double parity = 0.0;             // 50x50 grid, relative
    double extraction = 0.0;         // closed forms vs trace extraction, relative
    double ratio_mean = 0.0;         // measured f^(M)/f^(D)
    // max |f^(M) - target f^(D)| / (|target| (|f_s^(D)| + |f_a^(D)|))
    double ratio_deviation = 0.0;
};
/// fault "fa_parity" negates f_a for t < 0 (test hook).
StructureReport measure_structure(const Params& p, double ratio_target, std::uint64_t seed,
                                  const std::string& fault = "");

struct CancellationSummary {
    double axial = 0.0;     // max residual, one sector
    double vector = 0.0;    // max residual, two sectors
    double mismatch = 0.0;  // max |residual - 1/2| with alpha doubled
};
CancellationSummary measure_cancellation(const CoefficientTable& table, int spinors, std::uint64_t seed);

struct FigureReport {
    int peak_row = 0;
    int peak_col = 0;
    bool peak_at_origin = false;
    double lightcone = 0.0;  // |T(2e, 2e)|
    double spacelike = 0.0;  // |T(0, 2 sqrt2 e)|
    double peak_slope = 0.0;
};
FigureReport measure_figure(const RunConfig& cfg);

/// Renders the output twice and compares the bytes.
bool deterministic_grid(const RunConfig& cfg);
bool deterministic_coefficients(const RunConfig& cfg);

struct Check {
    std::string suite;
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    bool informational = false;  // reported, never fails
};

/// The oracle suites behind `verify`.
std::vector<Check> run_verification(const RunConfig& cfg, const std::string& fault = "");

void print_checks(std::ostream& out, const std::vector<Check>& checks, bool verbose);
void write_checks_csv(std::ostream& out, const std::vector<Check>& checks);

}  // namespace cfs
