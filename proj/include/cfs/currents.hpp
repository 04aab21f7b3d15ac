#pragma once

#include "cfs/besselt.hpp"
#include "cfs/chain.hpp"
#include "cfs/clifford.hpp"
#include "cfs/lightcone.hpp"

#include <array>

namespace cfs {

struct StructureFunctionSample {
    double t = 0.0;
    double r = 0.0;
    double f_s = 0.0;
    double f_a = 0.0;
};

/// frozen: z^2 T^(0) -> m^2/8pi^3 and T^(1) -> c. exact: T^(0), T^(1) as they are.
enum class MaxwellMode { frozen, exact };

/// delta A = P(x,y) dP(y,x) + dP(x,y) P(y,x). Throws std::invalid_argument if
/// dp_yx is not the spin adjoint of dp_xy.
SpinMatrix perturbed_chain(const SpinMatrix& p_xy, const SpinMatrix& dp_xy, const SpinMatrix& dp_yx);

/// Re tr[conj(lambda) Lambda dA] for one continuum eigenspace.
double trace_kernel(const SpectralData& spec, int sign, Chirality chi, const SpinMatrix& dA);

/// Sign of the axial part in trace_kernel: -1 for (+,L) and (-,R).
int axial_sign(int sign, Chirality chi);

/// The massless kernel (i/2) T^(-1) xi-slash entering the continuum traces.
SpinMatrix continuum_kernel(const RegularizedXi& xi, const Params& p);

StructureFunctionSample dirac_structure_functions(double t, double r, const Params& p);
StructureFunctionSample maxwell_structure_functions(double t, double r, const Params& p,
                                                    MaxwellMode mode = MaxwellMode::frozen);

/// Both families and T^(-2)/T^(-1) from a single Bessel evaluation.
struct KernelSample {
    StructureFunctionSample dirac;
    StructureFunctionSample maxwell;
    cplx ladder_ratio;
};
KernelSample kernel_sample(double t, double r, const Params& p, MaxwellMode mode = MaxwellMode::frozen);

/// Pointwise f^(M)/f^(D) in frozen mode: 1/(192 pi^2) - (2 pi/3) c.
double frozen_ratio(const Params& p);

/// Coefficients of j_v^0, j_v^r, j_a^r, j_a^0 in one trace_kernel channel,
/// where j^r = xi_i j^i / r.
struct TraceCoefficients {
    double v0 = 0.0;
    double vr = 0.0;
    double ar = 0.0;
    double a0 = 0.0;
};

/// Solves the 4x4 linear system obtained from four probe spinors for the
/// Dirac perturbation. Throws std::runtime_error if the probes are degenerate.
TraceCoefficients extract_trace_coefficients(const RegularizedXi& xi, const Params& p, int sign,
                                             Chirality chi, const std::array<Spinor, 4>& probes);
TraceCoefficients extract_trace_coefficients(const RegularizedXi& xi, const Params& p, int sign,
                                             Chirality chi);

/// Trace-based f_s, f_a at (t, r) along `direction`, via extraction in the (+,L) channel.
StructureFunctionSample extracted_structure_functions(double t, double r, const Vec3& direction,
                                                      const Params& p);

}  // namespace cfs
