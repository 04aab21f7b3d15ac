#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace cfs::quad {

using Vec = Eigen::ArrayXd;

struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    // Components whose value is far below their L1 norm (cancelling or odd
    // integrands) are judged against l1_floor * L1 instead of |value|.
    double l1_floor = 0.0;
    int max_intervals = 2000;
    // Only the first `controlled` components drive refinement (-1: all).
    int controlled = -1;
};

struct Result {
    Vec value;
    Vec error;
    Vec l1;  // integral of |f|
    int intervals = 0;
    bool converged = false;
};

/// Globally adaptive 21-point Gauss-Kronrod integration of a vector-valued
/// function over [a, b]. `breaks` are interior points that always start a
/// new interval. The subdivision order is deterministic.
Result integrate(const std::function<Vec(double)>& f, int dim, double a, double b,
                 const std::vector<double>& breaks, const Options& opt);

}  // namespace cfs::quad
