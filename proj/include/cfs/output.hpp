#pragma once

#include "cfs/coeffs.hpp"
#include "cfs/config.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace cfs {

/// Grid coordinates along one axis: n points over [-extent eps, extent eps], {0} for n = 1.
std::vector<double> grid_axis(int n, double extent, double eps);

/// |T^(-1)(t, r)|^2, t outer and r inner, blank line between rows.
void write_grid(std::ostream& out, const RunConfig& cfg);

/// CSV of the selected coefficients with #-metadata, followed by the Maxwell
/// family and the derived alpha rows when the selection is not empty.
void write_coefficients(std::ostream& out, const RunConfig& cfg, const CoefficientTable& table);

/// One row per epsilon, and the fitted peak slope as a trailing comment.
void write_scan(std::ostream& out, const RunConfig& cfg, const std::vector<ScanRow>& rows);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

std::string format_number(double x);

}  // namespace cfs
