#pragma once

#include "cfs/clifford.hpp"

#include <cmath>
#include <complex>
#include <random>

namespace testsupport {

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
    cfs::cplx complex(double s = 1.0) { return {uniform(-s, s), uniform(-s, s)}; }

    cfs::SpinMatrix matrix() {
        cfs::SpinMatrix m;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m(i, j) = complex();
        return m;
    }

    cfs::Spinor spinor() {
        cfs::Spinor v;
        for (int i = 0; i < 4; ++i) v[i] = complex();
        return v;
    }

    std::array<double, 3> unit() {
        std::normal_distribution<double> n;
        double x = n(rng), y = n(rng), z = n(rng);
        const double s = std::sqrt(x * x + y * y + z * z);
        return {x / s, y / s, z / s};
    }
};

inline double rel(cfs::cplx a, cfs::cplx b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

inline double rel(const cfs::SpinMatrix& a, const cfs::SpinMatrix& b) {
    const double s = std::max(a.norm(), b.norm());
    return s == 0.0 ? 0.0 : (a - b).norm() / s;
}

}  // namespace testsupport
