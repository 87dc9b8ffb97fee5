#pragma once

#include <cstddef>
#include <span>

#include "fhd/kernels/kernels.hpp"

namespace fhd {

// Weighted least-squares estimation of first and second derivatives from
// scattered point values. A quadratic Taylor model is fitted around the
// evaluation point; the two unknowns (f', f'') come from the 2x2 normal
// equations. Weights use a truncated Gaussian with compact support of radius h.
struct WlsConfig {
    double alpha = 6.25;  // Gaussian shape parameter
    double h = 0.0;       // support radius; must be set by the caller
};

struct DerivativePair {
    double fx = 0.0;
    double fxx = 0.0;
};

// Inverse of the (h-scaled) normal matrix, kept explicit so one factorization
// can be reused across every field differentiated at the same point.
struct NormalInverse {
    double i11 = 0.0;
    double i12 = 0.0;
    double i22 = 0.0;
};

double weight(double xi, double x, const WlsConfig& cfg);

// Invert the symmetric 2x2 moment matrix. Throws IllConditioned when the
// spectral condition number exceeds cond_max or the matrix is not positive
// definite (collinear or one-sided degenerate stencils).
NormalInverse solve_moments(const kern::WlsMoments& m, double cond_max);

// One-shot convenience used by tests and small callers: fit around `at` with
// centre value f_at using every point in xs. The time stepper inlines the same
// sequence against its workspace instead of calling this.
DerivativePair derivatives(std::span<const double> xs, std::span<const double> f,
                           double at, double f_at, const WlsConfig& cfg,
                           double cond_max = 1e12);

}  // namespace fhd
