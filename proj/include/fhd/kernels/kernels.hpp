#pragma once

#include <cstddef>
#include <string>

namespace fhd::kern {

// Coefficients for the elementwise gas property kernel.
struct EosCoeffs {
    double R;           // P = rho * R * T
    double visc_coef;   // eta = visc_coef * sqrt(T)
    double kappa_coef;  // kappa = kappa_coef * eta
    double cv;
};

// Normal-equation moments of the weighted least-squares stencil, assembled in
// h-scaled coordinates dxh = (x_i - x0)/h:
//   m11 = sum w dxh^2,  m12 = sum w dxh (dxh^2/2),  m22 = sum w (dxh^2/2)^2
struct WlsMoments {
    double m11;
    double m12;
    double m22;
};

// P, eta, kappa for n states.
using EosTransportFn = void (*)(const double* rho, const double* T, std::size_t n,
                                const EosCoeffs& c, double* P, double* eta, double* kappa);

// Weighted stencil geometry around x0. Writes g1[i] = w_i*dxh_i and
// g2[i] = w_i*dxh_i^2/2 (zero weight outside |dxh| <= 1) and the moments.
using WlsGeometryFn = void (*)(const double* xs, std::size_t n, double x0, double inv_h,
                               double alpha, double* g1, double* g2, WlsMoments& m);

// Right-hand-side projections bt1 = sum g1[i]*(f[i]-f0), bt2 = sum g2[i]*(f[i]-f0).
using WlsProjectFn = void (*)(const double* f, std::size_t n, double f0, const double* g1,
                              const double* g2, double& bt1, double& bt2);

// Sums and squared sums of rho, J = rho*u and E = cv*rho*T + rho*u^2/2 over n
// particles. out = {sum_rho, sum_rho2, sum_J, sum_J2, sum_E, sum_E2}.
using ConservedSumsFn = void (*)(const double* rho, const double* u, const double* T,
                                 std::size_t n, double cv, double out[6]);

struct KernelTable {
    const char* name;
    EosTransportFn eos_transport;
    WlsGeometryFn wls_geometry;
    WlsProjectFn wls_project;
    ConservedSumsFn conserved_sums;
};

enum class Backend { Auto, Scalar, Avx2 };

const KernelTable& scalar_table();

// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const KernelTable* avx2_table();

// Currently active table. Defaults to the best runtime-supported backend.
const KernelTable& active();

// Selects a backend explicitly; throws fhd::InvalidConfig for an unavailable one.
void select(Backend b);

Backend parse_backend(const std::string& name);

}  // namespace fhd::kern
