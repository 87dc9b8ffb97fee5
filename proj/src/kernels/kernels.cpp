#include "fhd/kernels/kernels.hpp"

#include <atomic>
#include <cmath>

#include "fhd/errors.hpp"

namespace fhd::kern {

namespace {

void eos_transport_scalar(const double* rho, const double* T, std::size_t n,
                          const EosCoeffs& c, double* P, double* eta, double* kappa) {
    for (std::size_t i = 0; i < n; ++i) {
        const double t = T[i];
        const double e = c.visc_coef * std::sqrt(t);
        P[i] = (rho[i] * c.R) * t;
        eta[i] = e;
        kappa[i] = c.kappa_coef * e;
    }
}

void wls_geometry_scalar(const double* xs, std::size_t n, double x0, double inv_h,
                         double alpha, double* g1, double* g2, WlsMoments& m) {
    double m11 = 0.0, m12 = 0.0, m22 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dxh = (xs[i] - x0) * inv_h;
        const double r2 = dxh * dxh;
        const double w = (r2 <= 1.0) ? std::exp(-alpha * r2) : 0.0;
        const double q = 0.5 * r2;
        const double a = w * dxh;
        const double b = w * q;
        g1[i] = a;
        g2[i] = b;
        m11 += a * dxh;
        m12 += b * dxh;
        m22 += b * q;
    }
    m.m11 = m11;
    m.m12 = m12;
    m.m22 = m22;
}

void wls_project_scalar(const double* f, std::size_t n, double f0, const double* g1,
                        const double* g2, double& bt1, double& bt2) {
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double b = f[i] - f0;
        s1 += g1[i] * b;
        s2 += g2[i] * b;
    }
    bt1 = s1;
    bt2 = s2;
}

void conserved_sums_scalar(const double* rho, const double* u, const double* T,
                           std::size_t n, double cv, double out[6]) {
    double sr = 0.0, sr2 = 0.0, sj = 0.0, sj2 = 0.0, se = 0.0, se2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = rho[i];
        const double J = r * u[i];
        const double E = cv * r * T[i] + 0.5 * J * u[i];
        sr += r;
        sr2 += r * r;
        sj += J;
        sj2 += J * J;
        se += E;
        se2 += E * E;
    }
    out[0] = sr;
    out[1] = sr2;
    out[2] = sj;
    out[3] = sj2;
    out[4] = se;
    out[5] = se2;
}

const KernelTable kScalar{"scalar", eos_transport_scalar, wls_geometry_scalar,
                          wls_project_scalar, conserved_sums_scalar};

std::atomic<const KernelTable*> g_active{nullptr};

const KernelTable* pick_default() {
    if (const KernelTable* t = avx2_table()) return t;
    return &kScalar;
}

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

#ifndef FHD_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif

const KernelTable& active() {
    const KernelTable* t = g_active.load(std::memory_order_acquire);
    if (!t) {
        t = pick_default();
        g_active.store(t, std::memory_order_release);
    }
    return *t;
}

void select(Backend b) {
    switch (b) {
        case Backend::Auto:
            g_active.store(pick_default(), std::memory_order_release);
            return;
        case Backend::Scalar:
            g_active.store(&kScalar, std::memory_order_release);
            return;
        case Backend::Avx2: {
            const KernelTable* t = avx2_table();
            if (!t) throw InvalidConfig("avx2 kernels are not available on this build/CPU");
            g_active.store(t, std::memory_order_release);
            return;
        }
    }
    throw InvalidConfig("unknown kernel backend");
}

Backend parse_backend(const std::string& name) {
    if (name == "auto") return Backend::Auto;
    if (name == "scalar") return Backend::Scalar;
    if (name == "avx2") return Backend::Avx2;
    throw InvalidConfig("unknown kernel backend '" + name + "' (auto|scalar|avx2)");
}

}  // namespace fhd::kern
