// AVX2+FMA variants of the hot kernels. Compiled with -mavx2 -mfma and picked
// at runtime only when the CPU reports both features, so the rest of the build
// stays baseline. Elementwise kernels (eos_transport) use the same operation
// order as the scalar reference and are bit-identical; reduction kernels
// accumulate per lane and differ from scalar only by rounding of the final
// horizontal sum.

#include "fhd/kernels/kernels.hpp"

#ifdef FHD_HAVE_AVX2

#include <immintrin.h>

#include <cmath>
#include <cstdint>

namespace fhd::kern {

namespace {

// Lane-activity masks for the ragged tail (index = n % 4).
const __m256i kTailMask[4] = {
    _mm256_set_epi64x(-1, -1, -1, -1),
    _mm256_set_epi64x(0, 0, 0, -1),
    _mm256_set_epi64x(0, 0, -1, -1),
    _mm256_set_epi64x(0, -1, -1, -1),
};

// exp(x) for x <= 0. Cody-Waite range reduction, degree-13 Taylor polynomial,
// 2^k scaling via the exponent bits. Accurate to ~1 ulp on the weight-function
// range [-alpha, 0]; lanes with very negative x may produce garbage and must be
// masked off by the caller (the weight cutoff does exactly that).
inline __m256d exp_pd(__m256d x) {
    const __m256d inv_ln2 = _mm256_set1_pd(1.4426950408889634074);
    const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
    const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);

    const __m256d k = _mm256_round_pd(_mm256_mul_pd(x, inv_ln2),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(k, ln2_hi, x);
    r = _mm256_fnmadd_pd(k, ln2_lo, r);

    __m256d p = _mm256_set1_pd(1.6059043836821614599e-10);  // 1/13!
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.0876756987868098979e-9));   // 1/12!
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.5052108385441718775e-8));   // 1/11!
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.7557319223985890653e-7));   // 1/10!
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.7557319223985892511e-6));   // 1/9!
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.4801587301587301566e-5));   // 1/8!
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.9841269841269841253e-4));   // 1/7!
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.3888888888888889419e-3));   // 1/6!
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(8.3333333333333332871e-3));   // 1/5!
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(4.1666666666666664354e-2));   // 1/4!
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.6666666666666665741e-1));   // 1/3!
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

    // 2^k
    const __m128i k32 = _mm256_cvtpd_epi32(k);
    const __m256i k64 = _mm256_cvtepi32_epi64(k32);
    const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(k64, _mm256_set1_epi64x(1023)), 52);
    return _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void eos_transport_avx2(const double* rho, const double* T, std::size_t n,
                        const EosCoeffs& c, double* P, double* eta, double* kappa) {
    const __m256d R = _mm256_set1_pd(c.R);
    const __m256d vc = _mm256_set1_pd(c.visc_coef);
    const __m256d kc = _mm256_set1_pd(c.kappa_coef);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d t = _mm256_loadu_pd(T + i);
        const __m256d r = _mm256_loadu_pd(rho + i);
        const __m256d e = _mm256_mul_pd(vc, _mm256_sqrt_pd(t));
        _mm256_storeu_pd(P + i, _mm256_mul_pd(_mm256_mul_pd(r, R), t));
        _mm256_storeu_pd(eta + i, e);
        _mm256_storeu_pd(kappa + i, _mm256_mul_pd(kc, e));
    }
    for (; i < n; ++i) {
        const double t = T[i];
        const double e = c.visc_coef * std::sqrt(t);
        P[i] = (rho[i] * c.R) * t;
        eta[i] = e;
        kappa[i] = c.kappa_coef * e;
    }
}

void wls_geometry_avx2(const double* xs, std::size_t n, double x0, double inv_h,
                       double alpha, double* g1, double* g2, WlsMoments& m) {
    const __m256d vx0 = _mm256_set1_pd(x0);
    const __m256d vih = _mm256_set1_pd(inv_h);
    const __m256d vna = _mm256_set1_pd(-alpha);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d half = _mm256_set1_pd(0.5);
    __m256d m11 = _mm256_setzero_pd();
    __m256d m12 = _mm256_setzero_pd();
    __m256d m22 = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n; i += 4) {
        const std::size_t rem = n - i;
        const __m256i lanes = (rem >= 4) ? kTailMask[0] : kTailMask[rem];
        const __m256d x = _mm256_maskload_pd(xs + i, lanes);
        const __m256d dxh = _mm256_mul_pd(_mm256_sub_pd(x, vx0), vih);
        const __m256d r2 = _mm256_mul_pd(dxh, dxh);
        // compact support: w = 0 outside |dxh| <= 1 and in inactive lanes
        const __m256d support = _mm256_cmp_pd(r2, one, _CMP_LE_OQ);
        const __m256d mask = _mm256_and_pd(support, _mm256_castsi256_pd(lanes));
        const __m256d w = _mm256_and_pd(exp_pd(_mm256_mul_pd(vna, r2)), mask);
        const __m256d q = _mm256_mul_pd(half, r2);
        const __m256d a = _mm256_mul_pd(w, dxh);
        const __m256d b = _mm256_mul_pd(w, q);
        _mm256_maskstore_pd(g1 + i, lanes, a);
        _mm256_maskstore_pd(g2 + i, lanes, b);
        m11 = _mm256_fmadd_pd(a, dxh, m11);
        m12 = _mm256_fmadd_pd(b, dxh, m12);
        m22 = _mm256_fmadd_pd(b, q, m22);
    }
    m.m11 = hsum(m11);
    m.m12 = hsum(m12);
    m.m22 = hsum(m22);
}

void wls_project_avx2(const double* f, std::size_t n, double f0, const double* g1,
                      const double* g2, double& bt1, double& bt2) {
    const __m256d vf0 = _mm256_set1_pd(f0);
    __m256d s1 = _mm256_setzero_pd();
    __m256d s2 = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n; i += 4) {
        const std::size_t rem = n - i;
        const __m256i lanes = (rem >= 4) ? kTailMask[0] : kTailMask[rem];
        const __m256d fv = _mm256_maskload_pd(f + i, lanes);
        const __m256d b = _mm256_and_pd(_mm256_sub_pd(fv, vf0), _mm256_castsi256_pd(lanes));
        s1 = _mm256_fmadd_pd(_mm256_maskload_pd(g1 + i, lanes), b, s1);
        s2 = _mm256_fmadd_pd(_mm256_maskload_pd(g2 + i, lanes), b, s2);
    }
    bt1 = hsum(s1);
    bt2 = hsum(s2);
}

void conserved_sums_avx2(const double* rho, const double* u, const double* T,
                         std::size_t n, double cv, double out[6]) {
    const __m256d vcv = _mm256_set1_pd(cv);
    const __m256d half = _mm256_set1_pd(0.5);
    __m256d sr = _mm256_setzero_pd(), sr2 = _mm256_setzero_pd();
    __m256d sj = _mm256_setzero_pd(), sj2 = _mm256_setzero_pd();
    __m256d se = _mm256_setzero_pd(), se2 = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n; i += 4) {
        const std::size_t rem = n - i;
        const __m256i lanes = (rem >= 4) ? kTailMask[0] : kTailMask[rem];
        const __m256d r = _mm256_maskload_pd(rho + i, lanes);
        const __m256d uv = _mm256_maskload_pd(u + i, lanes);
        const __m256d t = _mm256_maskload_pd(T + i, lanes);
        const __m256d J = _mm256_mul_pd(r, uv);
        const __m256d E = _mm256_fmadd_pd(_mm256_mul_pd(vcv, r), t,
                                          _mm256_mul_pd(half, _mm256_mul_pd(J, uv)));
        sr = _mm256_add_pd(sr, r);
        sr2 = _mm256_fmadd_pd(r, r, sr2);
        sj = _mm256_add_pd(sj, J);
        sj2 = _mm256_fmadd_pd(J, J, sj2);
        se = _mm256_add_pd(se, E);
        se2 = _mm256_fmadd_pd(E, E, se2);
    }
    out[0] = hsum(sr);
    out[1] = hsum(sr2);
    out[2] = hsum(sj);
    out[3] = hsum(sj2);
    out[4] = hsum(se);
    out[5] = hsum(se2);
}

const KernelTable kAvx2{"avx2", eos_transport_avx2, wls_geometry_avx2, wls_project_avx2,
                        conserved_sums_avx2};

}  // namespace

const KernelTable* avx2_table() {
    static const bool supported =
        __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return supported ? &kAvx2 : nullptr;
}

}  // namespace fhd::kern

#endif  // FHD_HAVE_AVX2
