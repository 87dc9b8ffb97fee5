#include "fhd/wls.hpp"

#include <cmath>
#include <vector>

#include "fhd/errors.hpp"

namespace fhd {

double weight(double xi, double x, const WlsConfig& cfg) {
    const double d = (xi - x) / cfg.h;
    const double r2 = d * d;
    if (r2 > 1.0) return 0.0;
    return std::exp(-cfg.alpha * r2);
}

NormalInverse solve_moments(const kern::WlsMoments& m, double cond_max) {
    // Eigenvalues of [[m11, m12], [m12, m22]].
    const double tr = m.m11 + m.m22;
    const double det = m.m11 * m.m22 - m.m12 * m.m12;
    const double disc = std::sqrt(std::max(0.25 * tr * tr - det, 0.0));
    const double lmax = 0.5 * tr + disc;
    const double lmin = 0.5 * tr - disc;
    if (!(lmin > 0.0) || lmax > cond_max * lmin) {
        throw IllConditioned("normal matrix ill-conditioned in derivative fit");
    }
    return NormalInverse{m.m22 / det, -m.m12 / det, m.m11 / det};
}

DerivativePair derivatives(std::span<const double> xs, std::span<const double> f,
                           double at, double f_at, const WlsConfig& cfg,
                           double cond_max) {
    if (xs.size() != f.size()) {
        throw MismatchedFields("coordinate and value arrays differ in length");
    }
    // The fit needs at least two points with nonzero weight besides the centre;
    // the centre itself (dx = 0) contributes nothing to either moment.
    std::size_t support = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] != at && weight(xs[i], at, cfg) > 0.0) ++support;
    }
    if (support < 2) {
        throw InsufficientNeighborhood("fewer than 2 neighbours inside support radius");
    }

    const double inv_h = 1.0 / cfg.h;
    std::vector<double> g1(xs.size()), g2(xs.size());
    kern::WlsMoments m;
    const auto& k = kern::active();
    k.wls_geometry(xs.data(), xs.size(), at, inv_h, cfg.alpha, g1.data(), g2.data(), m);
    const NormalInverse inv = solve_moments(m, cond_max);
    double bt1 = 0.0, bt2 = 0.0;
    k.wls_project(f.data(), f.size(), f_at, g1.data(), g2.data(), bt1, bt2);

    // Solution in scaled coordinates is (f'·h, f''·h²); undo the scaling.
    const double a1 = inv.i11 * bt1 + inv.i12 * bt2;
    const double a2 = inv.i12 * bt1 + inv.i22 * bt2;
    return DerivativePair{a1 * inv_h, a2 * inv_h * inv_h};
}

}  // namespace fhd
