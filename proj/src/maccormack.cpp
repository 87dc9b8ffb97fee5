#include "fhd/maccormack.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fhd/errors.hpp"
#include "fhd/kernels/kernels.hpp"
#include "fhd/wls.hpp"

namespace fhd {

namespace {

constexpr double kC43 = 4.0 / 3.0;

void validate_scheme(const SchemeConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw InvalidConfig("time step must be positive");
    if (!(cfg.cond_max > 0.0)) throw InvalidConfig("cond_max must be positive");
    if (!(cfg.alpha > 0.0)) throw InvalidConfig("alpha must be positive");
    if (!(cfg.correction >= 0.0)) throw InvalidConfig("noise correction must be non-negative");
    if (!(cfg.gap_min > 0.0) || !(cfg.gap_min < cfg.gap_max))
        throw InvalidConfig("need 0 < gap_min < gap_max");
    if (cfg.noise_enabled && !(cfg.sigma > 0.0))
        throw InvalidConfig("noise requires a positive cross-section sigma");
}

double min_spacing(const ParticleField& f) {
    double dx = f.length();
    for (std::size_t i = 0; i + 1 < f.size(); ++i) dx = std::min(dx, f.x[i + 1] - f.x[i]);
    if (f.boundary == BoundaryKind::Periodic) {
        dx = std::min(dx, (f.x.front() - f.x_min) + (f.x_max - f.x.back()));
    }
    return dx;
}

// Advance every interior particle of `ext` by one explicit stage of length
// cfg.dt, writing the result into `out` (metadata is preserved). All spatial
// derivatives are weighted least-squares fits over the extended neighbourhood
// of the state being differenced, so the stage is purely a function of its
// input. P/eta are the pointwise gas properties of that input; s/h the
// per-particle flux noise (ignored when use_noise is false).
void stage(const ExtendedField& ext, const std::vector<double>& P,
           const std::vector<double>& eta, const std::vector<double>& s,
           const std::vector<double>& h, bool use_noise, const GasModel& gas,
           const SchemeConfig& cfg, long step_index, ParticleField& out,
           std::vector<double>& g1, std::vector<double>& g2) {
    const std::size_t n = ext.interior();
    out.x.resize(n);
    out.rho.resize(n);
    out.u.resize(n);
    out.T.resize(n);

    const double dt = cfg.dt;
    const double inv_h = 1.0 / out.h;
    const double inv_h2 = inv_h * inv_h;
    g1.resize(ext.size());
    g2.resize(ext.size());
    const auto& kt = kern::active();

    std::size_t lo = 0, hi = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t i = ext.ng_left + j;
        const double x0 = ext.x[i];
        // contiguous support slice [lo, hi): positions within out.h of x0;
        // both ends only ever move right as x0 grows
        while (ext.x[lo] < x0 - out.h) ++lo;
        if (hi < lo) hi = lo;
        while (hi < ext.size() && ext.x[hi] <= x0 + out.h) ++hi;
        const std::size_t cnt = hi - lo;
        if (cnt < 3) {  // the slice includes the particle itself
            throw InsufficientNeighborhood(
                "fewer than 2 neighbours inside interaction radius at particle " +
                std::to_string(j));
        }

        // One geometry pass serves every field differenced at x0. The particle
        // itself sits at dx = 0 and drops out of all sums.
        kern::WlsMoments m;
        kt.wls_geometry(ext.x.data() + lo, cnt, x0, inv_h, cfg.alpha, g1.data(), g2.data(), m);
        const NormalInverse inv = solve_moments(m, cfg.cond_max);

        const auto fit = [&](const double* field, double f0) {
            double bt1 = 0.0, bt2 = 0.0;
            kt.wls_project(field + lo, cnt, f0, g1.data(), g2.data(), bt1, bt2);
            const double a1 = inv.i11 * bt1 + inv.i12 * bt2;
            const double a2 = inv.i12 * bt1 + inv.i22 * bt2;
            return DerivativePair{a1 * inv_h, a2 * inv_h2};
        };

        const double rho0 = ext.rho[i];
        const double u0 = ext.u[i];
        const double T0 = ext.T[i];
        const double P0 = P[i];
        const double eta0 = eta[i];
        const double kap0 = gas.kappa_coef * eta0;

        const auto du = fit(ext.u.data(), u0);
        const auto dP = fit(P.data(), P0);
        const auto de = fit(eta.data(), eta0);
        const auto dT = fit(ext.T.data(), T0);
        // kappa is a fixed multiple of eta, and the fit is linear in the values
        const double kapx = gas.kappa_coef * de.fx;

        double sx = 0.0, hx = 0.0, s0 = 0.0;
        if (use_noise) {
            sx = fit(s.data(), s[i]).fx;
            hx = fit(h.data(), h[i]).fx;
            s0 = s[i];
        }

        out.x[j] = x0 + dt * u0;
        out.rho[j] = rho0 - dt * rho0 * du.fx;
        out.u[j] = u0 + dt / rho0 *
                            (-dP.fx + kC43 * (eta0 * du.fxx + de.fx * du.fx) + sx);
        out.T[j] = T0 + dt / (gas.cv * rho0) *
                            (-P0 * du.fx + kC43 * eta0 * du.fx * du.fx + kap0 * dT.fxx +
                             kapx * dT.fx + s0 * du.fx + hx);

        if (!std::isfinite(out.x[j]) || !std::isfinite(out.u[j]) ||
            !std::isfinite(out.rho[j]) || !std::isfinite(out.T[j]) ||
            !(out.rho[j] > 0.0) || !(out.T[j] > 0.0)) {
            throw StateBlowup("state became non-finite or non-positive", step_index,
                              static_cast<long>(j));
        }
    }

    for (std::size_t j = 0; j + 1 < n; ++j) {
        if (!(out.x[j] < out.x[j + 1])) {
            throw StateBlowup("particle ordering lost during stage", step_index,
                              static_cast<long>(j));
        }
    }
}

void copy_meta(const ParticleField& from, ParticleField& to) {
    to.x_min = from.x_min;
    to.x_max = from.x_max;
    to.dx0 = from.dx0;
    to.h = from.h;
    to.boundary = from.boundary;
    to.left_state = from.left_state;
    to.right_state = from.right_state;
}

void eos_over(const ExtendedField& ext, const GasModel& gas, std::vector<double>& P,
              std::vector<double>& eta, std::vector<double>& kappa) {
    P.resize(ext.size());
    eta.resize(ext.size());
    kappa.resize(ext.size());
    const kern::EosCoeffs c{gas.R, gas.visc_coef, gas.kappa_coef, gas.cv};
    kern::active().eos_transport(ext.rho.data(), ext.T.data(), ext.size(), c, P.data(),
                                 eta.data(), kappa.data());
}

}  // namespace

StabilityReport check_stability(const ParticleField& f, const GasModel& gas,
                                const SchemeConfig& cfg) {
    if (f.size() < 2) throw DegenerateField("stability check needs at least 2 particles");
    double umax = 0.0, rho_sum = 0.0, T_sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        umax = std::max(umax, std::abs(f.u[i]));
        rho_sum += f.rho[i];
        T_sum += f.T[i];
    }
    const auto n = static_cast<double>(f.size());
    const double rho_bar = rho_sum / n;
    const double T_bar = T_sum / n;
    const double dx = min_spacing(f);

    const double eta_bar = viscosity(T_bar, gas);
    const double d_mom = kC43 * eta_bar / rho_bar;
    const double d_th = thermal_conductivity(eta_bar, gas) / (rho_bar * gas.cv);

    StabilityReport r;
    r.cfl_advective = (umax + sound_speed(T_bar, gas)) * cfg.dt / dx;
    r.cfl_diffusive = std::max(d_mom, d_th) * cfg.dt / (dx * dx);
    return r;
}

ParticleField substep(const ParticleField& f, const GasModel& gas,
                      const SchemeConfig& cfg, const FluxNoise& noise) {
    validate_scheme(cfg);
    const bool use_noise = !noise.s.empty() || !noise.h.empty();
    if (use_noise && (noise.s.size() != f.size() || noise.h.size() != f.size())) {
        throw MismatchedFields("flux noise arrays must match the field size");
    }

    ExtendedField ext;
    build_extended(f, ext);
    std::vector<double> P, eta, kappa;
    eos_over(ext, gas, P, eta, kappa);

    // spread interior noise onto the extended layout: images repeat their
    // source particle's value, reservoir ghosts carry none
    std::vector<double> s(ext.size(), 0.0), h(ext.size(), 0.0);
    if (use_noise) {
        std::copy(noise.s.begin(), noise.s.end(), s.begin() + static_cast<std::ptrdiff_t>(ext.ng_left));
        std::copy(noise.h.begin(), noise.h.end(), h.begin() + static_cast<std::ptrdiff_t>(ext.ng_left));
        for (std::size_t gi = 0; gi < ext.ghost_src.size(); ++gi) {
            const long src = ext.ghost_src[gi];
            if (src < 0) continue;
            const std::size_t i = (gi < ext.ng_left) ? gi : ext.interior() + gi;
            s[i] = noise.s[static_cast<std::size_t>(src)];
            h[i] = noise.h[static_cast<std::size_t>(src)];
        }
    }

    ParticleField out;
    copy_meta(f, out);
    std::vector<double> g1, g2;
    stage(ext, P, eta, s, h, use_noise, gas, cfg, 0, out, g1, g2);
    return out;
}

void average_final(ParticleField& into, const ParticleField& other) {
    if (into.size() != other.size()) {
        throw MismatchedFields("cannot average fields with different particle counts");
    }
    for (std::size_t i = 0; i < into.size(); ++i) {
        into.x[i] = 0.5 * (into.x[i] + other.x[i]);
        into.rho[i] = 0.5 * (into.rho[i] + other.rho[i]);
        into.u[i] = 0.5 * (into.u[i] + other.u[i]);
        into.T[i] = 0.5 * (into.T[i] + other.T[i]);
    }
}

MacCormack::MacCormack(const GasModel& gas, const SchemeConfig& cfg, std::uint64_t seed,
                       std::uint64_t stream_base)
    : gas_(gas), cfg_(cfg), pred_(seed, stream_base), corr_(seed, stream_base + 1) {
    validate_scheme(cfg_);
}

void MacCormack::compute_eos(const ExtendedField& ext) {
    eos_over(ext, gas_, P_, eta_, kappa_);
}

void MacCormack::sample_noise(const ExtendedField& ext, NoiseStream& ns) {
    s_.assign(ext.size(), 0.0);
    h_.assign(ext.size(), 0.0);
    if (!cfg_.noise_enabled) return;
    const std::span<const double> xs(ext.x);
    // Draw order is part of the reproducibility contract: interior particles in
    // ascending position, stress before heat flux, then ghosts left block
    // first. Periodic images reuse their source particle's values.
    for (std::size_t j = 0; j < ext.interior(); ++j) {
        const std::size_t i = ext.ng_left + j;
        const double Vc = local_cell_volume(xs, i, cfg_.sigma);
        s_[i] = sample_stress(eta_[i], ext.T[i], gas_.kB, cfg_.dt, Vc, cfg_.correction, ns);
        h_[i] = sample_heat_flux(kappa_[i], ext.T[i], gas_.kB, cfg_.dt, Vc, cfg_.correction, ns);
    }
    for (std::size_t gi = 0; gi < ext.ghost_src.size(); ++gi) {
        const std::size_t i = (gi < ext.ng_left) ? gi : ext.interior() + gi;
        const long src = ext.ghost_src[gi];
        if (src >= 0) {
            s_[i] = s_[ext.ng_left + static_cast<std::size_t>(src)];
            h_[i] = h_[ext.ng_left + static_cast<std::size_t>(src)];
        } else {
            const double Vc = local_cell_volume(xs, i, cfg_.sigma);
            s_[i] = sample_stress(eta_[i], ext.T[i], gas_.kB, cfg_.dt, Vc, cfg_.correction, ns);
            h_[i] = sample_heat_flux(kappa_[i], ext.T[i], gas_.kB, cfg_.dt, Vc, cfg_.correction, ns);
        }
    }
}

StepDiagnostics MacCormack::step(ParticleField& f, long step_index) {
    StepDiagnostics diag;
    const StabilityReport stab = check_stability(f, gas_, cfg_);
    diag.cfl_advective = stab.cfl_advective;
    diag.cfl_diffusive = stab.cfl_diffusive;
    if (cfg_.stability_enforce &&
        (stab.cfl_advective > 1.0 || stab.cfl_diffusive > 0.5)) {
        throw StabilityViolation("time step limit exceeded: advective " +
                                 std::to_string(stab.cfl_advective) + ", diffusive " +
                                 std::to_string(stab.cfl_diffusive));
    }

    // predictor: derivatives and noise of the current state
    build_extended(f, ext_);
    compute_eos(ext_);
    sample_noise(ext_, pred_);
    copy_meta(f, star_);
    stage(ext_, P_, eta_, s_, h_, cfg_.noise_enabled, gas_, cfg_, step_index, star_, g1_, g2_);

    // corrector: same stage applied to the predicted state with fresh noise
    build_extended(star_, ext_);
    compute_eos(ext_);
    sample_noise(ext_, corr_);
    copy_meta(f, dstar_);
    stage(ext_, P_, eta_, s_, h_, cfg_.noise_enabled, gas_, cfg_, step_index, dstar_, g1_, g2_);

    average_final(f, dstar_);
    apply_boundary(f, cfg_.gap_max);
    const ManageResult mr = manage_particles(f, cfg_.gap_min, cfg_.gap_max);
    diag.particles_added = mr.added;
    diag.particles_removed = mr.removed;
    return diag;
}

}  // namespace fhd
