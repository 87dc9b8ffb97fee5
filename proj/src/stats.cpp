#include "fhd/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fhd/errors.hpp"
#include "fhd/kernels/kernels.hpp"

namespace fhd {

void StatsAccumulator::add_field(const ParticleField& f, const GasModel& gas) {
    if (f.size() == 0) return;
    double out[6];
    kern::active().conserved_sums(f.rho.data(), f.u.data(), f.T.data(), f.size(),
                                  gas.cv, out);
    for (int k = 0; k < 6; ++k) sums_[k].add(out[k]);
    count_ += static_cast<long>(f.size());
}

void StatsAccumulator::add_sample(const ConservedState& c) {
    sums_[0].add(c.rho);
    sums_[1].add(c.rho * c.rho);
    sums_[2].add(c.J);
    sums_[3].add(c.J * c.J);
    sums_[4].add(c.E);
    sums_[5].add(c.E * c.E);
    ++count_;
}

void StatsAccumulator::merge(const StatsAccumulator& other) {
    for (int k = 0; k < 6; ++k) sums_[k].add(other.sums_[k].value());
    count_ += other.count_;
}

ConservedState StatsAccumulator::mean() const {
    if (count_ == 0) throw InsufficientData("no observations accumulated");
    const auto n = static_cast<double>(count_);
    return ConservedState{sums_[0].value() / n, sums_[2].value() / n,
                          sums_[4].value() / n};
}

ConservedState StatsAccumulator::variance() const {
    if (count_ < 2) throw InsufficientData("variance needs at least 2 observations");
    const auto n = static_cast<double>(count_);
    const auto pop_var = [n](const Neumaier& sum, const Neumaier& sq) {
        const double m = sum.value() / n;
        return std::max(sq.value() / n - m * m, 0.0);
    };
    return ConservedState{pop_var(sums_[0], sums_[1]), pop_var(sums_[2], sums_[3]),
                          pop_var(sums_[4], sums_[5])};
}

double density_mode(const ParticleField& f, int n) {
    if (n < 1) throw InvalidConfig("mode index must be at least 1");
    if (f.size() == 0) throw InsufficientData("empty field has no mode amplitude");
    const double w = 2.0 * M_PI * static_cast<double>(n) / f.length();
    Neumaier acc;
    for (std::size_t i = 0; i < f.size(); ++i) {
        acc.add(f.rho[i] * std::sin(w * (f.x[i] - f.x_min)));
    }
    return acc.value() / static_cast<double>(f.size());
}

double time_covariance(std::span<const double> r, std::size_t lag) {
    if (r.size() <= lag) throw InsufficientData("no origins available at this lag");
    const std::size_t n0 = r.size() - lag;
    Neumaier acc;
    for (std::size_t t = 0; t < n0; ++t) acc.add(r[t] * r[t + lag]);
    return acc.value() / static_cast<double>(n0);
}

double batch_means_se(std::span<const double> v, std::size_t n_batches) {
    if (n_batches < 2) throw InvalidConfig("need at least 2 batches");
    if (v.size() < 2 * n_batches) throw InsufficientData("too few values for batch means");
    const std::size_t bs = v.size() / n_batches;  // tail remainder is dropped
    std::vector<double> bm(n_batches);
    for (std::size_t b = 0; b < n_batches; ++b) {
        Neumaier acc;
        for (std::size_t i = b * bs; i < (b + 1) * bs; ++i) acc.add(v[i]);
        bm[b] = acc.value() / static_cast<double>(bs);
    }
    double grand = 0.0;
    for (double m : bm) grand += m;
    grand /= static_cast<double>(n_batches);
    double s2 = 0.0;
    for (double m : bm) s2 += (m - grand) * (m - grand);
    s2 /= static_cast<double>(n_batches - 1);
    return std::sqrt(s2 / static_cast<double>(n_batches));
}

HydroParams HydroParams::from(const GasModel& gas, double rho_ref, double T_ref,
                              double L) {
    if (!(rho_ref > 0.0) || !(T_ref > 0.0) || !(L > 0.0))
        throw InvalidConfig("reference state and length must be positive");
    HydroParams p;
    p.gamma = gas.gamma;
    p.c_s = sound_speed(T_ref, gas);
    const double eta = viscosity(T_ref, gas);
    p.D_v = (4.0 / 3.0) * eta / rho_ref;
    p.D_T = thermal_conductivity(eta, gas) / (rho_ref * gas.cv);
    p.Gamma = 0.5 * (p.D_v + (p.gamma - 1.0) * p.D_T);
    p.L = L;
    return p;
}

double analytical_time_covariance(const HydroParams& p, int n, double tau, double varR) {
    if (n < 1) throw InvalidConfig("mode index must be at least 1");
    const double w = 2.0 * M_PI * static_cast<double>(n) / p.L;
    const double w2 = w * w;
    const double g = p.gamma;
    const double damped = std::exp(-w2 * p.Gamma * tau);
    const double heat = (1.0 - 1.0 / g) * std::exp(-w2 * p.D_T * tau);
    const double sound = (1.0 / g) * damped * std::cos(p.c_s * w * tau);
    const double skew =
        ((3.0 * p.Gamma - p.D_v) / (g * g * p.c_s)) * w * damped * std::sin(p.c_s * w * tau);
    return (heat + sound + skew) * varR;
}

double shock_location(const ParticleField& f, double rho_L, double rho_R) {
    if (rho_L == rho_R) throw DegenerateField("equal side densities leave the interface undefined");
    if (f.size() == 0) throw InsufficientData("empty field has no mean density");
    Neumaier acc;
    for (double r : f.rho) acc.add(r);
    const double rho_bar = acc.value() / static_cast<double>(f.size());
    const double L = f.length();
    return 0.5 * (f.x_min + f.x_max) +
           L * (rho_bar - 0.5 * (rho_L + rho_R)) / (rho_L - rho_R);
}

ShockStates rankine_hugoniot(double mach, const PrimitiveState& right,
                             const GasModel& gas) {
    if (!(mach > 1.0)) throw InvalidMach("shock requires mach > 1");
    if (!right.valid()) throw InvalidConfig("upstream state needs positive rho and T");
    const double g = gas.gamma;
    const double m2 = mach * mach;
    const double rho_ratio = (g + 1.0) * m2 / ((g - 1.0) * m2 + 2.0);
    const double T_ratio = (2.0 * g * m2 - (g - 1.0)) * ((g - 1.0) * m2 + 2.0) /
                           ((g + 1.0) * (g + 1.0) * m2);
    ShockStates st;
    st.right = right;
    st.right.u = -mach * sound_speed(right.T, gas);  // inflow in the shock frame
    st.left.rho = right.rho * rho_ratio;
    st.left.T = right.T * T_ratio;
    st.left.u = st.right.u * right.rho / st.left.rho;  // mass flux continuity
    return st;
}

}  // namespace fhd
