#pragma once

#include <cmath>
#include <cstddef>
#include <span>

#include "fhd/gas_model.hpp"
#include "fhd/particle_field.hpp"

namespace fhd {

// Compensated accumulator (Neumaier variant of Kahan summation); keeps grand
// totals accurate over millions of additions.
struct Neumaier {
    double s = 0.0;
    double c = 0.0;

    void add(double x) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x)) {
            c += (s - t) + x;
        } else {
            c += (x - t) + s;
        }
        s = t;
    }
    double value() const { return s + c; }
};

// Streaming first and second moments of the conserved densities rho, J = rho u
// and E = cv rho T + rho u^2/2, pooled over every particle of every field
// passed in. variance() is the population variance E[x^2] - E[x]^2.
class StatsAccumulator {
  public:
    void add_field(const ParticleField& f, const GasModel& gas);
    void add_sample(const ConservedState& c);
    void merge(const StatsAccumulator& other);

    long count() const { return count_; }
    ConservedState mean() const;      // InsufficientData when empty
    ConservedState variance() const;  // InsufficientData below 2 observations

  private:
    Neumaier sums_[6];  // rho, rho^2, J, J^2, E, E^2
    long count_ = 0;
};

// Amplitude of the n-th sine mode of the density field,
// (1/count) sum_i rho_i sin(2 pi n (x_i - x_min) / L).
double density_mode(const ParticleField& f, int n);

// Lagged second moment (1/N) sum_t r[t] r[t+lag] over the N available origins.
// The series mean is not subtracted; equilibrium modes average to zero.
double time_covariance(std::span<const double> r, std::size_t lag);

// Standard error of the mean of `v` from `n_batches` contiguous batch means;
// robust against the serial correlation a mode time series carries.
double batch_means_se(std::span<const double> v, std::size_t n_batches = 32);

// Reference-state transport parameters entering the analytical mode dynamics.
struct HydroParams {
    double gamma;
    double c_s;    // adiabatic sound speed at the reference temperature
    double D_T;    // thermal diffusivity kappa / (rho cv)
    double D_v;    // longitudinal momentum diffusivity (4/3) eta / rho
    double Gamma;  // sound damping (D_v + (gamma-1) D_T) / 2
    double L;

    static HydroParams from(const GasModel& gas, double rho_ref, double T_ref, double L);
};

// Equilibrium time covariance of density mode n predicted by linearised
// hydrodynamics: a heat-mode decay plus a damped sound oscillation, scaled by
// the equal-time variance varR.
double analytical_time_covariance(const HydroParams& p, int n, double tau, double varR);

// Interface position recovered from total mass: the point where a piecewise
// constant rho_L/rho_R profile over the domain matches the mean density.
double shock_location(const ParticleField& f, double rho_L, double rho_R);

struct ShockStates {
    PrimitiveState left;   // post-shock (downstream)
    PrimitiveState right;  // pre-shock (upstream)
};

// Jump conditions for a stationary normal shock of the given Mach number. The
// upstream rho and T are taken from `right`; its velocity is ignored and
// replaced by the shock-frame inflow speed -mach * c_s(T_right).
ShockStates rankine_hugoniot(double mach, const PrimitiveState& right, const GasModel& gas);

}  // namespace fhd
