#pragma once

#include <cmath>

#include "fhd/errors.hpp"

namespace fhd {

/// Dilute monatomic hard-sphere gas: constants, equation of state and
/// transport coefficients. All quantities in CGS units.
struct GasModel {
    double d;      // molecular diameter [cm]
    double M;      // molecular mass [g]
    double kB;     // Boltzmann constant [erg/K]
    double gamma;  // specific-heat ratio

    // derived, kept consistent with the base fields
    double R;           // specific gas constant kB/M [erg/(g K)]
    double cv;          // specific heat R/(gamma-1) [erg/(g K)]
    double visc_coef;   // eta = visc_coef * sqrt(T)
    double kappa_coef;  // kappa = kappa_coef * eta

    static GasModel make(double d, double M, double kB, double gamma) {
        if (!(d > 0.0) || !(M > 0.0) || !(kB > 0.0) || !(gamma > 1.0))
            throw InvalidConfig("gas model requires d>0, M>0, kB>0, gamma>1");
        GasModel g;
        g.d = d;
        g.M = M;
        g.kB = kB;
        g.gamma = gamma;
        g.R = kB / M;
        g.cv = g.R / (gamma - 1.0);
        // hard-sphere Chapman-Enskog viscosity, split into sqrt(T) times a constant
        g.visc_coef = 5.0 / (16.0 * d * d) * std::sqrt(M * kB / M_PI);
        g.kappa_coef = 15.0 * kB / (4.0 * M);
        return g;
    }

    /// Argon hard-sphere parameters; gamma = 5/3 (monatomic ideal gas).
    static GasModel argon() {
        return make(3.66e-8, 6.63e-23, 1.380649e-16, 5.0 / 3.0);
    }
};

/// rho [g/cm^3], u [cm/s], T [K]
struct PrimitiveState {
    double rho;
    double u;
    double T;

    bool valid() const { return rho > 0.0 && T > 0.0; }
};

/// rho [g/cm^3], J [g/(cm^2 s)], E [erg/cm^3]
struct ConservedState {
    double rho;
    double J;
    double E;
};

inline double pressure(const PrimitiveState& s, const GasModel& g) {
    return s.rho * g.R * s.T;  // P = rho R T
}

inline double viscosity(double T, const GasModel& g) {
    return g.visc_coef * std::sqrt(T);
}

inline double thermal_conductivity(double eta, const GasModel& g) {
    return g.kappa_coef * eta;
}

inline double sound_speed(double T, const GasModel& g) {
    return std::sqrt(g.gamma * g.R * T);
}

inline ConservedState conserved_from_primitive(const PrimitiveState& s, const GasModel& g) {
    ConservedState c;
    c.rho = s.rho;
    c.J = s.rho * s.u;
    c.E = g.cv * s.rho * s.T + 0.5 * s.rho * s.u * s.u;
    return c;
}

inline PrimitiveState primitive_from_conserved(const ConservedState& c, const GasModel& g) {
    PrimitiveState s;
    s.rho = c.rho;
    s.u = c.J / c.rho;
    s.T = (c.E - 0.5 * c.J * c.J / c.rho) / (g.cv * c.rho);
    return s;
}

}  // namespace fhd
