#pragma once

#include <cstdint>
#include <numbers>
#include <vector>

#include "fhd/gas_model.hpp"
#include "fhd/noise.hpp"
#include "fhd/particle_field.hpp"

namespace fhd {

struct SchemeConfig {
    double dt = 0.0;
    bool noise_enabled = true;
    double correction = std::numbers::sqrt2;  // restores flux variance lost to averaging
    bool stability_enforce = false;           // throw instead of just reporting CFL numbers
    double sigma = 0.0;                       // cross-section area for cell volumes
    double cond_max = 1e12;
    double alpha = 6.25;
    double gap_max = 1.5;  // in units of dx0
    double gap_min = 0.25;
};

struct StepDiagnostics {
    double cfl_advective = 0.0;
    double cfl_diffusive = 0.0;
    long particles_added = 0;
    long particles_removed = 0;
};

struct StabilityReport {
    double cfl_advective;  // (max|u| + c_s(mean T)) dt / min spacing, limit 1
    double cfl_diffusive;  // max(momentum, thermal diffusivity) dt / min spacing^2, limit 1/2
};

StabilityReport check_stability(const ParticleField& f, const GasModel& gas,
                                const SchemeConfig& cfg);

// One explicit half-update of every particle from derivatives of the current
// state; this is the building block the predictor and corrector both apply.
// `noise` holds per-particle flux values (sized like f, or empty for none);
// reservoir ghosts see zero noise here, periodic images mirror their source.
ParticleField substep(const ParticleField& f, const GasModel& gas,
                      const SchemeConfig& cfg, const FluxNoise& noise);

// into = (into + other) / 2, componentwise including positions.
void average_final(ParticleField& into, const ParticleField& other);

// Two-stage predictor/corrector integrator with per-stage stochastic fluxes.
// Each full step advances the field by dt, applies the boundary and regularises
// particle spacing. Noise streams: (seed, stream_base) drives the predictor,
// (seed, stream_base + 1) the corrector; ensemble members should space their
// stream_base values 2 apart.
class MacCormack {
  public:
    MacCormack(const GasModel& gas, const SchemeConfig& cfg, std::uint64_t seed,
               std::uint64_t stream_base = 0);

    StepDiagnostics step(ParticleField& f, long step_index);

    const SchemeConfig& config() const { return cfg_; }
    const GasModel& gas() const { return gas_; }

  private:
    void compute_eos(const ExtendedField& ext);
    void sample_noise(const ExtendedField& ext, NoiseStream& ns);

    GasModel gas_;
    SchemeConfig cfg_;
    NoiseStream pred_;
    NoiseStream corr_;

    // workspace reused across steps; arrays are sized to the extended field
    ExtendedField ext_;
    ParticleField star_;
    ParticleField dstar_;
    std::vector<double> P_, eta_, kappa_, s_, h_;
    std::vector<double> g1_, g2_;
};

}  // namespace fhd
