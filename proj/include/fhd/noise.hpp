#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace fhd {

// Deterministic Gaussian source. Streams with different ids are decorrelated
// even for adjacent seeds; the (seed, stream_id, draw index) triple identifies
// a variate reproducibly within one build.
class NoiseStream {
  public:
    NoiseStream(std::uint64_t seed, std::uint64_t stream_id);

    double gaussian();  // standard normal

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }
    std::uint64_t draws() const { return draws_; }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t draws_ = 0;
    std::mt19937_64 eng_;
    std::normal_distribution<double> dist_;
};

// Per-particle stochastic stress and heat flux values for one substep.
struct FluxNoise {
    std::vector<double> s;  // stress
    std::vector<double> h;  // heat flux
};

// Effective sampling volume of particle i: cross-section times half the span
// between its neighbours, one-sided at the array ends.
double local_cell_volume(std::span<const double> xs, std::size_t i, double sigma);

// Standard deviations of the discrete fluctuating fluxes. The correction
// factor compensates the variance reduction of averaging two half-steps.
double stress_amplitude(double eta, double T, double kB, double dt, double Vc,
                        double correction);
double heat_flux_amplitude(double kappa, double T, double kB, double dt, double Vc,
                           double correction);

// Amplitude times one fresh draw from the stream.
double sample_stress(double eta, double T, double kB, double dt, double Vc,
                     double correction, NoiseStream& ns);
double sample_heat_flux(double kappa, double T, double kB, double dt, double Vc,
                        double correction, NoiseStream& ns);

// Var((a+b)/2) / Var(a) for two equally sized sample sets; 0.5 for independent
// same-variance inputs, which is what the sqrt(2) correction pays back.
double two_step_variance_ratio(std::span<const double> a, std::span<const double> b);

}  // namespace fhd
