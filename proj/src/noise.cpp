#include "fhd/noise.hpp"

#include <cmath>

#include "fhd/errors.hpp"

namespace fhd {

namespace {

std::uint64_t splitmix64(std::uint64_t s) {
    s += 0x9E3779B97F4A7C15ULL;
    s = (s ^ (s >> 30)) * 0xBF58476D1CE4E5B9ULL;
    s = (s ^ (s >> 27)) * 0x94D049BB133111EBULL;
    return s ^ (s >> 31);
}

}  // namespace

NoiseStream::NoiseStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    // Mix seed and stream id so that nearby values still land far apart in the
    // engine's seed space.
    eng_.seed(splitmix64(seed + 0x9E3779B97F4A7C15ULL * (stream_id + 1)));
}

double NoiseStream::gaussian() {
    ++draws_;
    return dist_(eng_);
}

double local_cell_volume(std::span<const double> xs, std::size_t i, double sigma) {
    if (xs.size() < 2) throw InsufficientData("cell volume needs at least 2 positions");
    if (!(sigma > 0.0)) throw InvalidConfig("cross-section sigma must be positive");
    if (i == 0) return sigma * (xs[1] - xs[0]);
    if (i + 1 == xs.size()) return sigma * (xs[i] - xs[i - 1]);
    return sigma * 0.5 * (xs[i + 1] - xs[i - 1]);
}

double stress_amplitude(double eta, double T, double kB, double dt, double Vc,
                        double correction) {
    return correction * std::sqrt(8.0 * kB * eta * T / (3.0 * dt * Vc));
}

double heat_flux_amplitude(double kappa, double T, double kB, double dt, double Vc,
                           double correction) {
    return correction * std::sqrt(2.0 * kB * kappa * T * T / (dt * Vc));
}

double sample_stress(double eta, double T, double kB, double dt, double Vc,
                     double correction, NoiseStream& ns) {
    return stress_amplitude(eta, T, kB, dt, Vc, correction) * ns.gaussian();
}

double sample_heat_flux(double kappa, double T, double kB, double dt, double Vc,
                        double correction, NoiseStream& ns) {
    return heat_flux_amplitude(kappa, T, kB, dt, Vc, correction) * ns.gaussian();
}

double two_step_variance_ratio(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw MismatchedFields("sample sets differ in length");
    if (a.size() < 2) throw InsufficientData("variance ratio needs at least 2 samples");
    const auto n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double va = 0.0, vm = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double dm = 0.5 * (a[i] + b[i]) - 0.5 * (ma + mb);
        va += da * da;
        vm += dm * dm;
    }
    if (va == 0.0) throw InsufficientData("first sample set has zero variance");
    return vm / va;
}

}  // namespace fhd
