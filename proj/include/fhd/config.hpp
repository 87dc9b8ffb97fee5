#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fhd/gas_model.hpp"
#include "fhd/maccormack.hpp"

namespace fhd {

enum class Scenario {
    EquilibriumZeroFlow,
    EquilibriumNetFlow,
    TimeCovariance,
    StandingShock,
};

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& name);

// Complete description of one experiment run. Defaults are the dilute argon
// equilibrium setup; presets overlay the other scenarios. All quantities CGS.
struct ExperimentConfig {
    Scenario scenario = Scenario::EquilibriumZeroFlow;

    // gas
    double mol_diameter = 3.66e-8;    // cm
    double mol_mass = 6.63e-23;       // g
    double boltzmann = 1.380649e-16;  // erg/K
    double gamma = 5.0 / 3.0;

    // domain and discretisation
    double length = 1.25e-4;  // cm
    long n_particles = 40;
    double dt = 1e-13;  // s
    long n_steps = 1000000;
    long n_skip = 10000;
    std::uint64_t seed = 20260822;
    double sigma = 1.568e-12;  // cm^2, system volume / length

    // reference state
    double rho_ref = 1.78e-3;        // g/cm^3
    double T_ref = 273.0;            // K
    double net_flow_velocity = 0.0;  // cm/s

    // shock runs
    double mach = 0.0;
    long ensemble = 100;
    long out_every = 1000;  // steps between recorded outputs

    // covariance runs
    double lag_max = 5e-9;  // s
    long lag_points = 100;

    // scheme
    bool noise = true;
    double h_factor = 3.0;
    double alpha = 6.25;
    double correction = std::numbers::sqrt2;
    long threads = 1;
    std::string out_path;
};

// Key = value text, '#' starts a comment. Unknown keys and malformed values
// raise ParseError naming the line.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);  // IoError when unreadable

// Writes every field as key = value with unit comments; parse_config reads the
// result back to an equal config.
void serialize(const ExperimentConfig& cfg, std::ostream& out);

// Throws ValidationError listing every violated constraint at once.
void validate(const ExperimentConfig& cfg);

ExperimentConfig preset(const std::string& name);  // InvalidConfig for unknown names
std::vector<std::string> preset_names();

GasModel gas_model(const ExperimentConfig& cfg);
SchemeConfig scheme(const ExperimentConfig& cfg);

}  // namespace fhd
