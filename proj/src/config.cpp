#include "fhd/config.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "fhd/errors.hpp"

namespace fhd {

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::EquilibriumZeroFlow: return "equilibrium_zero_flow";
        case Scenario::EquilibriumNetFlow: return "equilibrium_net_flow";
        case Scenario::TimeCovariance: return "time_covariance";
        case Scenario::StandingShock: return "standing_shock";
    }
    throw InvalidConfig("unhandled scenario value");
}

Scenario scenario_from_string(const std::string& name) {
    if (name == "equilibrium_zero_flow") return Scenario::EquilibriumZeroFlow;
    if (name == "equilibrium_net_flow") return Scenario::EquilibriumNetFlow;
    if (name == "time_covariance") return Scenario::TimeCovariance;
    if (name == "standing_shock") return Scenario::StandingShock;
    throw InvalidConfig("unknown scenario '" + name + "'");
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] void fail(long line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

double to_double(const std::string& v, long line) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) fail(line, "trailing characters after number '" + v + "'");
        return x;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        fail(line, "expected a number, got '" + v + "'");
    }
}

long to_long(const std::string& v, long line) {
    try {
        std::size_t used = 0;
        const long x = std::stol(v, &used);
        if (used != v.size()) fail(line, "trailing characters after integer '" + v + "'");
        return x;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        fail(line, "expected an integer, got '" + v + "'");
    }
}

std::uint64_t to_u64(const std::string& v, long line) {
    try {
        std::size_t used = 0;
        const unsigned long long x = std::stoull(v, &used);
        if (used != v.size()) fail(line, "trailing characters after integer '" + v + "'");
        return x;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        fail(line, "expected an unsigned integer, got '" + v + "'");
    }
}

bool to_bool(const std::string& v, long line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    fail(line, "expected true/false, got '" + v + "'");
}

void apply(ExperimentConfig& c, const std::string& key, const std::string& val, long line) {
    if (key == "scenario") {
        try {
            c.scenario = scenario_from_string(val);
        } catch (const InvalidConfig& e) {
            fail(line, e.what());
        }
    } else if (key == "mol_diameter") c.mol_diameter = to_double(val, line);
    else if (key == "mol_mass") c.mol_mass = to_double(val, line);
    else if (key == "boltzmann") c.boltzmann = to_double(val, line);
    else if (key == "gamma") c.gamma = to_double(val, line);
    else if (key == "length") c.length = to_double(val, line);
    else if (key == "n_particles") c.n_particles = to_long(val, line);
    else if (key == "dt") c.dt = to_double(val, line);
    else if (key == "n_steps") c.n_steps = to_long(val, line);
    else if (key == "n_skip") c.n_skip = to_long(val, line);
    else if (key == "seed") c.seed = to_u64(val, line);
    else if (key == "sigma") c.sigma = to_double(val, line);
    else if (key == "rho_ref") c.rho_ref = to_double(val, line);
    else if (key == "T_ref") c.T_ref = to_double(val, line);
    else if (key == "net_flow_velocity") c.net_flow_velocity = to_double(val, line);
    else if (key == "mach") c.mach = to_double(val, line);
    else if (key == "ensemble") c.ensemble = to_long(val, line);
    else if (key == "out_every") c.out_every = to_long(val, line);
    else if (key == "lag_max") c.lag_max = to_double(val, line);
    else if (key == "lag_points") c.lag_points = to_long(val, line);
    else if (key == "noise") c.noise = to_bool(val, line);
    else if (key == "h_factor") c.h_factor = to_double(val, line);
    else if (key == "alpha") c.alpha = to_double(val, line);
    else if (key == "correction") c.correction = to_double(val, line);
    else if (key == "threads") c.threads = to_long(val, line);
    else if (key == "out_path") c.out_path = val;
    else fail(line, "unknown key '" + key + "'");
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string raw;
    long line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string stripped = trim(raw);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) fail(line, "expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string val = trim(stripped.substr(eq + 1));
        if (key.empty()) fail(line, "empty key");
        apply(cfg, key, val, line);
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    return parse_config(in);
}

void serialize(const ExperimentConfig& c, std::ostream& out) {
    out << std::setprecision(17);
    out << "scenario = " << to_string(c.scenario) << '\n';
    out << "\n# gas (CGS)\n";
    out << "mol_diameter = " << c.mol_diameter << "  # cm\n";
    out << "mol_mass = " << c.mol_mass << "  # g\n";
    out << "boltzmann = " << c.boltzmann << "  # erg/K\n";
    out << "gamma = " << c.gamma << '\n';
    out << "\n# domain and discretisation\n";
    out << "length = " << c.length << "  # cm\n";
    out << "n_particles = " << c.n_particles << '\n';
    out << "dt = " << c.dt << "  # s\n";
    out << "n_steps = " << c.n_steps << '\n';
    out << "n_skip = " << c.n_skip << '\n';
    out << "seed = " << c.seed << '\n';
    out << "sigma = " << c.sigma << "  # cm^2\n";
    out << "\n# reference state\n";
    out << "rho_ref = " << c.rho_ref << "  # g/cm^3\n";
    out << "T_ref = " << c.T_ref << "  # K\n";
    out << "net_flow_velocity = " << c.net_flow_velocity << "  # cm/s\n";
    out << "\n# shock\n";
    out << "mach = " << c.mach << '\n';
    out << "ensemble = " << c.ensemble << '\n';
    out << "out_every = " << c.out_every << "  # steps\n";
    out << "\n# covariance\n";
    out << "lag_max = " << c.lag_max << "  # s\n";
    out << "lag_points = " << c.lag_points << '\n';
    out << "\n# scheme\n";
    out << "noise = " << (c.noise ? "true" : "false") << '\n';
    out << "h_factor = " << c.h_factor << "  # interaction radius in units of dx0\n";
    out << "alpha = " << c.alpha << '\n';
    out << "correction = " << c.correction << '\n';
    out << "threads = " << c.threads << '\n';
    out << "out_path = " << c.out_path << '\n';
}

void validate(const ExperimentConfig& c) {
    std::vector<std::string> bad;
    const auto need = [&bad](bool ok, const char* msg) {
        if (!ok) bad.emplace_back(msg);
    };
    need(c.mol_diameter > 0.0, "mol_diameter must be positive");
    need(c.mol_mass > 0.0, "mol_mass must be positive");
    need(c.boltzmann > 0.0, "boltzmann must be positive");
    need(c.gamma > 1.0, "gamma must exceed 1");
    need(c.length > 0.0, "length must be positive");
    need(c.n_particles >= 4, "n_particles must be at least 4");
    need(c.dt > 0.0, "dt must be positive");
    need(c.n_steps >= 1, "n_steps must be at least 1");
    need(c.n_skip >= 0, "n_skip must not be negative");
    need(!c.noise || c.sigma > 0.0, "sigma must be positive when noise is on");
    need(c.rho_ref > 0.0, "rho_ref must be positive");
    need(c.T_ref > 0.0, "T_ref must be positive");
    need(c.ensemble >= 1, "ensemble must be at least 1");
    need(c.out_every >= 1, "out_every must be at least 1");
    need(c.threads >= 1, "threads must be at least 1");
    need(c.h_factor > 0.0, "h_factor must be positive");
    need(c.alpha > 0.0, "alpha must be positive");
    need(c.correction >= 0.0, "correction must not be negative");
    if (c.scenario == Scenario::StandingShock) {
        need(c.mach > 1.0, "standing_shock requires mach > 1");
        // the ensemble variance is referenced to identical fields at t=0
        need(c.n_skip == 0, "standing_shock requires n_skip = 0");
    }
    if (c.scenario == Scenario::TimeCovariance) {
        need(c.lag_points >= 2, "time_covariance requires at least 2 lag points");
        need(c.lag_max > 0.0, "lag_max must be positive");
        need(c.lag_max < c.dt * static_cast<double>(c.n_steps),
             "lag_max must be shorter than the sampled run");
    }
    if (!bad.empty()) {
        std::string msg = "invalid configuration:";
        for (const auto& b : bad) msg += "\n  - " + b;
        throw ValidationError(msg);
    }
}

ExperimentConfig preset(const std::string& name) {
    ExperimentConfig c;  // defaults are the table1-equilibrium values
    if (name == "table1-equilibrium") return c;
    if (name == "table1-netflow") {
        c.scenario = Scenario::EquilibriumNetFlow;
        c.net_flow_velocity = 15390.5;  // half the reference sound speed
        return c;
    }
    if (name == "table1-covariance") {
        c.scenario = Scenario::TimeCovariance;
        return c;
    }
    if (name == "table4-shock-mach2") {
        c.scenario = Scenario::StandingShock;
        c.length = 5.0e-4;
        c.n_particles = 160;  // keeps the equilibrium particle spacing
        c.mach = 2.0;
        c.n_steps = 20000;
        c.n_skip = 0;
        return c;
    }
    throw InvalidConfig("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
    return {"table1-equilibrium", "table1-netflow", "table1-covariance",
            "table4-shock-mach2"};
}

GasModel gas_model(const ExperimentConfig& c) {
    return GasModel::make(c.mol_diameter, c.mol_mass, c.boltzmann, c.gamma);
}

SchemeConfig scheme(const ExperimentConfig& c) {
    SchemeConfig s;
    s.dt = c.dt;
    s.noise_enabled = c.noise;
    s.correction = c.correction;
    s.sigma = c.sigma;
    s.alpha = c.alpha;
    return s;
}

}  // namespace fhd
