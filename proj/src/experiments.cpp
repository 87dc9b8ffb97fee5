#include "fhd/experiments.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "fhd/errors.hpp"
#include "fhd/maccormack.hpp"
#include "fhd/stats.hpp"

namespace fhd {

namespace {

// Reference equilibrium variances of the conserved quantities for the dilute
// argon configuration, zero flow and half-sound-speed net flow.
constexpr double kVarRhoRef = 2.35e-8;
constexpr double kVarJZeroRef = 13.34;
constexpr double kVarEZeroRef = 2.84e10;
constexpr double kVarJNetRef = 18.91;
constexpr double kVarENetRef = 3.67e10;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string diag_line(const StepDiagnostics& last, long added, long removed,
                      long samples) {
    std::ostringstream os;
    os << std::setprecision(6);
    os << "cfl_advective=" << last.cfl_advective
       << " cfl_diffusive=" << last.cfl_diffusive << " particles_added=" << added
       << " particles_removed=" << removed << " samples=" << samples;
    return os.str();
}

}  // namespace

RunReport run_equilibrium(const ExperimentConfig& cfg) {
    if (cfg.scenario != Scenario::EquilibriumZeroFlow &&
        cfg.scenario != Scenario::EquilibriumNetFlow) {
        throw InvalidConfig("run_equilibrium needs an equilibrium scenario");
    }
    validate(cfg);
    const auto t0 = Clock::now();
    const GasModel gas = gas_model(cfg);
    const bool net = cfg.scenario == Scenario::EquilibriumNetFlow;
    const PrimitiveState init{cfg.rho_ref, net ? cfg.net_flow_velocity : 0.0, cfg.T_ref};
    ParticleField f = init_uniform(cfg.length, static_cast<std::size_t>(cfg.n_particles),
                                   init, BoundaryKind::Periodic, 0.0, cfg.h_factor);
    MacCormack mc(gas, scheme(cfg), cfg.seed, 0);

    StepDiagnostics d;
    long added = 0, removed = 0;
    for (long m = 0; m < cfg.n_skip; ++m) d = mc.step(f, m);
    StatsAccumulator acc;
    for (long m = 0; m < cfg.n_steps; ++m) {
        d = mc.step(f, cfg.n_skip + m);
        added += d.particles_added;
        removed += d.particles_removed;
        acc.add_field(f, gas);
    }

    const ConservedState var = acc.variance();
    RunReport rep;
    rep.rows = {
        {"Var(rho)", var.rho, kVarRhoRef},
        {"Var(J)", var.J, net ? kVarJNetRef : kVarJZeroRef},
        {"Var(E)", var.E, net ? kVarENetRef : kVarEZeroRef},
    };
    rep.diagnostics = diag_line(d, added, removed, acc.count());
    rep.wall_seconds = seconds_since(t0);
    return rep;
}

RunReport run_time_covariance(const ExperimentConfig& cfg) {
    if (cfg.scenario != Scenario::TimeCovariance) {
        throw InvalidConfig("run_time_covariance needs the time_covariance scenario");
    }
    validate(cfg);
    const auto t0 = Clock::now();
    const GasModel gas = gas_model(cfg);
    const PrimitiveState init{cfg.rho_ref, 0.0, cfg.T_ref};
    ParticleField f = init_uniform(cfg.length, static_cast<std::size_t>(cfg.n_particles),
                                   init, BoundaryKind::Periodic, 0.0, cfg.h_factor);
    MacCormack mc(gas, scheme(cfg), cfg.seed, 0);

    StepDiagnostics d;
    long added = 0, removed = 0;
    for (long m = 0; m < cfg.n_skip; ++m) d = mc.step(f, m);
    std::vector<double> r;
    r.reserve(static_cast<std::size_t>(cfg.n_steps));
    for (long m = 0; m < cfg.n_steps; ++m) {
        d = mc.step(f, cfg.n_skip + m);
        added += d.particles_added;
        removed += d.particles_removed;
        r.push_back(density_mode(f, 1));
    }

    const double varR = time_covariance(r, 0);
    const HydroParams hp = HydroParams::from(gas, cfg.rho_ref, cfg.T_ref, cfg.length);

    RunReport rep;
    rep.series_columns = {"tau", "measured", "analytic", "stderr"};
    std::vector<double> products;
    for (long k = 0; k < cfg.lag_points; ++k) {
        const double tau_target =
            cfg.lag_max * static_cast<double>(k) / static_cast<double>(cfg.lag_points - 1);
        const auto lag = static_cast<std::size_t>(std::llround(tau_target / cfg.dt));
        const double tau = static_cast<double>(lag) * cfg.dt;
        const double est = time_covariance(r, lag);
        products.clear();
        products.reserve(r.size() - lag);
        for (std::size_t t = 0; t + lag < r.size(); ++t) products.push_back(r[t] * r[t + lag]);
        const double se = batch_means_se(products);
        const double ana = analytical_time_covariance(hp, 1, tau, varR);
        rep.series_rows.push_back({tau, est, ana, se});
    }
    rep.diagnostics = diag_line(d, added, removed, static_cast<long>(r.size()));
    rep.wall_seconds = seconds_since(t0);
    return rep;
}

RunReport run_shock(const ExperimentConfig& cfg) {
    if (cfg.scenario != Scenario::StandingShock) {
        throw InvalidConfig("run_shock needs the standing_shock scenario");
    }
    validate(cfg);
    const auto t0 = Clock::now();
    const GasModel gas = gas_model(cfg);
    const ShockStates st =
        rankine_hugoniot(cfg.mach, PrimitiveState{cfg.rho_ref, 0.0, cfg.T_ref}, gas);

    const auto E = static_cast<std::size_t>(cfg.ensemble);
    const long K = cfg.n_steps / cfg.out_every + 1;  // recorded times incl. t=0
    std::vector<std::vector<double>> sigma(E);
    std::vector<long> added(E, 0), removed(E, 0);
    std::vector<StepDiagnostics> last(E);
    std::vector<std::exception_ptr> errors(E);

    const auto realization = [&](std::size_t rz) {
        ParticleField f = init_uniform(cfg.length, static_cast<std::size_t>(cfg.n_particles),
                                       st.right, BoundaryKind::FixedState,
                                       -0.5 * cfg.length, cfg.h_factor);
        f.left_state = st.left;
        f.right_state = st.right;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (f.x[i] < 0.0) {
                f.rho[i] = st.left.rho;
                f.u[i] = st.left.u;
                f.T[i] = st.left.T;
            }
        }
        MacCormack mc(gas, scheme(cfg), cfg.seed, 2 * static_cast<std::uint64_t>(rz));
        auto& sig = sigma[rz];
        sig.reserve(static_cast<std::size_t>(K));
        sig.push_back(shock_location(f, st.left.rho, st.right.rho));
        for (long m = 1; m <= cfg.n_steps; ++m) {
            const StepDiagnostics d = mc.step(f, m - 1);
            added[rz] += d.particles_added;
            removed[rz] += d.particles_removed;
            last[rz] = d;
            if (m % cfg.out_every == 0) {
                sig.push_back(shock_location(f, st.left.rho, st.right.rho));
            }
        }
    };

    const auto worker = [&](std::size_t r0, std::size_t r1) {
        for (std::size_t rz = r0; rz < r1; ++rz) {
            try {
                realization(rz);
            } catch (...) {
                errors[rz] = std::current_exception();
            }
        }
    };

    const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(cfg.threads), E);
    if (n_threads <= 1) {
        worker(0, E);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (std::size_t t = 0; t < n_threads; ++t) {
            const std::size_t r0 = E * t / n_threads;
            const std::size_t r1 = E * (t + 1) / n_threads;
            pool.emplace_back(worker, r0, r1);
        }
        for (auto& th : pool) th.join();
    }
    for (std::size_t rz = 0; rz < E; ++rz) {
        if (errors[rz]) std::rethrow_exception(errors[rz]);
    }

    // across-ensemble variance at each recorded time, realizations combined in
    // index order independent of the thread split
    RunReport rep;
    rep.series_columns = {"t", "var_sigma"};
    for (long k = 0; k < K; ++k) {
        Neumaier sum, sq;
        for (std::size_t rz = 0; rz < E; ++rz) {
            const double s = sigma[rz][static_cast<std::size_t>(k)];
            sum.add(s);
            sq.add(s * s);
        }
        const double n = static_cast<double>(E);
        const double mean = sum.value() / n;
        const double var = std::max(sq.value() / n - mean * mean, 0.0);
        rep.series_rows.push_back({static_cast<double>(k * cfg.out_every) * cfg.dt, var});
    }
    long added_total = 0, removed_total = 0;
    for (std::size_t rz = 0; rz < E; ++rz) {
        added_total += added[rz];
        removed_total += removed[rz];
    }
    rep.diagnostics = diag_line(last[0], added_total, removed_total,
                                static_cast<long>(E) * K);
    rep.wall_seconds = seconds_since(t0);
    return rep;
}

RunReport run(const ExperimentConfig& cfg) {
    switch (cfg.scenario) {
        case Scenario::EquilibriumZeroFlow:
        case Scenario::EquilibriumNetFlow:
            return run_equilibrium(cfg);
        case Scenario::TimeCovariance:
            return run_time_covariance(cfg);
        case Scenario::StandingShock:
            return run_shock(cfg);
    }
    throw InvalidConfig("unhandled scenario");
}

void emit_report(const RunReport& rep, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << std::setprecision(17);
    if (!rep.series_columns.empty()) {
        for (std::size_t c = 0; c < rep.series_columns.size(); ++c) {
            if (c) out << ',';
            out << rep.series_columns[c];
        }
        out << '\n';
        for (const auto& row : rep.series_rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) out << ',';
                out << row[c];
            }
            out << '\n';
        }
    } else {
        out << "quantity,measured,reference,percent_error\n";
        for (const auto& row : rep.rows) {
            out << row.quantity << ',' << row.measured << ',' << row.reference << ','
                << row.percent_error() << '\n';
        }
    }
    out.flush();
    if (!out) throw IoError("write failure on '" + path + "'");
}

void write_summary(const RunReport& rep, std::ostream& os) {
    if (!rep.rows.empty()) {
        os << std::left << std::setw(12) << "quantity" << std::right << std::setw(16)
           << "reference" << std::setw(16) << "measured" << std::setw(12) << "error"
           << '\n';
        for (const auto& row : rep.rows) {
            std::ostringstream pct;
            pct << std::showpos << std::fixed << std::setprecision(1)
                << row.percent_error() << '%';
            os << std::left << std::setw(12) << row.quantity << std::right
               << std::setprecision(6) << std::setw(16) << row.reference << std::setw(16)
               << row.measured << std::setw(12) << pct.str() << '\n';
        }
    }
    if (!rep.series_columns.empty()) {
        os << "series: " << rep.series_rows.size() << " rows (";
        for (std::size_t c = 0; c < rep.series_columns.size(); ++c) {
            if (c) os << ", ";
            os << rep.series_columns[c];
        }
        os << ")\n";
    }
    os << rep.diagnostics << '\n';
    os << "wall time: " << std::setprecision(3) << std::fixed << rep.wall_seconds
       << " s\n";
}

}  // namespace fhd
