#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fhd/config.hpp"

namespace fhd {

struct ReportRow {
    std::string quantity;
    double measured = 0.0;
    double reference = 0.0;

    double percent_error() const { return (measured - reference) / reference * 100.0; }
};

// Everything a finished run reports: a measured-vs-reference table, an optional
// time/lag series, and a one-line diagnostics summary. Only the table or the
// series lands in the CSV; wall_seconds stays in the stdout summary so emitted
// files are reproducible byte for byte.
struct RunReport {
    std::vector<ReportRow> rows;
    std::vector<std::string> series_columns;
    std::vector<std::vector<double>> series_rows;
    std::string diagnostics;
    double wall_seconds = 0.0;
};

// Periodic equilibrium run (zero or uniform net flow): accumulates the
// conserved-quantity variances over every particle of every sampled step and
// compares them against the reference values.
RunReport run_equilibrium(const ExperimentConfig& cfg);

// Records the first density mode every step, then reports its lagged
// covariance on a grid against the linearised-hydrodynamics prediction with a
// batch-means standard error per lag.
RunReport run_time_covariance(const ExperimentConfig& cfg);

// Ensemble of standing-shock realizations with fixed-state boundaries; reports
// the across-ensemble variance of the recovered shock location over time.
RunReport run_shock(const ExperimentConfig& cfg);

// Dispatch on cfg.scenario.
RunReport run(const ExperimentConfig& cfg);

void emit_report(const RunReport& rep, const std::string& path);
void write_summary(const RunReport& rep, std::ostream& os);

}  // namespace fhd
