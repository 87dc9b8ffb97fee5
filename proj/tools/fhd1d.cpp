#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fhd/config.hpp"
#include "fhd/errors.hpp"
#include "fhd/experiments.hpp"
#include "fhd/kernels/kernels.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::string preset_name;
    std::string out_path;
    std::string kernels = "auto";
    std::optional<std::uint64_t> seed;
    std::optional<long> samples;
    std::optional<long> ensemble;
    std::optional<long> threads;
    bool no_noise = false;
};

void add_common(CLI::App* sub, CliOptions& o) {
    auto* cfg = sub->add_option("--config", o.config_path,
                                "configuration file (key = value lines)");
    auto* pre = sub->add_option("--preset", o.preset_name, "built-in preset name");
    cfg->excludes(pre);
    pre->excludes(cfg);
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--samples", o.samples,
                    "sampled steps (per realization for shock runs)");
    sub->add_option("--ensemble", o.ensemble, "number of shock realizations");
    sub->add_option("--out", o.out_path, "write the result CSV here");
    sub->add_flag("--no-noise", o.no_noise, "disable the stochastic fluxes");
    sub->add_option("--threads", o.threads, "worker threads for ensemble runs");
    sub->add_option("--kernels", o.kernels, "compute backend: auto, scalar or avx2");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D fluctuating hydrodynamics on moving particles"};
    app.require_subcommand(1);
    CliOptions o;
    auto* eq = app.add_subcommand("equilibrium",
                                  "conserved-quantity variances of an equilibrium gas");
    auto* cov = app.add_subcommand("covariance",
                                   "time covariance of the first density mode");
    auto* sh = app.add_subcommand("shock",
                                  "shock-location variance over an ensemble of runs");
    add_common(eq, o);
    add_common(cov, o);
    add_common(sh, o);
    CLI11_PARSE(app, argc, argv);

    try {
        fhd::kern::select(fhd::kern::parse_backend(o.kernels));

        fhd::ExperimentConfig cfg;
        if (!o.config_path.empty()) {
            cfg = fhd::load_config(o.config_path);
        } else if (!o.preset_name.empty()) {
            cfg = fhd::preset(o.preset_name);
        } else if (cov->parsed()) {
            cfg = fhd::preset("table1-covariance");
        } else if (sh->parsed()) {
            cfg = fhd::preset("table4-shock-mach2");
        }
        // the subcommand pins the scenario family regardless of the base config
        if (eq->parsed() && cfg.scenario != fhd::Scenario::EquilibriumZeroFlow &&
            cfg.scenario != fhd::Scenario::EquilibriumNetFlow) {
            cfg.scenario = fhd::Scenario::EquilibriumZeroFlow;
        }
        if (cov->parsed()) cfg.scenario = fhd::Scenario::TimeCovariance;
        if (sh->parsed()) cfg.scenario = fhd::Scenario::StandingShock;

        if (o.seed) cfg.seed = *o.seed;
        if (o.samples) cfg.n_steps = *o.samples;
        if (o.ensemble) cfg.ensemble = *o.ensemble;
        if (o.threads) cfg.threads = *o.threads;
        if (o.no_noise) cfg.noise = false;
        if (!o.out_path.empty()) cfg.out_path = o.out_path;

        const fhd::RunReport rep = fhd::run(cfg);
        fhd::write_summary(rep, std::cout);
        if (!cfg.out_path.empty()) {
            fhd::emit_report(rep, cfg.out_path);
            std::cout << "wrote " << cfg.out_path << '\n';
        }
        return 0;
    } catch (const fhd::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
