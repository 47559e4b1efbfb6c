#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/figures.hpp"
#include "cli/version.hpp"

namespace {

using namespace erk::cli;

void add_series_flags(CLI::App* cmd, int& max_terms, double& tail_bound) {
    cmd->add_option("--max-terms", max_terms, "series truncation cap")->capture_default_str();
    cmd->add_option("--tail-bound", tail_bound, "target truncation tail bound")
        ->capture_default_str();
}

void add_snr_flags(CLI::App* cmd, std::optional<double>& snr, std::optional<double>& snr_db) {
    auto* a = cmd->add_option("--snr", snr, "signal-to-noise ratio (dB unless --snr-linear)");
    auto* b = cmd->add_option("--snr-db", snr_db, "signal-to-noise ratio in dB");
    a->excludes(b);
    b->excludes(a);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"achievable rates of the two-tap input-erasure Gaussian channel"};
    app.set_version_flag("--version", std::string("erk ") + kToolVersion);
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_flag("--bits", global.bits, "report rates in bits instead of nats");
    app.add_flag("--snr-linear", global.snr_linear,
                 "treat --snr values as linear power ratios instead of dB");
    app.add_option("--seed", global.seed, "master RNG seed")->capture_default_str();
    std::string out_dir = ".";
    app.add_option("--out-dir", out_dir, "directory for generated files")->capture_default_str();
    app.set_config("--config", "", "read option defaults from a key=value file");

    int rc = 0;

    RateArgs rate;
    auto* rate_cmd = app.add_subcommand("rate", "print one rate query as a JSON record");
    rate_cmd
        ->add_option("formula", rate.formula,
                     "two-tap | one-tap | markov | upper-bound | scp | icfs | mcp | high-snr")
        ->required()
        ->check(CLI::IsMember({"two-tap", "one-tap", "markov", "upper-bound", "scp", "icfs",
                               "mcp", "high-snr"}));
    rate_cmd->add_option("--g0", rate.g0, "first tap power gain")->capture_default_str();
    rate_cmd->add_option("--g1", rate.g1, "second tap power gain")->capture_default_str();
    rate_cmd->add_option("--alpha-sq", rate.alpha_sq, "inter-cell power gain (cellular formulas)")
        ->capture_default_str();
    add_snr_flags(rate_cmd, rate.snr, rate.snr_db);
    rate_cmd->add_option("--q", rate.q, "erasure/inactivity probability")->capture_default_str();
    rate_cmd->add_option("--q0", rate.q0, "markov: Pr(stay erased) parameter");
    rate_cmd->add_option("--q1", rate.q1, "markov: Pr(active -> erased)");
    rate_cmd->add_option("--scheme", rate.scheme, "high-snr: mcp | scp | icfs");
    add_series_flags(rate_cmd, rate.max_terms, rate.tail_bound);
    rate_cmd->callback([&] {
        global.out_dir = out_dir;
        rc = cmd_rate(rate, global, std::cout);
    });

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "evaluate formulas over a grid, write CSV");
    sweep_cmd->add_option("--var", sweep.variable, "q | snr_db | g0 | alpha_sq")->required();
    sweep_cmd->add_option("--from", sweep.from, "grid start (inclusive)");
    sweep_cmd->add_option("--to", sweep.to, "grid stop (inclusive)");
    sweep_cmd->add_option("--step", sweep.step, "grid step");
    sweep_cmd->add_option("--points", sweep.points, "explicit comma-separated grid")
        ->delimiter(',');
    sweep_cmd
        ->add_option("--formula", sweep.formulas,
                     "curve(s): two-tap | one-tap | markov | upper-bound | scp | icfs | mcp")
        ->delimiter(',');
    sweep_cmd->add_option("--g0", sweep.g0)->capture_default_str();
    sweep_cmd->add_option("--g1", sweep.g1)->capture_default_str();
    sweep_cmd->add_option("--alpha-sq", sweep.alpha_sq)->capture_default_str();
    sweep_cmd->add_option("--q", sweep.q)->capture_default_str();
    add_snr_flags(sweep_cmd, sweep.snr, sweep.snr_db);
    sweep_cmd->add_option("--q0", sweep.q0);
    sweep_cmd->add_option("--q1", sweep.q1);
    sweep_cmd->add_flag("--mc", sweep.mc, "add Monte-Carlo columns where defined");
    sweep_cmd->add_option("--mc-block", sweep.mc_block)->capture_default_str();
    sweep_cmd->add_option("--mc-trials", sweep.mc_trials)->capture_default_str();
    sweep_cmd->add_option("-o,--output", sweep.output, "CSV file name inside --out-dir")
        ->capture_default_str();
    add_series_flags(sweep_cmd, sweep.max_terms, sweep.tail_bound);
    sweep_cmd->callback([&] {
        global.out_dir = out_dir;
        rc = cmd_sweep(sweep, global, std::cout);
    });

    FigureArgs figure;
    auto* fig_cmd = app.add_subcommand("figure", "write a canned figure as CSV + SVG");
    fig_cmd->add_option("id", figure.id, "fig2 | fig3 | fig4 | fig5 | fig7")
        ->required()
        ->check(CLI::IsMember(figure_ids()));
    fig_cmd->add_flag("--mc", figure.mc, "Monte-Carlo overlay (fig2)");
    fig_cmd->add_option("--mc-block", figure.mc_block)->capture_default_str();
    fig_cmd->add_option("--mc-trials", figure.mc_trials)->capture_default_str();
    fig_cmd->add_option("--g0", figure.g0, "override the default tap gain");
    fig_cmd->add_option("--g1", figure.g1, "override the default tap gain");
    fig_cmd->add_option("--alpha-sq", figure.alpha_sq, "override the cellular gain");
    fig_cmd->add_option("--snr-db", figure.snr_db, "override the figure's power (dB)");
    add_series_flags(fig_cmd, figure.max_terms, figure.tail_bound);
    fig_cmd->callback([&] {
        global.out_dir = out_dir;
        rc = cmd_figure(figure, global, std::cout);
    });

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo rate estimate, JSON record");
    sim_cmd->add_option("--g0", sim.g0)->capture_default_str();
    sim_cmd->add_option("--g1", sim.g1)->capture_default_str();
    add_snr_flags(sim_cmd, sim.snr, sim.snr_db);
    sim_cmd->add_option("--q", sim.q, "iid erasure probability")->capture_default_str();
    sim_cmd->add_option("--q0", sim.q0, "markov: Pr(stay erased)");
    sim_cmd->add_option("--q1", sim.q1, "markov: Pr(active -> erased)");
    sim_cmd->add_option("--block", sim.block, "symbols per trial")->capture_default_str();
    sim_cmd->add_option("--trials", sim.trials)->capture_default_str();
    sim_cmd->add_flag("--user-activity", sim.user_activity,
                      "estimate per-active-user throughput instead of the rate");
    sim_cmd->add_option("--alpha-sq", sim.alpha_sq, "user-activity interference gain")
        ->capture_default_str();
    sim_cmd->callback([&] {
        global.out_dir = out_dir;
        rc = cmd_simulate(sim, global, std::cout);
    });

    std::string level = "quick";
    auto* val_cmd = app.add_subcommand("validate", "run the oracle identity checks");
    val_cmd->add_option("level", level, "quick | full")
        ->check(CLI::IsMember({"quick", "full"}));
    val_cmd->callback([&] {
        global.out_dir = out_dir;
        rc = cmd_validate(level, global, std::cout);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
