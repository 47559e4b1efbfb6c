#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace erk::cli {

struct GlobalOptions {
    bool bits = false;        // report rates in bits instead of nats
    bool snr_linear = false;  // --snr values are linear power ratios, not dB
    std::uint64_t seed = 0;
    std::filesystem::path out_dir = ".";
};

// Shared by rate/sweep/simulate: --snr follows the global dB-vs-linear flag,
// --snr-db is always dB. At most one of the two may be given.
struct RateArgs {
    std::string formula;  // two-tap | one-tap | markov | upper-bound | scp | icfs | mcp | high-snr
    double g0 = 0.8;
    double g1 = 0.2;
    double alpha_sq = 0.5;
    std::optional<double> snr;
    std::optional<double> snr_db;
    double q = 0.0;
    std::optional<double> q0, q1;        // markov chain parameters
    std::optional<std::string> scheme;   // high-snr only: mcp | scp | icfs
    int max_terms = 200;
    double tail_bound = 1e-12;
};

struct SweepArgs {
    std::string variable;  // q | snr_db | g0 | alpha_sq
    std::optional<double> from, to, step;
    std::vector<double> points;  // explicit grid; takes precedence over from/to/step
    std::vector<std::string> formulas;
    double g0 = 0.8;
    double g1 = 0.2;
    double alpha_sq = 0.5;
    double q = 0.0;
    std::optional<double> snr, snr_db;
    std::optional<double> q0, q1;
    bool mc = false;  // add <formula>_mc / _mc_stderr columns where defined
    int mc_block = 200;
    int mc_trials = 50;
    std::string output = "sweep.csv";
    int max_terms = 200;
    double tail_bound = 1e-12;
};

struct FigureArgs {
    std::string id;
    bool mc = false;
    int mc_block = 200;
    int mc_trials = 50;
    std::optional<double> g0, g1, alpha_sq, snr_db;
    int max_terms = 200;
    double tail_bound = 1e-12;
};

struct SimulateArgs {
    double g0 = 0.8;
    double g1 = 0.2;
    std::optional<double> snr, snr_db;
    double q = 0.0;
    std::optional<double> q0, q1;  // both set -> Markov erasures
    int block = 200;
    int trials = 50;
    bool user_activity = false;  // per-active-user throughput estimator
    double alpha_sq = 0.5;       // user-activity interference gain
};

int cmd_rate(const RateArgs& args, const GlobalOptions& g, std::ostream& out);
int cmd_sweep(const SweepArgs& args, const GlobalOptions& g, std::ostream& out);
int cmd_figure(const FigureArgs& args, const GlobalOptions& g, std::ostream& out);
int cmd_simulate(const SimulateArgs& args, const GlobalOptions& g, std::ostream& out);
int cmd_validate(const std::string& level, const GlobalOptions& g, std::ostream& out);

}  // namespace erk::cli
