#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "erk/analytic_rates.hpp"

namespace erk::cli {

// Canned figure definitions. Each id fixes a sweep grid and default
// parameters; the optional overrides move the defaults without changing the
// grid. fig2 additionally accepts a Monte-Carlo overlay.
//
//   fig2  rate vs q, two-tap g0=0.8 g1=0.2, curves P = 0,2,...,12 dB
//   fig3  rate vs SNR(dB), same gains, curves q = 0,0.05,0.1,0.2,0.3,0.4
//         plus the erasure-free upper bound
//   fig4  rate vs g0 at unit gain g0+g1=1, P = 10 dB, same q curves
//   fig5  mcp/scp/icfs rates vs q, alpha^2 = 0.5, P = 14 dB
//   fig7  per-active-user throughputs vs q (0..0.9), same cell parameters
struct FigureOptions {
    std::string id;
    bool mc = false;  // fig2 only
    int mc_block = 200;
    int mc_trials = 50;
    std::uint64_t seed = 0;
    bool bits = false;
    std::optional<double> g0, g1;      // fig2, fig3
    std::optional<double> alpha_sq;    // fig5, fig7
    std::optional<double> snr_db;      // fig4, fig5, fig7
    SeriesConfig series{};
    std::filesystem::path out_dir = ".";
};

struct FigureArtifacts {
    std::filesystem::path csv_path;
    std::filesystem::path svg_path;
    std::optional<double> crossover_q;  // fig5: SCP/ICFS crossing
};

const std::vector<std::string>& figure_ids();

// Writes <id>.csv and <id>.svg into out_dir. Throws std::invalid_argument for
// unknown ids or an --mc request outside fig2.
FigureArtifacts render_figure(const FigureOptions& opt);

}  // namespace erk::cli
