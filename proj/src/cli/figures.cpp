#include "cli/figures.hpp"

#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "cli/csv.hpp"
#include "cli/svg.hpp"
#include "cli/version.hpp"
#include "erk/cellular.hpp"
#include "erk/matrix_oracle.hpp"
#include "erk/rng.hpp"

namespace erk::cli {

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double unit_factor(bool bits) { return bits ? 1.0 / std::log(2.0) : 1.0; }

std::string unit_name(bool bits) {
    return bits ? "bits/channel use" : "nats/channel use";
}

// Deterministic per-cell MC seed so an overlay is reproducible regardless of
// which cells run (or in what order).
std::uint64_t cell_seed(std::uint64_t seed, std::uint64_t row, std::uint64_t col) {
    std::uint64_t s = seed ^ 0x632be59bd9b4e019ULL;
    std::uint64_t h = splitmix64(s);
    s = h ^ (row * 0x9e3779b97f4a7c15ULL) ^ (col * 0xd1342543de82ef95ULL + 1ULL);
    return splitmix64(s);
}

std::string q_col(double q) { return "q" + format_number(q); }

void stamp_common(CsvTable& t, const std::string& id, const std::string& what, bool bits) {
    t.comment(std::string("tool: erk ") + kToolVersion);
    t.comment("figure: " + id + " (" + what + ")");
    t.comment("units: " + unit_name(bits));
}

FigureArtifacts write_pair(const FigureOptions& opt, const CsvTable& t, const SvgChart& chart) {
    std::filesystem::create_directories(opt.out_dir);
    FigureArtifacts out;
    out.csv_path = opt.out_dir / (opt.id + ".csv");
    out.svg_path = opt.out_dir / (opt.id + ".svg");
    t.write(out.csv_path);
    write_svg(out.svg_path, chart);
    return out;
}

FigureArtifacts fig2(const FigureOptions& opt) {
    double g0 = opt.g0.value_or(0.8), g1 = opt.g1.value_or(0.2);
    const std::vector<int> dbs = {0, 2, 4, 6, 8, 10, 12};
    double u = unit_factor(opt.bits);

    CsvTable t;
    stamp_common(t, opt.id, "two-tap rate vs erasure probability, one curve per SNR", opt.bits);
    t.comment("params: g0=" + format_number(g0) + " g1=" + format_number(g1) +
              " snr_db=0,2,4,6,8,10,12 (power values on the dB scale)");
    if (opt.mc)
        t.comment("mc overlay: block=" + std::to_string(opt.mc_block) +
                  " trials=" + std::to_string(opt.mc_trials) +
                  " seed=" + std::to_string(opt.seed));

    std::vector<std::string> names{"q"};
    for (int d : dbs) names.push_back("p" + std::to_string(d) + "db");
    if (opt.mc)
        for (int d : dbs) {
            names.push_back("p" + std::to_string(d) + "db_mc");
            names.push_back("p" + std::to_string(d) + "db_mc_stderr");
        }
    t.header(names);

    SvgChart chart;
    chart.title = "Two-tap input-erasure channel: achievable rate vs q";
    chart.x_label = "erasure probability q";
    chart.y_label = "rate [" + unit_name(opt.bits) + "]";
    chart.stamp = "g0=" + format_number(g0) + ", g1=" + format_number(g1) +
                  (opt.mc ? ", MC " + std::to_string(opt.mc_trials) + "x" +
                                std::to_string(opt.mc_block) + " seed " +
                                std::to_string(opt.seed)
                          : "");
    chart.series.resize(opt.mc ? 2 * dbs.size() : dbs.size());
    for (std::size_t j = 0; j < dbs.size(); ++j) {
        chart.series[j].label = "P = " + std::to_string(dbs[j]) + " dB";
        chart.series[j].color = static_cast<int>(j);
        if (opt.mc) {
            auto& m = chart.series[dbs.size() + j];
            m.points = true;
            m.color = static_cast<int>(j);
            if (j == 0) m.label = "Monte-Carlo (3-sigma bars)";
        }
    }

    FirFilter filter{{std::sqrt(g0), std::sqrt(g1)}};
    for (int i = 0; i <= 50; ++i) {
        double q = i / 50.0;
        std::vector<double> row{q};
        std::vector<double> mc_cols;
        for (std::size_t j = 0; j < dbs.size(); ++j) {
            double P = db_to_linear(dbs[j]);
            double rate = two_tap_rate_iid({g0, g1, P}, q, opt.series).rate * u;
            row.push_back(rate);
            chart.series[j].x.push_back(q);
            chart.series[j].y.push_back(rate);
            if (opt.mc) {
                McConfig cfg{opt.mc_block, opt.mc_trials, cell_seed(opt.seed, i, j)};
                auto mc = monte_carlo_rate(filter, P, ErasureProcess::iid(q), cfg);
                mc_cols.push_back(mc.rate * u);
                mc_cols.push_back(mc.error_bound * u);
                auto& m = chart.series[dbs.size() + j];
                m.x.push_back(q);
                m.y.push_back(mc.rate * u);
                m.err.push_back(3.0 * mc.error_bound * u);
            }
        }
        row.insert(row.end(), mc_cols.begin(), mc_cols.end());
        t.row(row);
    }
    return write_pair(opt, t, chart);
}

FigureArtifacts fig3(const FigureOptions& opt) {
    double g0 = opt.g0.value_or(0.8), g1 = opt.g1.value_or(0.2);
    const std::vector<double> qs = {0.0, 0.05, 0.1, 0.2, 0.3, 0.4};
    double u = unit_factor(opt.bits);

    CsvTable t;
    stamp_common(t, opt.id, "two-tap rate vs SNR, one curve per erasure probability", opt.bits);
    t.comment("params: g0=" + format_number(g0) + " g1=" + format_number(g1) +
              " snr_db=0..20 step 0.5 (dB scale)");
    std::vector<std::string> names{"snr_db"};
    for (double q : qs) names.push_back(q_col(q));
    names.push_back("upper_bound");
    t.header(names);

    SvgChart chart;
    chart.title = "Two-tap input-erasure channel: achievable rate vs SNR";
    chart.x_label = "P [dB]";
    chart.y_label = "rate [" + unit_name(opt.bits) + "]";
    chart.stamp = "g0=" + format_number(g0) + ", g1=" + format_number(g1);
    chart.series.resize(qs.size() + 1);
    for (std::size_t j = 0; j < qs.size(); ++j)
        chart.series[j].label = "q = " + format_number(qs[j]);
    chart.series[qs.size()].label = "erasure-free upper bound";

    for (int i = 0; i <= 40; ++i) {
        double snr_db = i * 0.5;
        double P = db_to_linear(snr_db);
        std::vector<double> row{snr_db};
        for (std::size_t j = 0; j < qs.size(); ++j) {
            double rate = two_tap_rate_iid({g0, g1, P}, qs[j], opt.series).rate * u;
            row.push_back(rate);
            chart.series[j].x.push_back(snr_db);
            chart.series[j].y.push_back(rate);
        }
        double ub = erasure_free_upper_bound({g0, g1, P}) * u;
        row.push_back(ub);
        chart.series[qs.size()].x.push_back(snr_db);
        chart.series[qs.size()].y.push_back(ub);
        t.row(row);
    }
    return write_pair(opt, t, chart);
}

FigureArtifacts fig4(const FigureOptions& opt) {
    double snr_db = opt.snr_db.value_or(10.0);
    double P = db_to_linear(snr_db);
    const std::vector<double> qs = {0.0, 0.05, 0.1, 0.2, 0.3, 0.4};
    double u = unit_factor(opt.bits);

    CsvTable t;
    stamp_common(t, opt.id, "two-tap rate vs g0 at unit total gain g0+g1=1", opt.bits);
    t.comment("params: snr_db=" + format_number(snr_db) + " (dB scale), g1=1-g0");
    std::vector<std::string> names{"g0"};
    for (double q : qs) names.push_back(q_col(q));
    t.header(names);

    SvgChart chart;
    chart.title = "Rate vs power split between the taps (g0+g1=1)";
    chart.x_label = "g0";
    chart.y_label = "rate [" + unit_name(opt.bits) + "]";
    chart.stamp = "P=" + format_number(snr_db) + " dB, g1=1-g0";
    chart.series.resize(qs.size());
    for (std::size_t j = 0; j < qs.size(); ++j)
        chart.series[j].label = "q = " + format_number(qs[j]);

    for (int i = 0; i <= 100; ++i) {
        double g0 = i / 100.0;
        std::vector<double> row{g0};
        for (std::size_t j = 0; j < qs.size(); ++j) {
            double rate = two_tap_rate_iid({g0, 1.0 - g0, P}, qs[j], opt.series).rate * u;
            row.push_back(rate);
            chart.series[j].x.push_back(g0);
            chart.series[j].y.push_back(rate);
        }
        t.row(row);
    }
    return write_pair(opt, t, chart);
}

FigureArtifacts fig5(const FigureOptions& opt) {
    double alpha_sq = opt.alpha_sq.value_or(0.5);
    double snr_db = opt.snr_db.value_or(14.0);
    double P = db_to_linear(snr_db);
    double u = unit_factor(opt.bits);

    auto crossover = scp_icfs_crossover(alpha_sq, P);

    CsvTable t;
    stamp_common(t, opt.id, "per-user rates of mcp/scp/icfs vs inactivity probability", opt.bits);
    t.comment("params: alpha_sq=" + format_number(alpha_sq) + " snr_db=" + format_number(snr_db) +
              " (dB scale)");
    if (crossover) t.comment("scp_icfs_crossover_q=" + format_number(*crossover));
    t.header({"q", "mcp", "scp", "icfs"});

    SvgChart chart;
    chart.title = "Soft-handoff uplink: per-user rates of the three schemes";
    chart.x_label = "inactivity probability q";
    chart.y_label = "rate [" + unit_name(opt.bits) + "]";
    chart.stamp = "alpha^2=" + format_number(alpha_sq) + ", P=" + format_number(snr_db) + " dB";
    chart.series.resize(3);
    chart.series[0].label = "MCP";
    chart.series[1].label = "SCP";
    chart.series[2].label = "ICFS";

    for (int i = 0; i <= 100; ++i) {
        double q = i / 100.0;
        CellularParams p{alpha_sq, P, q};
        double vals[3] = {mcp_rate(p, opt.series).rate * u, scp_rate(p) * u, icfs_rate(p) * u};
        t.row({q, vals[0], vals[1], vals[2]});
        for (int j = 0; j < 3; ++j) {
            chart.series[j].x.push_back(q);
            chart.series[j].y.push_back(vals[j]);
        }
    }
    auto out = write_pair(opt, t, chart);
    out.crossover_q = crossover;
    return out;
}

FigureArtifacts fig7(const FigureOptions& opt) {
    double alpha_sq = opt.alpha_sq.value_or(0.5);
    double snr_db = opt.snr_db.value_or(14.0);
    double P = db_to_linear(snr_db);
    double u = unit_factor(opt.bits);

    CsvTable t;
    stamp_common(t, opt.id, "per-active-user throughputs of mcp/scp/icfs vs inactivity", opt.bits);
    t.comment("params: alpha_sq=" + format_number(alpha_sq) + " snr_db=" + format_number(snr_db) +
              " (dB scale)");
    t.header({"q", "mcp", "scp", "icfs"});

    SvgChart chart;
    chart.title = "Soft-handoff uplink: throughput per active user";
    chart.x_label = "inactivity probability q";
    chart.y_label = "throughput [" + unit_name(opt.bits) + "]";
    chart.stamp = "alpha^2=" + format_number(alpha_sq) + ", P=" + format_number(snr_db) + " dB";
    chart.series.resize(3);
    chart.series[0].label = "MCP";
    chart.series[1].label = "SCP";
    chart.series[2].label = "ICFS";

    for (int i = 0; i <= 90; ++i) {
        double q = i / 100.0;
        auto s = user_activity_throughputs({alpha_sq, P, q}, opt.series);
        double vals[3] = {s.mcp_throughput.value() * u, s.scp_throughput.value() * u,
                          s.icfs_throughput.value() * u};
        t.row({q, vals[0], vals[1], vals[2]});
        for (int j = 0; j < 3; ++j) {
            chart.series[j].x.push_back(q);
            chart.series[j].y.push_back(vals[j]);
        }
    }
    return write_pair(opt, t, chart);
}

}  // namespace

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = {"fig2", "fig3", "fig4", "fig5", "fig7"};
    return ids;
}

FigureArtifacts render_figure(const FigureOptions& opt) {
    if (opt.mc && opt.id != "fig2")
        throw std::invalid_argument("the Monte-Carlo overlay is only defined for fig2");
    if (opt.id == "fig2") return fig2(opt);
    if (opt.id == "fig3") return fig3(opt);
    if (opt.id == "fig4") return fig4(opt);
    if (opt.id == "fig5") return fig5(opt);
    if (opt.id == "fig7") return fig7(opt);
    throw std::invalid_argument("unknown figure id '" + opt.id +
                                "' (known: fig2, fig3, fig4, fig5, fig7)");
}

}  // namespace erk::cli
