#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "cli/csv.hpp"
#include "cli/figures.hpp"
#include "cli/validate.hpp"
#include "cli/version.hpp"
#include "erk/cellular.hpp"
#include "erk/matrix_oracle.hpp"
#include "erk/rng.hpp"

namespace erk::cli {

namespace {

using nlohmann::ordered_json;

struct ResolvedSnr {
    double linear = 0.0;
    double input = 0.0;
    bool in_db = true;
};

std::optional<ResolvedSnr> resolve_snr(const std::optional<double>& snr,
                                       const std::optional<double>& snr_db,
                                       const GlobalOptions& g) {
    if (snr && snr_db) throw std::invalid_argument("give either --snr or --snr-db, not both");
    if (snr_db) return ResolvedSnr{std::pow(10.0, *snr_db / 10.0), *snr_db, true};
    if (snr) {
        if (g.snr_linear) return ResolvedSnr{*snr, *snr, false};
        return ResolvedSnr{std::pow(10.0, *snr / 10.0), *snr, true};
    }
    return std::nullopt;
}

ResolvedSnr require_snr(const std::optional<ResolvedSnr>& s) {
    if (!s) throw std::invalid_argument("--snr or --snr-db is required for this formula");
    return *s;
}

void put_snr(ordered_json& params, const ResolvedSnr& s) {
    params["snr"] = s.linear;  // linear power ratio actually used
    params["snr_scale"] = s.in_db ? "db" : "linear";
    if (s.in_db) params["snr_db"] = s.input;
}

const char* unit_word(bool bits) { return bits ? "bits" : "nats"; }

ordered_json meta_json(const std::map<std::string, std::string>& meta) {
    ordered_json j = ordered_json::object();
    for (const auto& [k, v] : meta) j[k] = v;
    j["tool_version"] = kToolVersion;
    return j;
}

void emit_rate_record(std::ostream& out, const RateResult& res, bool bits,
                      const ordered_json& params) {
    double u = bits ? 1.0 / std::log(2.0) : 1.0;
    ordered_json j;
    j["rate"] = res.rate * u;
    j["error_bound"] = res.error_bound * u;
    j["kind"] = to_string(res.kind);
    j["units"] = unit_word(bits);
    j["params"] = params;
    j["meta"] = meta_json(res.meta);
    out << j.dump(2) << "\n";
}

Scheme parse_scheme(const std::string& s) {
    if (s == "mcp") return Scheme::mcp;
    if (s == "scp") return Scheme::scp;
    if (s == "icfs") return Scheme::icfs;
    throw std::invalid_argument("unknown scheme '" + s + "' (mcp, scp, icfs)");
}

void emit_high_snr(std::ostream& out, const HighSnrCharacterization& hc, bool bits,
                   const ordered_json& params) {
    // the multiplexing gain is scale-free; the offset lives on the log-P axis
    double u = bits ? 1.0 / std::log(2.0) : 1.0;
    ordered_json j;
    j["s_inf"] = hc.s_inf;
    j["l_inf"] = hc.l_inf * u;
    j["error_bound"] = hc.l_inf_error_bound * u;
    j["kind"] = hc.terms_used > 0 ? "truncated_series" : "closed_form";
    j["units"] = unit_word(bits);
    j["params"] = params;
    ordered_json meta = ordered_json::object();
    meta["terms_used"] = std::to_string(hc.terms_used);
    meta["tool_version"] = kToolVersion;
    j["meta"] = meta;
    out << j.dump(2) << "\n";
}

// Parameter bindings at one evaluation point; shared by rate and sweep.
struct Bound {
    double g0, g1, alpha_sq, q, snr;
    std::optional<double> q0, q1;
    SeriesConfig cfg;
};

RateResult closed(double rate, std::string note = {}) {
    RateResult r;
    r.rate = rate;
    r.kind = RateKind::closed_form;
    if (!note.empty()) r.meta["note"] = std::move(note);
    return r;
}

RateResult eval_formula(const std::string& f, const Bound& b) {
    if (f == "two-tap") return two_tap_rate_iid({b.g0, b.g1, b.snr}, b.q, b.cfg);
    if (f == "one-tap") return closed(one_tap_rate(b.g0, b.snr, b.q));
    if (f == "upper-bound")
        return closed(erasure_free_upper_bound({b.g0, b.g1, b.snr}), "erasure-free capacity");
    if (f == "markov") {
        if (!b.q0 || !b.q1)
            throw std::invalid_argument("formula markov needs --q0 and --q1");
        return markov_two_tap_rate({b.g0, b.g1, b.snr}, *b.q0, *b.q1, b.cfg);
    }
    if (f == "scp") return closed(scp_rate({b.alpha_sq, b.snr, b.q}));
    if (f == "icfs") return closed(icfs_rate({b.alpha_sq, b.snr, b.q}));
    if (f == "mcp") return mcp_rate({b.alpha_sq, b.snr, b.q}, b.cfg);
    throw std::invalid_argument("unknown formula '" + f + "'");
}

bool formula_has_mc(const std::string& f) {
    return f == "two-tap" || f == "markov" || f == "mcp";
}

RateResult eval_formula_mc(const std::string& f, const Bound& b, const McConfig& cfg) {
    if (f == "two-tap")
        return monte_carlo_rate({{std::sqrt(b.g0), std::sqrt(b.g1)}}, b.snr,
                                ErasureProcess::iid(b.q), cfg);
    if (f == "markov") {
        if (!b.q0 || !b.q1)
            throw std::invalid_argument("formula markov needs --q0 and --q1");
        return monte_carlo_rate({{std::sqrt(b.g0), std::sqrt(b.g1)}}, b.snr,
                                ErasureProcess::markov(*b.q0, *b.q1), cfg);
    }
    if (f == "mcp")
        return monte_carlo_rate({{1.0, std::sqrt(b.alpha_sq)}}, b.snr, ErasureProcess::iid(b.q),
                                cfg);
    throw std::invalid_argument("no Monte-Carlo estimator for formula '" + f + "'");
}

std::string column_name(const std::string& formula) {
    std::string s = formula;
    for (char& c : s)
        if (c == '-') c = '_';
    return s;
}

// Deterministic per-cell MC seed (same contract as the figure overlays).
std::uint64_t cell_seed(std::uint64_t seed, std::uint64_t row, std::uint64_t col) {
    std::uint64_t s = seed ^ 0x632be59bd9b4e019ULL;
    std::uint64_t h = splitmix64(s);
    s = h ^ (row * 0x9e3779b97f4a7c15ULL) ^ (col * 0xd1342543de82ef95ULL + 1ULL);
    return splitmix64(s);
}

}  // namespace

int cmd_rate(const RateArgs& args, const GlobalOptions& g, std::ostream& out) {
    auto snr = resolve_snr(args.snr, args.snr_db, g);
    SeriesConfig cfg{args.max_terms, args.tail_bound};
    ordered_json params;
    params["formula"] = args.formula;

    if (args.formula == "high-snr") {
        if (args.scheme) {
            CellularParams p{args.alpha_sq, snr ? snr->linear : 0.0, args.q};
            params["scheme"] = *args.scheme;
            params["alpha_sq"] = args.alpha_sq;
            params["q"] = args.q;
            emit_high_snr(out, high_snr_triple(parse_scheme(*args.scheme), p, cfg), g.bits,
                          params);
        } else {
            params["g0"] = args.g0;
            params["g1"] = args.g1;
            params["q"] = args.q;
            emit_high_snr(out, high_snr_two_tap(args.g0, args.g1, args.q, cfg), g.bits, params);
        }
        return 0;
    }

    Bound b{args.g0, args.g1, args.alpha_sq, args.q, require_snr(snr).linear,
            args.q0, args.q1,  cfg};
    bool cellular = args.formula == "scp" || args.formula == "icfs" || args.formula == "mcp";
    if (cellular) {
        params["alpha_sq"] = args.alpha_sq;
    } else {
        params["g0"] = args.g0;
        if (args.formula != "one-tap") params["g1"] = args.g1;
    }
    put_snr(params, *snr);
    if (args.formula == "markov") {
        if (!args.q0 || !args.q1)
            throw std::invalid_argument("formula markov needs --q0 and --q1");
        params["q0"] = *args.q0;
        params["q1"] = *args.q1;
    } else if (args.formula != "upper-bound") {
        params["q"] = args.q;
    }
    emit_rate_record(out, eval_formula(args.formula, b), g.bits, params);
    return 0;
}

int cmd_sweep(const SweepArgs& args, const GlobalOptions& g, std::ostream& out) {
    static const std::vector<std::string> kVars = {"q", "snr_db", "g0", "alpha_sq"};
    if (std::find(kVars.begin(), kVars.end(), args.variable) == kVars.end())
        throw std::invalid_argument("sweep variable must be one of q, snr_db, g0, alpha_sq");
    if (args.formulas.empty())
        throw std::invalid_argument("sweep needs at least one --formula");

    std::vector<double> grid;
    if (!args.points.empty()) {
        grid = args.points;
    } else {
        if (!args.from || !args.to || !args.step)
            throw std::invalid_argument("sweep needs --from/--to/--step or --points");
        if (!(*args.step > 0.0)) throw std::invalid_argument("sweep --step must be positive");
        if (*args.to < *args.from)
            throw std::invalid_argument("empty sweep grid: --to lies below --from");
        long count = std::lround(std::floor((*args.to - *args.from) / *args.step + 1e-9)) + 1;
        for (long i = 0; i < count; ++i) grid.push_back(*args.from + double(i) * *args.step);
    }
    if (grid.empty()) throw std::invalid_argument("empty sweep grid");
    bool unit_interval = args.variable != "snr_db";
    for (double x : grid) {
        if (!std::isfinite(x))
            throw std::invalid_argument("sweep grid value is not finite");
        if (unit_interval && (x < 0.0 || x > 1.0))
            throw std::invalid_argument("sweep value " + format_number(x) +
                                        " outside [0, 1] for variable " + args.variable);
    }

    auto fixed_snr = resolve_snr(args.snr, args.snr_db, g);
    if (args.variable != "snr_db" && !fixed_snr)
        throw std::invalid_argument("--snr or --snr-db is required unless snr_db is swept");

    SeriesConfig cfg{args.max_terms, args.tail_bound};
    CsvTable t;
    t.comment(std::string("tool: erk ") + kToolVersion);
    std::string fixed = "g0=" + format_number(args.g0) + " g1=" + format_number(args.g1) +
                        " alpha_sq=" + format_number(args.alpha_sq) +
                        " q=" + format_number(args.q);
    if (args.q0 && args.q1)
        fixed += " q0=" + format_number(*args.q0) + " q1=" + format_number(*args.q1);
    if (args.variable == "snr_db")
        fixed += " (snr swept, dB scale)";
    else
        fixed += " snr=" + format_number(fixed_snr->linear) +
                 (fixed_snr->in_db ? " (from " + format_number(fixed_snr->input) + " dB)"
                                   : " (linear)");
    t.comment("sweep over " + args.variable + "; fixed: " + fixed);
    if (args.variable == "g0") t.comment("unit total gain: g1 = 1 - g0 along the sweep");
    t.comment(std::string("units: ") + unit_word(g.bits));
    if (args.mc)
        t.comment("mc: block=" + std::to_string(args.mc_block) +
                  " trials=" + std::to_string(args.mc_trials) +
                  " seed=" + std::to_string(g.seed));

    std::vector<std::string> names{args.variable};
    for (const auto& f : args.formulas) names.push_back(column_name(f));
    if (args.mc)
        for (const auto& f : args.formulas)
            if (formula_has_mc(f)) {
                names.push_back(column_name(f) + "_mc");
                names.push_back(column_name(f) + "_mc_stderr");
            }
    t.header(names);

    double u = g.bits ? 1.0 / std::log(2.0) : 1.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double x = grid[i];
        Bound b{args.g0, args.g1, args.alpha_sq, args.q,
                fixed_snr ? fixed_snr->linear : 0.0, args.q0, args.q1, cfg};
        if (args.variable == "q")
            b.q = x;
        else if (args.variable == "snr_db")
            b.snr = std::pow(10.0, x / 10.0);
        else if (args.variable == "g0") {
            b.g0 = x;
            b.g1 = 1.0 - x;
        } else
            b.alpha_sq = x;

        std::vector<double> row{x};
        for (const auto& f : args.formulas) row.push_back(eval_formula(f, b).rate * u);
        if (args.mc) {
            std::uint64_t col = 0;
            for (const auto& f : args.formulas) {
                if (!formula_has_mc(f)) continue;
                McConfig mc{args.mc_block, args.mc_trials, cell_seed(g.seed, i, col++)};
                auto res = eval_formula_mc(f, b, mc);
                row.push_back(res.rate * u);
                row.push_back(res.error_bound * u);
            }
        }
        t.row(row);
    }

    std::filesystem::create_directories(g.out_dir);
    auto path = g.out_dir / args.output;
    t.write(path);
    out << "wrote " << path.string() << "\n";
    return 0;
}

int cmd_figure(const FigureArgs& args, const GlobalOptions& g, std::ostream& out) {
    FigureOptions opt;
    opt.id = args.id;
    opt.mc = args.mc;
    opt.mc_block = args.mc_block;
    opt.mc_trials = args.mc_trials;
    opt.seed = g.seed;
    opt.bits = g.bits;
    opt.g0 = args.g0;
    opt.g1 = args.g1;
    opt.alpha_sq = args.alpha_sq;
    opt.snr_db = args.snr_db;
    opt.series = SeriesConfig{args.max_terms, args.tail_bound};
    opt.out_dir = g.out_dir;
    auto art = render_figure(opt);
    out << "wrote " << art.csv_path.string() << "\n";
    out << "wrote " << art.svg_path.string() << "\n";
    if (art.crossover_q)
        out << "scp/icfs crossover q = " << format_number(*art.crossover_q) << "\n";
    return 0;
}

int cmd_simulate(const SimulateArgs& args, const GlobalOptions& g, std::ostream& out) {
    if (!!args.q0 != !!args.q1)
        throw std::invalid_argument("markov simulation needs both --q0 and --q1");
    auto snr = require_snr(resolve_snr(args.snr, args.snr_db, g));
    McConfig cfg{args.block, args.trials, g.seed};

    ordered_json params;
    if (args.user_activity) {
        if (args.q0) throw std::invalid_argument("user-activity simulation uses iid activity");
        params["mode"] = "user-activity";
        params["alpha_sq"] = args.alpha_sq;
        put_snr(params, snr);
        params["q"] = args.q;
        auto res = user_activity_throughput_mc(std::sqrt(args.alpha_sq), snr.linear, args.q, cfg);
        emit_rate_record(out, res, g.bits, params);
        return 0;
    }

    params["mode"] = "rate";
    params["g0"] = args.g0;
    params["g1"] = args.g1;
    put_snr(params, snr);
    auto process = args.q0 ? ErasureProcess::markov(*args.q0, *args.q1)
                           : ErasureProcess::iid(args.q);
    if (args.q0) {
        params["q0"] = *args.q0;
        params["q1"] = *args.q1;
    } else {
        params["q"] = args.q;
    }
    FirFilter f{{std::sqrt(args.g0), std::sqrt(args.g1)}};
    emit_rate_record(out, monte_carlo_rate(f, snr.linear, process, cfg), g.bits, params);
    return 0;
}

int cmd_validate(const std::string& level, const GlobalOptions& g, std::ostream& out) {
    auto report = run_validation(level, g.seed);
    print_report(report, out);
    return report.all_pass() ? 0 : 1;
}

}  // namespace erk::cli
