// Acceptance gate: every release-blocking check in one binary, one line per
// criterion, exit code = number of failures. Each check states its tolerance
// and (where one applies) its runtime budget.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "erk/cellular.hpp"
#include "erk/matrix_oracle.hpp"
#include "erk/rng.hpp"

using namespace erk;

namespace {

struct Criterion {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

class Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  public:
    double secs() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

void report(const Criterion& c) {
    std::printf("[%2d] %s  %-46s %s (%.1fs)\n", c.id, c.pass ? "PASS" : "FAIL", c.name.c_str(),
                c.detail.c_str(), c.seconds);
    std::fflush(stdout);
}

double gauss(std::mt19937_64& eng) {
    double u1 = u01(eng);
    while (u1 <= 0.0) u1 = u01(eng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u01(eng));
}

ErasurePattern coin_pattern(int n, std::mt19937_64& eng) {
    ErasurePattern p;
    p.bits.resize(n);
    for (int i = 0; i < n; ++i) p.bits[i] = u01(eng) < 0.5 ? 1 : 0;
    return p;
}

const SeriesConfig kDeep{20000, 1e-13};

// ---------------------------------------------------------------------------

Criterion c1_block_split() {
    Timer timer;
    Criterion c{1, "block-split identity vs dense logdet", false, "", 0.0};
    auto eng = make_stream(1, 1);
    double worst = 0.0;  // deviation in units of the 1e-9*N tolerance
    for (int d = 0; d < 500; ++d) {
        int n = 1 + static_cast<int>(u01(eng) * 64.0) % 64;
        FirFilter f{{{gauss(eng), gauss(eng)}, {gauss(eng), gauss(eng)}}};
        auto pat = coin_pattern(n, eng);
        double snr = u01(eng) * 100.0;
        double dev = std::abs(block_split_logdet(f, pat, snr) -
                              logdet_input_erasure(f, pat, snr));
        worst = std::max(worst, dev / (1e-9 * n));
    }
    c.seconds = timer.secs();
    c.pass = worst <= 1.0 && c.seconds < 10.0;
    c.detail = fmt("500 draws N<=64, max dev %.2e of 1e-9*N, budget 10s", worst);
    return c;
}

Criterion c2_input_output() {
    Timer timer;
    Criterion c{2, "input/output erasure logdet equivalence", false, "", 0.0};
    auto eng = make_stream(1, 2);
    double worst = 0.0;
    for (int d = 0; d < 500; ++d) {
        int memory = 1 + d % 4;
        int n = 1 + static_cast<int>(u01(eng) * 64.0) % 64;
        FirFilter f;
        for (int i = 0; i <= memory; ++i) f.taps.push_back({gauss(eng), gauss(eng)});
        auto pat = coin_pattern(n, eng);
        double snr = u01(eng) * 100.0;
        double dev = std::abs(logdet_input_erasure(f, pat, snr) -
                              logdet_output_erasure(f, pat, snr));
        worst = std::max(worst, dev / (1e-9 * n));
    }
    c.seconds = timer.secs();
    c.pass = worst <= 1.0 && c.seconds < 30.0;
    c.detail = fmt("500 draws L in 1..4, max dev %.2e of 1e-9*N, budget 30s", worst);
    return c;
}

Criterion c3_recursion() {
    Timer timer;
    Criterion c{3, "tridiagonal recursion vs closed form", false, "", 0.0};
    auto eng = make_stream(1, 3);
    const std::int64_t top = 10000;
    double worst = 0.0;  // relative
    for (int d = 0; d < 20; ++d) {
        double a = 1.5 + u01(eng) * 18.5;
        double b = u01(eng) * 0.5 * std::sqrt(a * a - 1.0);  // keeps a^2-4b^2 >= 1
        auto dq = derive_from_ab(a, b);
        auto prefix = tridiag_logdet_prefix(top, dq);
        for (std::int64_t n = 1; n <= top; ++n) {
            double closed = log_block_det(n, dq);
            worst = std::max(worst, std::abs(prefix[n - 1] - closed) / std::abs(closed));
        }
        // spot-check the single-shot entry point too
        for (std::int64_t n : {std::int64_t(1), std::int64_t(10), std::int64_t(100),
                               std::int64_t(1000), std::int64_t(10000)}) {
            double closed = log_block_det(n, dq);
            worst = std::max(worst,
                             std::abs(tridiag_logdet_recursive(n, dq) - closed) /
                                 std::abs(closed));
        }
    }
    c.seconds = timer.secs();
    c.pass = worst <= 1e-10 && c.seconds < 5.0;
    c.detail = fmt("20 (a,b) draws, n 1..1e4, max rel dev %.2e vs 1e-10, budget 5s", worst);
    return c;
}

Criterion c4_enumeration_sandwich() {
    Timer timer;
    Criterion c{4, "finite-block enumeration inside the series sandwich", false, "", 0.0};
    const int n = 18;
    const double gs[3][2] = {{0.8, 0.2}, {1.0, 1.0}, {1.0, 0.5}};
    const double snrs[3] = {1.0, 10.0, 100.0};
    const double qs[3] = {0.3, 0.5, 0.7};
    int inside = 0, cells = 0;
    double worst_excess = 0.0;  // how far the enumeration sits above the series
    for (auto& g : gs)
        for (double snr : snrs)
            for (double q : qs) {
                ++cells;
                ChannelParams p{g[0], g[1], snr};
                auto series = two_tap_rate_iid(p, q, kDeep);
                if (series.error_bound > 1e-12) continue;  // tail bound requirement
                FirFilter f{{std::sqrt(p.g0), std::sqrt(p.g1)}};
                double rn = exact_finite_rate(f, snr, ErasureProcess::iid(q), n).rate;
                double beta = 2.0 * erasure_free_upper_bound(p);
                double lo = series.rate - 2.0 * beta * (1.0 - q) / (n * q) -
                            beta * std::pow(1.0 - q, n) * ((n + 1) * q + 1.0);
                if (lo <= rn && rn <= series.rate) ++inside;
                worst_excess = std::max(worst_excess, rn - series.rate);
            }
    c.seconds = timer.secs();
    c.pass = inside == cells && c.seconds < 120.0;
    c.detail = fmt("N=18, %d/%d cells in range, worst excess above series %+.2e, budget 120s",
                   inside, cells, worst_excess);
    return c;
}

Criterion c5_mc_protocol() {
    Timer timer;
    Criterion c{5, "protocol Monte-Carlo vs series (3-sigma)", false, "", 0.0};
    const int need = 67;  // ceil(0.95 * 70)
    int hits = 0, cells = 0, q0_misses = 0;
    for (int pi = 0; pi <= 6; ++pi) {
        double snr = std::pow(10.0, 2.0 * pi / 10.0);
        for (int qi = 0; qi <= 9; ++qi) {
            double q = qi / 10.0;
            ++cells;
            auto series = two_tap_rate_iid({0.8, 0.2, snr}, q, kDeep);
            McConfig cfg{200, 50, 9000 + static_cast<std::uint64_t>(16 * pi + qi)};
            auto mc = monte_carlo_rate({{std::sqrt(0.8), std::sqrt(0.2)}}, snr,
                                       ErasureProcess::iid(q), cfg);
            if (std::abs(mc.rate - series.rate) <= 3.0 * mc.error_bound)
                ++hits;
            else if (q == 0.0)
                ++q0_misses;
        }
    }
    c.seconds = timer.secs();
    c.pass = hits >= need && c.seconds < 60.0;
    c.detail = fmt("N=200, 50 trials: %d/%d within 3 se (need %d; %d misses are q=0 rows with "
                   "se=0), budget 60s",
                   hits, cells, need, q0_misses);
    return c;
}

Criterion c6_unit_gain_shape() {
    Timer timer;
    Criterion c{6, "unit-gain split sweep: shape and symmetry", false, "", 0.0};
    const double qs[6] = {0.0, 0.05, 0.1, 0.2, 0.3, 0.4};
    const double snr = std::pow(10.0, 1.0);
    bool ok = true;
    double sym_dev = 0.0;
    for (double q : qs) {
        std::vector<double> v(101);
        for (int i = 0; i <= 100; ++i)
            v[i] = two_tap_rate_iid({i / 100.0, 1.0 - i / 100.0, snr}, q, kDeep).rate;
        int argmin = 0, argmax = 0;
        for (int i = 1; i <= 100; ++i) {
            if (v[i] < v[argmin]) argmin = i;
            if (v[i] > v[argmax]) argmax = i;
        }
        ok = ok && argmin == 50;                    // minimum at the even split
        ok = ok && (argmax == 0 || argmax == 100);  // maxima at the endpoints
        ok = ok && v[0] >= v[50] && v[100] >= v[50];
        for (int i = 0; i <= 100; ++i) sym_dev = std::max(sym_dev, std::abs(v[i] - v[100 - i]));
    }
    ok = ok && sym_dev <= 1e-10;
    c.seconds = timer.secs();
    c.pass = ok;
    c.detail = fmt("6 q-curves, argmin fixed at g0=0.5, symmetry dev %.2e vs 1e-10", sym_dev);
    return c;
}

Criterion c7_scheme_ordering() {
    Timer timer;
    Criterion c{7, "scheme ordering and scp/icfs crossover", false, "", 0.0};
    const double alpha_sq = 0.5, snr = std::pow(10.0, 1.4);
    bool ordered = true;
    int sign_changes = 0;
    double prev_gap = 0.0;
    for (int i = 0; i <= 100; ++i) {
        double q = i / 100.0;
        CellularParams p{alpha_sq, snr, q};
        double mcp = mcp_rate(p, kDeep).rate, scp = scp_rate(p), icfs = icfs_rate(p);
        ordered = ordered && mcp >= icfs - 1e-12 && mcp >= scp - 1e-12;
        double gap = icfs - scp;
        if (i > 0 && gap * prev_gap < 0.0) ++sign_changes;
        if (gap != 0.0) prev_gap = gap;
    }
    auto qstar = scp_icfs_crossover(alpha_sq, snr);
    bool crossover_ok = qstar.has_value() && sign_changes == 1;
    if (crossover_ok) {
        CellularParams lo{alpha_sq, snr, *qstar - 1e-5}, hi{alpha_sq, snr, *qstar + 1e-5};
        crossover_ok = (icfs_rate(lo) - scp_rate(lo)) * (icfs_rate(hi) - scp_rate(hi)) < 0.0;
    }
    c.seconds = timer.secs();
    c.pass = ordered && crossover_ok;
    c.detail = fmt("101 points: mcp on top %s, unique crossover q*=%.6f", ordered ? "yes" : "NO",
                   qstar.value_or(-1.0));
    return c;
}

Criterion c8_throughputs() {
    Timer timer;
    Criterion c{8, "per-active-user throughput behavior", false, "", 0.0};
    const double alpha_sq = 0.5, snr = std::pow(10.0, 1.4);
    std::vector<double> mcp(91), scp(91), icfs(91);
    for (int i = 0; i <= 90; ++i) {
        auto s = user_activity_throughputs({alpha_sq, snr, i / 100.0}, kDeep);
        mcp[i] = s.mcp_throughput.value();
        scp[i] = s.scp_throughput.value();
        icfs[i] = s.icfs_throughput.value();
    }
    bool icfs_const = true, scp_increasing = true;
    double tv = 0.0;
    for (int i = 1; i <= 90; ++i) {
        icfs_const = icfs_const && icfs[i] == icfs[0];  // exactly constant
        scp_increasing = scp_increasing && scp[i] > scp[i - 1];
        tv += std::abs(mcp[i] - mcp[i - 1]);
    }
    bool mcp_flat = tv < 0.10 * mcp[0];
    c.seconds = timer.secs();
    c.pass = icfs_const && scp_increasing && mcp_flat;
    c.detail = fmt("icfs const %s, scp monotone %s, mcp variation %.2f%% vs 10%% of the q=0 value",
                   icfs_const ? "yes" : "NO", scp_increasing ? "yes" : "NO",
                   100.0 * tv / mcp[0]);
    return c;
}

Criterion c9_high_snr() {
    Timer timer;
    Criterion c{9, "high-SNR slopes and the mcp offset at alpha=0", false, "", 0.0};
    const double q = 0.3, h = 0.25, P = 1e6;
    auto slope = [&](auto&& rate_at) { return (rate_at(P * std::exp(h)) - rate_at(P * std::exp(-h))) / (2.0 * h); };
    double two_tap = slope([&](double p) { return two_tap_rate_iid({0.8, 0.2, p}, q, kDeep).rate; });
    double scp = slope([&](double p) { return scp_rate({0.5, p, q}); });
    double icfs = slope([&](double p) { return icfs_rate({0.5, p, q}); });
    double e1 = std::abs(two_tap - (1.0 - q)) / (1.0 - q);
    double e2 = std::abs(scp - q * (1.0 - q)) / (q * (1.0 - q));
    double e3 = std::abs(icfs - 0.5 * (1.0 - q)) / (0.5 * (1.0 - q));
    double offset = high_snr_triple(Scheme::mcp, {0.0, P, q}, kDeep).l_inf;
    c.seconds = timer.secs();
    c.pass = e1 <= 0.01 && e2 <= 0.01 && e3 <= 0.01 && offset == 0.0;
    c.detail = fmt("slope errs %.2e/%.2e/%.2e vs 1%%, alpha=0 offset %s zero", e1, e2, e3,
                   offset == 0.0 ? "exactly" : "NOT");
    return c;
}

Criterion c10_markov_reductions() {
    Timer timer;
    Criterion c{10, "markov reductions (iid limit, single-tap chain)", false, "", 0.0};
    double worst_iid = 0.0, worst_g1 = 0.0;
    const double gs[2][2] = {{0.8, 0.2}, {1.0, 0.5}};
    for (auto& g : gs)
        for (double snr : {1.0, 10.0})
            for (double q : {0.2, 0.5, 0.8}) {
                ChannelParams p{g[0], g[1], snr};
                worst_iid = std::max(worst_iid,
                                     std::abs(markov_two_tap_rate(p, q, q, kDeep).rate -
                                              two_tap_rate_iid(p, q, kDeep).rate));
            }
    for (auto [q0, q1] : {std::pair{0.1, 0.3}, std::pair{0.6, 0.2}, std::pair{0.5, 0.5}})
        for (double snr : {1.0, 10.0})
            for (double g0 : {0.7, 1.0}) {
                double qbar = q1 / (1.0 - q0 + q1);
                double memoryless = (1.0 - qbar) * std::log1p(snr * g0);
                worst_g1 = std::max(worst_g1,
                                    std::abs(markov_two_tap_rate({g0, 0.0, snr}, q0, q1, kDeep)
                                                 .rate -
                                             memoryless));
            }
    c.seconds = timer.secs();
    c.pass = worst_iid <= 1e-12 && worst_g1 <= 1e-12;
    c.detail = fmt("markov(q,q) vs iid dev %.2e, g1=0 vs memoryless dev %.2e, tol 1e-12",
                   worst_iid, worst_g1);
    return c;
}

Criterion c11_user_activity_mc() {
    Timer timer;
    Criterion c{11, "user-activity MC convergence", false, "", 0.0};
    const double alpha_sq = 0.5, snr = std::pow(10.0, 1.4), q = 0.3;
    auto mc = user_activity_throughput_mc(std::sqrt(alpha_sq), snr, q, {2000, 200, 0});
    double target = mcp_rate({alpha_sq, snr, q}, kDeep).rate / (1.0 - q);
    double z = std::abs(mc.rate - target) / mc.error_bound;
    c.seconds = timer.secs();
    c.pass = z <= 3.0 && c.seconds < 30.0;
    c.detail = fmt("N=2000, 200 trials: z=%.2f vs 3, budget 30s", z);
    return c;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    if (!f) return "<missing " + p.string() + ">";
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Criterion c12_figure_determinism() {
    Timer timer;
    Criterion c{12, "figure determinism (byte-identical csv)", false, "", 0.0};
    const char* bin = std::getenv("ERK_CLI_BIN");
    if (!bin || !*bin) {
        c.seconds = timer.secs();
        c.detail = "ERK_CLI_BIN is not set";
        return c;
    }
    std::filesystem::path base = "acceptance_out";
    std::filesystem::remove_all(base);
    std::filesystem::create_directories(base);
    auto invoke = [&](const std::string& sub) {
        std::string cmd = std::string("\"") + bin + "\" --seed 7 --out-dir " +
                          (base / sub).string() + " figure fig2 --mc >/dev/null 2>&1";
        return std::system(cmd.c_str()) == 0;
    };
    bool ran = invoke("a") && invoke("b");
    std::string a = slurp(base / "a" / "fig2.csv");
    std::string b = slurp(base / "b" / "fig2.csv");
    c.seconds = timer.secs();
    c.pass = ran && !a.empty() && a == b;
    c.detail = ran ? fmt("two runs, %zu bytes, %s", a.size(), a == b ? "identical" : "DIFFER")
                   : "figure command failed";
    return c;
}

}  // namespace

int main() {
    std::vector<Criterion> results;
    auto push = [&](Criterion c) {
        report(c);
        results.push_back(std::move(c));
    };
    push(c1_block_split());
    push(c2_input_output());
    push(c3_recursion());
    push(c4_enumeration_sandwich());
    push(c5_mc_protocol());
    push(c6_unit_gain_shape());
    push(c7_scheme_ordering());
    push(c8_throughputs());
    push(c9_high_snr());
    push(c10_markov_reductions());
    push(c11_user_activity_mc());
    push(c12_figure_determinism());

    int fails = 0;
    for (const auto& c : results) fails += c.pass ? 0 : 1;
    std::printf("\nacceptance: %d/%zu criteria passed\n", static_cast<int>(results.size()) - fails,
                results.size());
    return fails;
}
