#include "erk/cellular.hpp"

#include <cmath>
#include <stdexcept>

#include "erk/numeric_util.hpp"

namespace erk {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// log(1 + (1+a^2)P) - log(1 + a^2 P): the active-interferer SNR penalty term.
double interfered_gap(double alpha_sq, double snr) {
    return std::log1p((1.0 + alpha_sq) * snr) - std::log1p(alpha_sq * snr);
}

}  // namespace

void validate(const CellularParams& p) {
    require(std::isfinite(p.alpha_sq) && p.alpha_sq >= 0.0 && p.alpha_sq <= 1.0,
            "alpha_sq must lie in [0, 1]");
    require(std::isfinite(p.snr) && p.snr >= 0.0, "snr must be finite and >= 0 (linear scale)");
    require(std::isfinite(p.q) && p.q >= 0.0 && p.q <= 1.0, "q must lie in [0, 1]");
}

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::mcp: return "mcp";
        case Scheme::scp: return "scp";
        case Scheme::icfs: return "icfs";
    }
    return "unknown";
}

double scp_rate(const CellularParams& p) {
    validate(p);
    double x = 1.0 - p.q;
    return x * (p.q * std::log1p(p.snr) + x * interfered_gap(p.alpha_sq, p.snr));
}

double scp_rate_expectation_oracle(const CellularParams& p) {
    validate(p);
    double x = 1.0 - p.q;
    // Four (own activity, interferer activity) outcomes; the two with an
    // inactive user contribute log 1 = 0.
    double quiet = x * p.q * std::log1p(p.snr);
    double busy = x * x * std::log1p(p.snr / (1.0 + p.alpha_sq * p.snr));
    return quiet + busy;
}

double icfs_rate(const CellularParams& p) {
    validate(p);
    return 0.5 * (1.0 - p.q) * std::log1p(p.snr);
}

RateResult mcp_rate(const CellularParams& p, const SeriesConfig& cfg) {
    validate(p);
    ChannelParams ch{1.0, p.alpha_sq, p.snr};
    return two_tap_rate_iid(ch, p.q, cfg);
}

HighSnrCharacterization high_snr_triple(Scheme scheme, const CellularParams& p,
                                        const SeriesConfig& cfg) {
    validate(p);
    HighSnrCharacterization hc;
    switch (scheme) {
        case Scheme::scp:
            hc.s_inf = p.q * (1.0 - p.q);
            return hc;
        case Scheme::icfs:
            hc.s_inf = 0.5 * (1.0 - p.q);
            return hc;
        case Scheme::mcp: break;
    }

    hc.s_inf = 1.0 - p.q;
    double q = p.q;
    if (q == 0.0 || p.alpha_sq == 0.0) {
        // q -> 0 limit is -log(max(1, a^2)) = 0; a = 0 kills every term exactly.
        return hc;
    }
    // l_inf = -q^2 sum_{n>=1} (1-q)^{n-1} log((1 - a^{2n})/(1 - a^2)); the
    // n-th term is log(1 + a^2 + ... + a^{2(n-1)}) <= log n, closing the tail
    // with M = log 2.
    double x = 1.0 - q;
    double w = 1.0;
    double tail = 0.0;
    CompensatedSum acc;
    int n = 0;
    while (n < cfg.max_terms) {
        ++n;
        acc.add(q * q * w * detail::log_power_diff_ratio(1.0, p.alpha_sq, n - 1));
        w *= x;
        tail = std::log(2.0) * w * (1.0 + n * q);
        if (tail <= cfg.target_tail_bound) break;
    }
    hc.l_inf = -acc.value();
    hc.l_inf_error_bound = tail;
    hc.terms_used = n;
    return hc;
}

SchemeComparison compare_schemes(const CellularParams& p, const SeriesConfig& cfg) {
    validate(p);
    SchemeComparison out;
    out.mcp = mcp_rate(p, cfg).rate;
    out.scp = scp_rate(p);
    out.icfs = icfs_rate(p);
    out.crossover_q = scp_icfs_crossover(p.alpha_sq, p.snr);
    return out;
}

SchemeComparison user_activity_throughputs(const CellularParams& p, const SeriesConfig& cfg) {
    validate(p);
    require(p.q < 1.0, "q must be < 1: per-active-user throughput needs active users");
    SchemeComparison out;
    out.mcp = mcp_rate(p, cfg).rate;
    out.scp = scp_rate(p);
    out.icfs = icfs_rate(p);
    double log1P = std::log1p(p.snr);
    // Closed forms for the (1-q)-normalized rates; the ICFS one does not
    // depend on q at all.
    out.mcp_throughput = out.mcp / (1.0 - p.q);
    out.scp_throughput = p.q * log1P + (1.0 - p.q) * interfered_gap(p.alpha_sq, p.snr);
    out.icfs_throughput = 0.5 * log1P;
    return out;
}

std::optional<double> scp_icfs_crossover(double alpha_sq, double snr) {
    CellularParams probe{alpha_sq, snr, 0.0};
    validate(probe);
    auto f = [&](double q) {
        CellularParams p{alpha_sq, snr, q};
        return icfs_rate(p) - scp_rate(p);
    };
    double lo = 1e-9, hi = 1.0 - 1e-9;
    double flo = f(lo), fhi = f(hi);
    if (!(flo * fhi < 0.0)) return std::nullopt;
    // ~24 halvings take the bracket below the 1e-6 reporting resolution.
    while (hi - lo > 1e-7) {
        double mid = 0.5 * (lo + hi);
        double fmid = f(mid);
        if (fmid == 0.0) return mid;
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace erk
