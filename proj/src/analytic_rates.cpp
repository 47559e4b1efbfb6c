#include "erk/analytic_rates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "erk/numeric_util.hpp"

namespace erk {

namespace detail {

// log((x^{n+1} - y^{n+1})/(x - y)) = n log x + log(1 - u^{n+1}) - log(1 - u)
// with u = y/x < 1. 1 - u^{n+1} goes through expm1 so the y -> x limit is
// seamless; u^{n+1} underflowing to 0 is harmless.
double log_power_diff_ratio(double x, double y, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("log_power_diff_ratio: n must be >= 0");
    if (!(x > 0.0) || y < 0.0 || y > x)
        throw std::invalid_argument("log_power_diff_ratio: need x >= y >= 0 and x > 0");
    double nd = static_cast<double>(n);
    if (y == 0.0) return nd * std::log(x);
    if (y == x) return std::log(nd + 1.0) + nd * std::log(x);
    // log u via log1p on the exact small difference (x - y is exact when the
    // two are close, by Sterbenz).
    double log_u = std::log1p((y - x) / x);
    double one_minus_upow = -std::expm1((nd + 1.0) * log_u);
    double one_minus_u = (x - y) / x;
    return nd * std::log(x) + std::log(one_minus_upow) - std::log(one_minus_u);
}

}  // namespace detail

namespace {

void check_q(double q) {
    if (!(std::isfinite(q) && q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("q must lie in [0, 1]");
}

void bound_meta(RateResult& res, int terms, const SeriesConfig& cfg) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", cfg.target_tail_bound);
    res.meta["terms"] = std::to_string(terms);
    res.meta["max_terms"] = std::to_string(cfg.max_terms);
    res.meta["target_tail_bound"] = buf;
}

void check_cfg(const SeriesConfig& cfg) {
    if (cfg.max_terms < 1) throw std::invalid_argument("max_terms must be >= 1");
    if (!(std::isfinite(cfg.target_tail_bound) && cfg.target_tail_bound >= 0.0))
        throw std::invalid_argument("target_tail_bound must be finite and >= 0");
}

}  // namespace

double log_block_det(std::int64_t n, const DerivedQuantities& dq) {
    if (n < 1) throw std::invalid_argument("log_block_det: n must be >= 1");
    if (dq.s == 0.0) return static_cast<double>(n) * std::log(dq.r);
    return detail::log_power_diff_ratio(dq.r, dq.s, n);
}

RateResult two_tap_rate_iid(const ChannelParams& params, double q, const SeriesConfig& cfg) {
    check_q(q);
    check_cfg(cfg);
    DerivedQuantities dq = derive(params);
    double log_r = std::log(dq.r);

    RateResult res;
    if (q == 1.0) {
        res.rate = 0.0;
        res.kind = RateKind::closed_form;
        res.meta["note"] = "all inputs erased";
        return res;
    }
    if (q == 0.0) {
        res.rate = log_r;
        res.kind = RateKind::closed_form;
        res.meta["note"] = "q=0: erasure-free capacity log r";
        return res;
    }

    double x = 1.0 - q;
    double w = 1.0;  // (1-q)^n, updated at the top of the loop
    CompensatedSum acc;
    double tail = 0.0;
    int n = 0;
    while (n < cfg.max_terms) {
        ++n;
        w *= x;
        acc.add(q * q * w * log_block_det(n, dq));
        // sum_{m>n} q^2 (1-q)^m (m+1) log r in closed form
        tail = w * x * (1.0 + (n + 1) * q) * log_r;
        if (tail <= cfg.target_tail_bound) break;
    }

    res.rate = acc.value();
    res.error_bound = tail;
    res.kind = RateKind::truncated_series;
    bound_meta(res, n, cfg);
    return res;
}

double one_tap_rate(double g0, double snr, double q) {
    check_q(q);
    if (!(std::isfinite(g0) && g0 >= 0.0)) throw std::invalid_argument("g0 must be >= 0");
    if (!(std::isfinite(snr) && snr >= 0.0)) throw std::invalid_argument("snr must be >= 0");
    return (1.0 - q) * std::log1p(snr * g0);
}

double erasure_free_upper_bound(const ChannelParams& params) {
    return std::log(derive(params).r);
}

HighSnrCharacterization high_snr_two_tap(double g0, double g1, double q, const SeriesConfig& cfg) {
    check_q(q);
    check_cfg(cfg);
    if (!(std::isfinite(g0) && g0 >= 0.0) || !(std::isfinite(g1) && g1 >= 0.0) || g0 + g1 <= 0.0)
        throw std::invalid_argument("gains must be finite, >= 0, and not both zero");

    HighSnrCharacterization hc;
    hc.s_inf = 1.0 - q;

    double hi = std::max(g0, g1);
    double lo = std::min(g0, g1);
    if (q == 0.0) {
        // Series limit as q -> 0; matches log r ~ log P + log max(g0, g1).
        hc.l_inf = -std::log(hi);
        return hc;
    }

    // Term magnitudes obey |log((hi^{n+1}-lo^{n+1})/(hi-lo))| <= n M with
    // M = |log hi| + log 2, which closes the tail in the same
    // geometric-arithmetic form as the rate series.
    double big_m = std::abs(std::log(hi)) + std::log(2.0);
    double x = 1.0 - q;
    double w = 1.0;  // (1-q)^{n-1}
    CompensatedSum acc;
    double tail = 0.0;
    int n = 0;
    while (n < cfg.max_terms) {
        ++n;
        acc.add(q * q * w * detail::log_power_diff_ratio(hi, lo, n));
        w *= x;
        tail = big_m * w * (1.0 + n * q);
        if (tail <= cfg.target_tail_bound) break;
    }
    hc.l_inf = -acc.value();
    hc.l_inf_error_bound = tail;
    hc.terms_used = n;
    return hc;
}

RateResult markov_two_tap_rate(const ChannelParams& params, double q0, double q1,
                               const SeriesConfig& cfg) {
    check_q(q0);
    check_q(q1);
    check_cfg(cfg);
    DerivedQuantities dq = derive(params);
    double denom = 1.0 - q0 + q1;
    if (denom <= 0.0)
        throw degenerate_chain_error(
            "absorbing all-erased chain: 1 - q0 + q1 = 0 has no achievable-rate limit");

    double log_r = std::log(dq.r);
    RateResult res;
    if (q1 == 0.0) {
        // Steady state has no erasures at all.
        res.rate = log_r;
        res.kind = RateKind::closed_form;
        res.meta["note"] = "q1=0: stationary erasure rate 0, erasure-free capacity log r";
        return res;
    }
    if (q0 == 1.0) {
        // Stationary law is all-erased (but the chain is not degenerate since
        // q1 > 0 here).
        res.rate = 0.0;
        res.kind = RateKind::closed_form;
        res.meta["note"] = "q0=1: stationary erasure rate 1";
        return res;
    }

    double kappa = q1 * q1 * (1.0 - q0) / denom;
    double x = 1.0 - q1;
    double w = 1.0;  // (1-q1)^{n-1}
    CompensatedSum acc;
    double tail = 0.0;
    int n = 0;
    while (n < cfg.max_terms) {
        ++n;
        acc.add(kappa * w * log_block_det(n, dq));
        w *= x;
        // sum_{m>n} kappa (1-q1)^{m-1} (m+1) log r in closed form
        tail = (1.0 - q0) / denom * w * (1.0 + (n + 1) * q1) * log_r;
        if (tail <= cfg.target_tail_bound) break;
    }
    res.rate = acc.value();
    res.error_bound = tail;
    res.kind = RateKind::truncated_series;
    bound_meta(res, n, cfg);
    return res;
}

double run_length_pmf(const ErasureProcess& process, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("run_length_pmf: n must be >= 1");
    if (process.is_iid()) {
        double q = process.q();
        return q * q * std::pow(1.0 - q, static_cast<double>(n));
    }
    double q0 = process.q0();
    double q1 = process.q1();
    double denom = 1.0 - q0 + q1;
    if (denom <= 0.0)
        throw degenerate_chain_error("absorbing all-erased chain has no run-length law");
    return q1 * q1 * (1.0 - q0) / denom * std::pow(1.0 - q1, static_cast<double>(n - 1));
}

}  // namespace erk
