#pragma once

#include <cstdint>

#include "erk/core_model.hpp"

namespace erk {

// Truncation policy for the run-length series: stop at max_terms or as soon as
// the closed-form tail bound drops below target_tail_bound, whichever comes
// first.
struct SeriesConfig {
    int max_terms = 200;
    double target_tail_bound = 1e-12;
};

// High-SNR behaviour rate ~ s_inf * (log P - l_inf): multiplexing gain and
// power offset (nats).
struct HighSnrCharacterization {
    double s_inf = 0.0;
    double l_inf = 0.0;
    double l_inf_error_bound = 0.0;  // truncation bound on |l_inf| (0 for closed forms)
    int terms_used = 0;
};

// log det(D_n) where D_n is the n x n tridiagonal matrix with diagonal a and
// off-diagonals b, i.e. log((r^{n+1} - s^{n+1})/(r - s)), evaluated in log
// space: safe for n up to 1e6 and beyond. n >= 1.
double log_block_det(std::int64_t n, const DerivedQuantities& dq);

// Achievable rate with i.i.d. Gaussian inputs and i.i.d. erasures:
//   R = q^2 * sum_{n>=1} (1-q)^n * log det(D_n).
// Truncated with error_bound = (1-q)^{N+1} (1 + (N+1) q) log r after N terms
// (from log det(D_n) <= (n+1) log r). Edge cases: q=1 -> 0; q=0 -> log r (the
// series degenerates; log r is the erasure-free capacity and the correct
// limit).
RateResult two_tap_rate_iid(const ChannelParams& params, double q, const SeriesConfig& cfg = {});

// Memoryless special case: (1-q) * log(1 + P*g0).
double one_tap_rate(double g0, double snr, double q);

// log r: the q=0 capacity, and an upper bound on the rate for every q.
double erasure_free_upper_bound(const ChannelParams& params);

// High-SNR pair for the two-tap channel: s_inf = 1-q and
//   l_inf = -q^2 * sum_{n>=1} (1-q)^{n-1} * log((g0^{n+1} - g1^{n+1})/(g0 - g1)),
// with the g0=g1 term limit (n+1)*g0^n. q=0 returns the analytic limit
// -log(max(g0, g1)); q=1 leaves the single n=1 term -log(g0+g1).
HighSnrCharacterization high_snr_two_tap(double g0, double g1, double q,
                                         const SeriesConfig& cfg = {});

// Markov-erasure variant: R = kappa * sum_{n>=1} (1-q1)^{n-1} log det(D_n)
// with kappa = q1^2 (1-q0) / (1-q0+q1). Rejects the degenerate absorbing
// chain 1-q0+q1 = 0. Markov(q, q) equals the i.i.d. rate.
RateResult markov_two_tap_rate(const ChannelParams& params, double q0, double q1,
                               const SeriesConfig& cfg = {});

// Probability that a given position starts an isolated run of exactly n
// non-erasures: q^2 (1-q)^n for IID, kappa * (1-q1)^{n-1} for Markov. n >= 1.
double run_length_pmf(const ErasureProcess& process, std::int64_t n);

namespace detail {
// log((x^{n+1} - y^{n+1})/(x - y)) for x >= y >= 0, x > 0, with the x == y
// limit log((n+1) x^n). Shared kernel of log_block_det and the high-SNR
// offset series.
double log_power_diff_ratio(double x, double y, std::int64_t n);
}  // namespace detail

}  // namespace erk
