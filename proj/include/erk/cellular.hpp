#pragma once

#include <optional>

#include "erk/analytic_rates.hpp"
#include "erk/core_model.hpp"

namespace erk {

// Soft-handoff uplink: every user is heard by its own base station with gain 1
// and by one neighbour with amplitude gain alpha (configured as alpha^2);
// q is the per-user inactivity/erasure probability.
struct CellularParams {
    double alpha_sq = 0.5;
    double snr = 0.0;  // linear
    double q = 0.0;
};

void validate(const CellularParams& p);

enum class Scheme { mcp, scp, icfs };

std::string to_string(Scheme s);

struct SchemeComparison {
    double mcp = 0.0;
    double scp = 0.0;
    double icfs = 0.0;
    std::optional<double> mcp_throughput;
    std::optional<double> scp_throughput;
    std::optional<double> icfs_throughput;
    std::optional<double> crossover_q;  // SCP/ICFS rate crossing, when one exists
};

// Single-cell processing, interference treated as noise:
//   (1-q) * [ q log(1+P) + (1-q) log(1+(1+a^2)P) - (1-q) log(1+a^2 P) ].
double scp_rate(const CellularParams& p);

// The same quantity as the explicit four-outcome Bernoulli expectation of
// log(1 + e_sig P / (1 + a^2 e_int P)); built-in cross-check for scp_rate.
double scp_rate_expectation_oracle(const CellularParams& p);

// Inter-cell frequency sharing: (1-q)/2 * log(1+P).
double icfs_rate(const CellularParams& p);

// Multicell (joint) processing: the two-tap rate with g0 = 1, g1 = alpha^2.
RateResult mcp_rate(const CellularParams& p, const SeriesConfig& cfg = {});

// High-SNR (s_inf, l_inf) per scheme: SCP (q(1-q), 0), ICFS ((1-q)/2, 0),
// MCP (1-q, -q^2 sum (1-q)^{n-1} log((1-alpha^{2n})/(1-alpha^2))) with the
// alpha=1 term limit log n and the q=0 limit 0.
HighSnrCharacterization high_snr_triple(Scheme scheme, const CellularParams& p,
                                        const SeriesConfig& cfg = {});

// Rates of all three schemes at p (throughputs unset), plus the SCP/ICFS
// crossover when it exists.
SchemeComparison compare_schemes(const CellularParams& p, const SeriesConfig& cfg = {});

// Per-active-user throughputs (rate / (1-q)). ICFS and SCP use their closed
// forms log(1+P)/2 and q log(1+P) + (1-q) log((1+(1+a^2)P)/(1+a^2 P)), which
// makes the ICFS throughput exactly constant in q. Rejects q = 1.
SchemeComparison user_activity_throughputs(const CellularParams& p, const SeriesConfig& cfg = {});

// Bisection root of icfs_rate - scp_rate over q in (0, 1), resolved to 1e-6,
// or nullopt when there is no sign change (alpha = 0, P = 0, ...).
std::optional<double> scp_icfs_crossover(double alpha_sq, double snr);

}  // namespace erk
