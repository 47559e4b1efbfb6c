#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>

namespace erk {

// Two-tap channel description: squared tap magnitudes g0 = |h0|^2, g1 = |h1|^2
// and the linear input power P. Phases never enter any rate formula, so the
// analytic side carries magnitudes only.
struct ChannelParams {
    double g0 = 0.0;
    double g1 = 0.0;
    double snr = 0.0;  // linear power ratio, not dB
};

void validate(const ChannelParams& p);  // throws std::invalid_argument

// Scalars every formula consumes:
//   a = 1 + P(g0+g1),  b = P*sqrt(g0*g1),
//   r,s = roots of x^2 - a x + b^2 = 0  (r the larger one).
// Guaranteed: a >= 1, b >= 0, r + s = a, r*s = b^2, r - s = sqrt(a^2-4b^2) >= 1,
// hence r >= 1 and s >= 0. s is computed as b^2/r to dodge cancellation at
// high SNR.
struct DerivedQuantities {
    double a = 1.0;
    double b = 0.0;
    double r = 1.0;
    double s = 0.0;
};

DerivedQuantities derive(const ChannelParams& p);

// Build DerivedQuantities straight from (a, b); requires a >= 1 and
// a^2 - 4 b^2 >= 1 (every valid ChannelParams satisfies this).
DerivedQuantities derive_from_ab(double a, double b);

// Erasure law: i.i.d. Bernoulli(q) or a two-state Markov chain over
// {erased = 0, active = 1} with Pr(0 -> 1) = 1 - q0 and Pr(1 -> 0) = q1.
// Markov(q, q) behaves identically to IID(q), including the sampled bit
// streams for a given RNG stream.
struct IidErasure {
    double q = 0.0;
};
struct MarkovErasure {
    double q0 = 0.0;
    double q1 = 0.0;
};

// Thrown for the absorbing all-erased chain 1 - q0 + q1 == 0 (q0 = 1, q1 = 0),
// which has no unique stationary law.
struct degenerate_chain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class ErasureProcess {
  public:
    static ErasureProcess iid(double q);
    static ErasureProcess markov(double q0, double q1);

    bool is_iid() const { return std::holds_alternative<IidErasure>(v_); }
    bool is_markov() const { return !is_iid(); }

    // IID only.
    double q() const;
    // Markov only.
    double q0() const;
    double q1() const;

    // Long-run fraction of erased symbols: q for IID, q1/(1-q0+q1) for Markov.
    // Throws degenerate_chain_error when the Markov denominator vanishes.
    double stationary_erasure_rate() const;

    std::string describe() const;

  private:
    explicit ErasureProcess(IidErasure e) : v_(e) {}
    explicit ErasureProcess(MarkovErasure e) : v_(e) {}
    std::variant<IidErasure, MarkovErasure> v_;
};

enum class RateKind {
    closed_form,
    truncated_series,
    exact_enumeration,
    monte_carlo,
};

std::string to_string(RateKind k);

// Rate in nats per channel use plus an error bound: a deterministic truncation
// bound for series (true value in [rate, rate + error_bound], terms being
// nonnegative) or a standard error for Monte-Carlo results.
struct RateResult {
    double rate = 0.0;
    double error_bound = 0.0;
    RateKind kind = RateKind::closed_form;
    std::map<std::string, std::string> meta;  // terms, trials, seed, block size, notes
};

}  // namespace erk
