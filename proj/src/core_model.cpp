#include "erk/core_model.hpp"

#include <cmath>
#include <sstream>

namespace erk {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

bool is_prob(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

}  // namespace

void validate(const ChannelParams& p) {
    require(std::isfinite(p.g0) && p.g0 >= 0.0, "g0 must be finite and >= 0");
    require(std::isfinite(p.g1) && p.g1 >= 0.0, "g1 must be finite and >= 0");
    require(p.g0 + p.g1 > 0.0, "g0 + g1 must be positive");
    require(std::isfinite(p.snr) && p.snr >= 0.0, "snr must be finite and >= 0 (linear scale)");
}

DerivedQuantities derive(const ChannelParams& p) {
    validate(p);
    DerivedQuantities dq;
    dq.a = 1.0 + p.snr * (p.g0 + p.g1);
    dq.b = p.snr * std::sqrt(p.g0 * p.g1);
    // a^2 - 4 b^2 = 1 + 2 P (g0+g1) + P^2 (g0-g1)^2, evaluated in the form
    // that cannot cancel.
    double disc = 1.0 + 2.0 * p.snr * (p.g0 + p.g1) + p.snr * p.snr * (p.g0 - p.g1) * (p.g0 - p.g1);
    dq.r = 0.5 * (dq.a + std::sqrt(disc));
    dq.s = dq.b > 0.0 ? (dq.b * dq.b) / dq.r : 0.0;
    return dq;
}

DerivedQuantities derive_from_ab(double a, double b) {
    require(std::isfinite(a) && a >= 1.0, "a must be finite and >= 1");
    require(std::isfinite(b) && b >= 0.0, "b must be finite and >= 0");
    double disc = a * a - 4.0 * b * b;
    require(disc >= 1.0, "a^2 - 4 b^2 must be >= 1");
    DerivedQuantities dq;
    dq.a = a;
    dq.b = b;
    dq.r = 0.5 * (a + std::sqrt(disc));
    dq.s = b > 0.0 ? (b * b) / dq.r : 0.0;
    return dq;
}

ErasureProcess ErasureProcess::iid(double q) {
    require(is_prob(q), "erasure rate q must lie in [0, 1]");
    return ErasureProcess(IidErasure{q});
}

ErasureProcess ErasureProcess::markov(double q0, double q1) {
    require(is_prob(q0), "q0 must lie in [0, 1]");
    require(is_prob(q1), "q1 must lie in [0, 1]");
    return ErasureProcess(MarkovErasure{q0, q1});
}

double ErasureProcess::q() const {
    return std::get<IidErasure>(v_).q;
}

double ErasureProcess::q0() const {
    return std::get<MarkovErasure>(v_).q0;
}

double ErasureProcess::q1() const {
    return std::get<MarkovErasure>(v_).q1;
}

double ErasureProcess::stationary_erasure_rate() const {
    if (is_iid()) return q();
    const auto& m = std::get<MarkovErasure>(v_);
    double denom = 1.0 - m.q0 + m.q1;
    if (denom <= 0.0)
        throw degenerate_chain_error(
            "absorbing all-erased chain: 1 - q0 + q1 = 0 has no unique stationary law");
    return m.q1 / denom;
}

std::string ErasureProcess::describe() const {
    std::ostringstream os;
    if (is_iid())
        os << "iid(q=" << q() << ")";
    else
        os << "markov(q0=" << q0() << ", q1=" << q1() << ")";
    return os.str();
}

std::string to_string(RateKind k) {
    switch (k) {
        case RateKind::closed_form: return "closed_form";
        case RateKind::truncated_series: return "truncated_series";
        case RateKind::exact_enumeration: return "exact_enumeration";
        case RateKind::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

}  // namespace erk
