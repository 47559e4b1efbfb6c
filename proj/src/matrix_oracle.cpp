#include "erk/matrix_oracle.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "erk/numeric_util.hpp"
#include "erk/rng.hpp"

namespace erk {

namespace {

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

ChannelParams gains_of(const FirFilter& f) {
    ChannelParams p;
    p.g0 = std::norm(f.taps[0]);
    p.g1 = std::norm(f.taps[1]);
    return p;
}

void require_two_tap(const FirFilter& f, const char* who) {
    if (f.memory() != 1)
        throw std::invalid_argument(std::string(who) + ": filter must have exactly two taps");
}

void check_dense_size(std::size_t n_total) {
    std::size_t cap = dense_cap();
    if (n_total > cap)
        throw std::invalid_argument("dense matrix size " + std::to_string(n_total) +
                                    " exceeds the cap " + std::to_string(cap) +
                                    " (override with ERK_DENSE_CAP)");
}

}  // namespace

void validate(const FirFilter& f) {
    if (f.taps.empty()) throw std::invalid_argument("filter needs at least one tap");
    bool any = false;
    for (const auto& t : f.taps) {
        if (!std::isfinite(t.real()) || !std::isfinite(t.imag()))
            throw std::invalid_argument("filter taps must be finite");
        if (t != std::complex<double>(0.0, 0.0)) any = true;
    }
    if (!any) throw std::invalid_argument("filter needs at least one nonzero tap");
}

void validate(const McConfig& cfg) {
    if (cfg.block_size < 1) throw std::invalid_argument("block_size must be >= 1");
    if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
}

std::size_t ErasurePattern::ones() const {
    std::size_t k = 0;
    for (auto b : bits) k += (b != 0);
    return k;
}

std::vector<std::int64_t> ErasurePattern::run_lengths() const {
    std::vector<std::int64_t> runs;
    std::int64_t len = 0;
    for (auto b : bits) {
        if (b) {
            ++len;
        } else if (len > 0) {
            runs.push_back(len);
            len = 0;
        }
    }
    if (len > 0) runs.push_back(len);
    return runs;
}

std::size_t dense_cap() {
    if (const char* env = std::getenv("ERK_DENSE_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<std::size_t>(v);
        throw std::invalid_argument("ERK_DENSE_CAP must be a positive integer");
    }
    return 4096;
}

ComplexMatrix build_channel_matrix(const FirFilter& filter, std::size_t n) {
    validate(filter);
    if (n < 1) throw std::invalid_argument("build_channel_matrix: n must be >= 1");
    std::size_t L = static_cast<std::size_t>(filter.memory());
    check_dense_size(n + L);
    ComplexMatrix h(n + L, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t d = 0; d <= L; ++d) h(j + d, j) = filter.taps[d];
    return h;
}

double logdet_hermitian_pd(ComplexMatrix a) {
    if (a.rows != a.cols) throw std::invalid_argument("logdet needs a square matrix");
    std::size_t n = a.rows;
    CompensatedSum logdet;
    // In-place lower Cholesky; only the lower triangle is ever touched.
    for (std::size_t k = 0; k < n; ++k) {
        double d = a(k, k).real();
        for (std::size_t j = 0; j < k; ++j) d -= std::norm(a(k, j));
        if (!(d > 0.0))
            throw std::runtime_error("logdet: nonpositive pivot at index " + std::to_string(k) +
                                     " (matrix not positive definite; internal bug)");
        logdet.add(std::log(d));
        double inv = 1.0 / std::sqrt(d);
        a(k, k) = inv;  // store reciprocal; the true diagonal is no longer needed
        for (std::size_t i = k + 1; i < n; ++i) {
            std::complex<double> v = a(i, k);
            for (std::size_t j = 0; j < k; ++j) v -= a(i, j) * std::conj(a(k, j));
            a(i, k) = v * inv;
        }
    }
    return logdet.value();
}

namespace {

// Columns of H with erased columns zeroed, i.e. B = H * E.
ComplexMatrix masked_channel(const FirFilter& filter, const ErasurePattern& pattern) {
    ComplexMatrix b = build_channel_matrix(filter, pattern.size());
    for (std::size_t j = 0; j < b.cols; ++j)
        if (!pattern.bits[j])
            for (std::size_t i = 0; i < b.rows; ++i) b(i, j) = 0.0;
    return b;
}

}  // namespace

double logdet_input_erasure(const FirFilter& filter, const ErasurePattern& pattern, double snr) {
    if (pattern.size() < 1) throw std::invalid_argument("pattern must be nonempty");
    if (!(std::isfinite(snr) && snr >= 0.0)) throw std::invalid_argument("snr must be >= 0");
    ComplexMatrix b = masked_channel(filter, pattern);
    std::size_t m = b.rows;
    ComplexMatrix g(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            std::complex<double> acc = 0.0;
            for (std::size_t k = 0; k < b.cols; ++k) acc += b(i, k) * std::conj(b(j, k));
            g(i, j) = snr * acc;
        }
        g(i, i) += 1.0;
    }
    return logdet_hermitian_pd(std::move(g));
}

double logdet_output_erasure(const FirFilter& filter, const ErasurePattern& pattern, double snr) {
    if (pattern.size() < 1) throw std::invalid_argument("pattern must be nonempty");
    if (!(std::isfinite(snr) && snr >= 0.0)) throw std::invalid_argument("snr must be >= 0");
    ComplexMatrix b = masked_channel(filter, pattern);
    std::size_t n = b.cols;
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            std::complex<double> acc = 0.0;
            for (std::size_t k = 0; k < b.rows; ++k) acc += std::conj(b(k, i)) * b(k, j);
            g(i, j) = snr * acc;
        }
        g(i, i) += 1.0;
    }
    return logdet_hermitian_pd(std::move(g));
}

std::vector<double> tridiag_logdet_prefix(std::int64_t n, const DerivedQuantities& dq) {
    if (n < 1) throw std::invalid_argument("tridiag logdet: n must be >= 1");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    double b2 = dq.b * dq.b;
    double t = dq.a;  // det(D_k)/det(D_{k-1})
    CompensatedSum acc;
    for (std::int64_t k = 1; k <= n; ++k) {
        if (k > 1) t = dq.a - b2 / t;
        if (!(t > 0.0))
            throw std::logic_error("tridiag recursion produced a nonpositive ratio");
        acc.add(std::log(t));
        out.push_back(acc.value());
    }
    return out;
}

double tridiag_logdet_recursive(std::int64_t n, const DerivedQuantities& dq) {
    if (n < 1) throw std::invalid_argument("tridiag logdet: n must be >= 1");
    double b2 = dq.b * dq.b;
    double t = dq.a;
    CompensatedSum acc;
    acc.add(std::log(t));
    for (std::int64_t k = 2; k <= n; ++k) {
        t = dq.a - b2 / t;
        if (!(t > 0.0))
            throw std::logic_error("tridiag recursion produced a nonpositive ratio");
        acc.add(std::log(t));
    }
    return acc.value();
}

double block_split_logdet(const FirFilter& filter, const ErasurePattern& pattern, double snr) {
    validate(filter);
    require_two_tap(filter, "block_split_logdet");
    if (!(std::isfinite(snr) && snr >= 0.0)) throw std::invalid_argument("snr must be >= 0");
    ChannelParams p = gains_of(filter);
    p.snr = snr;
    DerivedQuantities dq = derive(p);
    CompensatedSum acc;
    for (std::int64_t len : pattern.run_lengths()) acc.add(log_block_det(len, dq));
    return acc.value();
}

RateResult exact_finite_rate(const FirFilter& filter, double snr, const ErasureProcess& process,
                             int n) {
    validate(filter);
    require_two_tap(filter, "exact_finite_rate");
    if (!(std::isfinite(snr) && snr >= 0.0)) throw std::invalid_argument("snr must be >= 0");
    if (n < 1) throw std::invalid_argument("exact_finite_rate: n must be >= 1");
    if (n > 22)
        throw std::invalid_argument("exact_finite_rate enumerates 2^n patterns; n is limited to 22");

    ChannelParams p = gains_of(filter);
    p.snr = snr;
    DerivedQuantities dq = derive(p);

    std::vector<double> block_logdet(static_cast<std::size_t>(n) + 1, 0.0);
    for (int k = 1; k <= n; ++k) block_logdet[k] = log_block_det(k, dq);

    const std::uint32_t total = 1u << n;
    CompensatedSum acc;

    if (process.is_iid()) {
        double q = process.q();
        std::vector<double> pow_q(n + 1), pow_x(n + 1);
        pow_q[0] = pow_x[0] = 1.0;
        for (int k = 1; k <= n; ++k) {
            pow_q[k] = pow_q[k - 1] * q;
            pow_x[k] = pow_x[k - 1] * (1.0 - q);
        }
        for (std::uint32_t mask = 0; mask < total; ++mask) {
            int ones = std::popcount(mask);
            double weight = pow_q[n - ones] * pow_x[ones];
            if (weight == 0.0) continue;
            double ld = 0.0;
            std::uint32_t m = mask;
            while (m) {
                m >>= std::countr_zero(m);
                int len = std::countr_one(m);
                ld += block_logdet[len];
                m >>= len;
            }
            acc.add(weight * ld);
        }
    } else {
        double pi1 = 1.0 - process.stationary_erasure_rate();  // throws when degenerate
        double q0 = process.q0();
        double q1 = process.q1();
        for (std::uint32_t mask = 0; mask < total; ++mask) {
            int prev = mask & 1u;
            double weight = prev ? pi1 : 1.0 - pi1;
            for (int i = 1; i < n && weight > 0.0; ++i) {
                int bit = (mask >> i) & 1u;
                weight *= prev ? (bit ? 1.0 - q1 : q1) : (bit ? 1.0 - q0 : q0);
                prev = bit;
            }
            if (weight == 0.0) continue;
            double ld = 0.0;
            std::uint32_t m = mask;
            while (m) {
                m >>= std::countr_zero(m);
                int len = std::countr_one(m);
                ld += block_logdet[len];
                m >>= len;
            }
            acc.add(weight * ld);
        }
    }

    RateResult res;
    res.rate = acc.value() / n;
    res.error_bound = 0.0;
    res.kind = RateKind::exact_enumeration;
    res.meta["block_size"] = std::to_string(n);
    res.meta["patterns"] = std::to_string(total);
    res.meta["process"] = process.describe();
    return res;
}

ErasurePattern sample_pattern(const ErasureProcess& process, int n, std::uint64_t seed,
                              std::uint64_t trial) {
    if (n < 1) throw std::invalid_argument("pattern length must be >= 1");
    ErasurePattern pat;
    pat.bits.resize(static_cast<std::size_t>(n));
    std::mt19937_64 eng = make_stream(seed, trial);
    if (process.is_iid()) {
        double q = process.q();
        for (int i = 0; i < n; ++i) pat.bits[i] = u01(eng) >= q ? 1 : 0;
    } else {
        // First bit from the stationary law, then the chain; with q0 == q1 == q
        // every draw uses threshold q, so the stream matches IID(q) bit for bit.
        double p_erase = process.stationary_erasure_rate();  // throws when degenerate
        double q0 = process.q0();
        double q1 = process.q1();
        for (int i = 0; i < n; ++i) {
            bool active = u01(eng) >= p_erase;
            pat.bits[i] = active ? 1 : 0;
            p_erase = active ? q1 : q0;
        }
    }
    return pat;
}

double mc_trial_value(const FirFilter& filter, double snr, const ErasureProcess& process, int n,
                      std::uint64_t seed, std::uint64_t trial) {
    ErasurePattern pat = sample_pattern(process, n, seed, trial);
    double ld = filter.memory() == 1 ? block_split_logdet(filter, pat, snr)
                                     : logdet_output_erasure(filter, pat, snr);
    return ld / n;
}

namespace {

RateResult summarize_trials(const std::vector<double>& values) {
    CompensatedSum sum;
    for (double v : values) sum.add(v);
    double mean = sum.value() / static_cast<double>(values.size());
    double stderr_ = 0.0;
    if (values.size() > 1) {
        CompensatedSum ss;
        for (double v : values) ss.add((v - mean) * (v - mean));
        double var = ss.value() / static_cast<double>(values.size() - 1);
        stderr_ = std::sqrt(std::max(var, 0.0) / static_cast<double>(values.size()));
    }
    RateResult res;
    res.rate = mean;
    res.error_bound = stderr_;
    res.kind = RateKind::monte_carlo;
    return res;
}

}  // namespace

RateResult monte_carlo_rate(const FirFilter& filter, double snr, const ErasureProcess& process,
                            const McConfig& cfg) {
    validate(filter);
    validate(cfg);
    if (!(std::isfinite(snr) && snr >= 0.0)) throw std::invalid_argument("snr must be >= 0");
    if (process.is_markov()) process.stationary_erasure_rate();  // reject degenerate chains early
    bool fast = filter.memory() == 1;
    if (!fast) check_dense_size(static_cast<std::size_t>(cfg.block_size) + filter.memory());

    std::vector<double> values(static_cast<std::size_t>(cfg.trials));
    for (int t = 0; t < cfg.trials; ++t)
        values[static_cast<std::size_t>(t)] =
            mc_trial_value(filter, snr, process, cfg.block_size, cfg.seed, t);

    RateResult res = summarize_trials(values);
    res.meta["block_size"] = std::to_string(cfg.block_size);
    res.meta["trials"] = std::to_string(cfg.trials);
    res.meta["seed"] = std::to_string(cfg.seed);
    res.meta["process"] = process.describe();
    res.meta["path"] = fast ? "block_split" : "dense";
    if (cfg.trials == 1) res.meta["note"] = "single trial: standard error unavailable, reported 0";
    return res;
}

RateResult user_activity_throughput_mc(double alpha, double snr, double q, const McConfig& cfg) {
    if (!(std::isfinite(alpha) && alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("alpha must lie in [0, 1]");
    if (!(std::isfinite(snr) && snr >= 0.0)) throw std::invalid_argument("snr must be >= 0");
    if (!(std::isfinite(q) && q >= 0.0 && q <= 1.0)) throw std::invalid_argument("q must lie in [0, 1]");
    validate(cfg);

    RateResult res;
    if (q == 1.0) {
        res.kind = RateKind::monte_carlo;
        res.meta["warning"] = "q=1: no user is ever active; throughput defined as 0";
        res.meta["trials"] = std::to_string(cfg.trials);
        res.meta["seed"] = std::to_string(cfg.seed);
        return res;
    }

    FirFilter filter{{1.0, alpha}};
    ErasureProcess process = ErasureProcess::iid(q);
    std::vector<double> values(static_cast<std::size_t>(cfg.trials));
    for (int t = 0; t < cfg.trials; ++t) {
        ErasurePattern pat = sample_pattern(process, cfg.block_size, cfg.seed, t);
        std::size_t active = pat.ones();
        values[static_cast<std::size_t>(t)] =
            active == 0 ? 0.0
                        : block_split_logdet(filter, pat, snr) / static_cast<double>(active);
    }
    res = summarize_trials(values);
    res.meta["block_size"] = std::to_string(cfg.block_size);
    res.meta["trials"] = std::to_string(cfg.trials);
    res.meta["seed"] = std::to_string(cfg.seed);
    res.meta["alpha"] = fmt_num(alpha);
    res.meta["q"] = fmt_num(q);
    return res;
}

}  // namespace erk
