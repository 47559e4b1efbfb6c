#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "erk/analytic_rates.hpp"
#include "erk/core_model.hpp"

namespace erk {

// FIR filter h_0..h_L with complex taps; the oracles work with the full
// complex model even though rates only depend on tap magnitudes.
struct FirFilter {
    std::vector<std::complex<double>> taps;

    int memory() const { return static_cast<int>(taps.size()) - 1; }
};

void validate(const FirFilter& f);  // nonempty, finite, at least one nonzero tap

// Concrete 0/1 erasure realization (1 = symbol present).
struct ErasurePattern {
    std::vector<std::uint8_t> bits;

    std::size_t size() const { return bits.size(); }
    std::size_t ones() const;
    // Lengths of maximal 1-runs, left to right.
    std::vector<std::int64_t> run_lengths() const;
};

struct McConfig {
    int block_size = 200;
    int trials = 50;
    std::uint64_t seed = 0;
};

void validate(const McConfig& cfg);

// Dense-path size guard (block size + filter memory); default 4096,
// overridable via the ERK_DENSE_CAP environment variable.
std::size_t dense_cap();

// Minimal row-major complex matrix; all the oracle needs.
struct ComplexMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::complex<double>> data;

    ComplexMatrix() = default;
    ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
    std::complex<double>& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const std::complex<double>& operator()(std::size_t i, std::size_t j) const {
        return data[i * cols + j];
    }
};

// Banded Toeplitz transfer matrix, (n+L) x n, entry (i, j) = h_{i-j} for
// 0 <= i-j <= L and 0 otherwise.
ComplexMatrix build_channel_matrix(const FirFilter& filter, std::size_t n);

// log det of a Hermitian positive-definite matrix via in-place Cholesky.
// Throws std::runtime_error on a nonpositive pivot (an internal bug for the
// I + PSD matrices assembled here).
double logdet_hermitian_pd(ComplexMatrix a);

// log det(I_{N+L} + P (HE)(HE)^dagger): erasures applied to the filter input.
double logdet_input_erasure(const FirFilter& filter, const ErasurePattern& pattern, double snr);

// log det(I_N + P E^T H^dagger H E): the N x N output form; equal to the
// input form for every pattern.
double logdet_output_erasure(const FirFilter& filter, const ErasurePattern& pattern, double snr);

// log det(D_n) by the three-term determinant recursion run on normalized
// ratios t_1 = a, t_k = a - b^2 / t_{k-1} (each t_k >= r - s >= 1).
double tridiag_logdet_recursive(std::int64_t n, const DerivedQuantities& dq);

// All prefix values log det(D_1) .. log det(D_n) from one recursion sweep;
// prefix[k-1] == tridiag_logdet_recursive(k).
std::vector<double> tridiag_logdet_prefix(std::int64_t n, const DerivedQuantities& dq);

// Two-tap fast path: split the pattern into maximal 1-runs and sum
// log det(D_len) over runs. Exactly equals the dense log-dets above.
// Rejects filters with memory != 1.
double block_split_logdet(const FirFilter& filter, const ErasurePattern& pattern, double snr);

// Exhaustive-enumeration expectation E[(1/N) log det] over all 2^N patterns
// weighted by their exact process probabilities (stationary likelihood for
// Markov). Two-tap filters only; n <= 22.
RateResult exact_finite_rate(const FirFilter& filter, double snr, const ErasureProcess& process,
                             int n);

// Pattern for trial `trial` of master seed `seed`; Markov chains start from
// their stationary law. Trial streams are independent of trial count and
// order.
ErasurePattern sample_pattern(const ErasureProcess& process, int n, std::uint64_t seed,
                              std::uint64_t trial);

// One Monte-Carlo trial value (1/N) log det for the given (seed, trial) pair.
double mc_trial_value(const FirFilter& filter, double snr, const ErasureProcess& process, int n,
                      std::uint64_t seed, std::uint64_t trial);

// Monte-Carlo mean of (1/N) log det with the sample standard error as
// error_bound; block-split fast path for two-tap filters, dense otherwise.
// Deterministic for a fixed seed.
RateResult monte_carlo_rate(const FirFilter& filter, double snr, const ErasureProcess& process,
                            const McConfig& cfg);

// Per-active-user throughput MC for the cellular two-tap filter [1, alpha]:
// log det divided by the realized active count (all-silent blocks contribute
// 0). Converges to the joint-processing rate / (1-q).
RateResult user_activity_throughput_mc(double alpha, double snr, double q, const McConfig& cfg);

}  // namespace erk
