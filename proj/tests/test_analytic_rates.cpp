#include <doctest.h>

#include <cmath>
#include <random>

#include "erk/analytic_rates.hpp"
#include "erk/matrix_oracle.hpp"
#include "erk/rng.hpp"

using namespace erk;

namespace {
const SeriesConfig kDeep{20000, 1e-13};
}

TEST_CASE("log_block_det small-n closed forms") {
    auto dq = derive({0.8, 0.2, 10.0});  // a=11, b=4
    CHECK(log_block_det(1, dq) == doctest::Approx(std::log(11.0)).epsilon(1e-14));
    CHECK(log_block_det(2, dq) == doctest::Approx(std::log(121.0 - 16.0)).epsilon(1e-14));
    CHECK_THROWS_AS(log_block_det(0, dq), std::invalid_argument);
}

TEST_CASE("log_block_det agrees with the determinant recursion") {
    auto dq = derive({0.8, 0.2, 10.0});
    for (std::int64_t n : {1, 2, 3, 5, 17, 100, 999}) {
        double closed = log_block_det(n, dq);
        double recursive = tridiag_logdet_recursive(n, dq);
        CHECK(std::abs(closed - recursive) <= 1e-10 * std::abs(recursive));
    }
}

TEST_CASE("log_block_det stays finite and increasing up to n = 1e6") {
    auto dq = derive_from_ab(11.0, 4.0);
    double prev = 0.0;
    for (std::int64_t n = 1; n <= 1000000; n = (n < 100 ? n + 1 : n * 7 / 5)) {
        double v = log_block_det(n, dq);
        CHECK(std::isfinite(v));
        CHECK(v > prev);
        prev = v;
    }
    // dense check over a contiguous stretch
    prev = log_block_det(999900, dq);
    for (std::int64_t n = 999901; n <= 1000000; ++n) {
        double v = log_block_det(n, dq);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("two_tap_rate_iid memoryless reduction matches the closed form") {
    for (double q : {0.0, 0.2, 0.5, 0.95}) {
        auto res = two_tap_rate_iid({0.8, 0.0, 10.0}, q, kDeep);
        double closed = one_tap_rate(0.8, 10.0, q);
        CHECK(std::abs(res.rate - closed) <= 1e-12 + res.error_bound);
    }
}

TEST_CASE("two_tap_rate_iid edge cases") {
    auto all_erased = two_tap_rate_iid({0.8, 0.2, 10.0}, 1.0);
    CHECK(all_erased.rate == 0.0);
    CHECK(all_erased.kind == RateKind::closed_form);

    auto never_erased = two_tap_rate_iid({0.8, 0.2, 10.0}, 0.0);
    CHECK(never_erased.rate == doctest::Approx(2.22731368313133635732394943904).epsilon(1e-14));
    CHECK(never_erased.rate == erasure_free_upper_bound({0.8, 0.2, 10.0}));

    CHECK_THROWS_AS(two_tap_rate_iid({0.8, 0.2, 10.0}, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(two_tap_rate_iid({0.8, 0.2, 10.0}, 0.5, SeriesConfig{0, 1e-12}),
                    std::invalid_argument);
}

TEST_CASE("two_tap_rate_iid frozen reference value") {
    auto res = two_tap_rate_iid({0.8, 0.2, 10.0}, 0.2, kDeep);
    CHECK(res.rate == doctest::Approx(1.81345636932782607657970786269).epsilon(1e-13));
    CHECK(res.error_bound <= 1e-13);
}

TEST_CASE("truncation soundness: rate(M) <= rate(2M) <= rate(M) + bound(M)") {
    ChannelParams p{0.8, 0.2, 10.0};
    for (double q : {0.1, 0.3, 0.7}) {
        for (int m : {5, 10, 20, 40, 80}) {
            auto lo = two_tap_rate_iid(p, q, SeriesConfig{m, 0.0});
            auto hi = two_tap_rate_iid(p, q, SeriesConfig{2 * m, 0.0});
            CHECK(lo.rate <= hi.rate + 1e-15);
            CHECK(hi.rate <= lo.rate + lo.error_bound + 1e-15);
        }
    }
}

TEST_CASE("series value is bracketed by [rate, rate + error_bound]") {
    ChannelParams p{1.0, 1.0, 1.0};
    auto truth = two_tap_rate_iid(p, 0.5, SeriesConfig{100000, 0.0});
    for (int m : {1, 3, 10, 30}) {
        auto cut = two_tap_rate_iid(p, 0.5, SeriesConfig{m, 0.0});
        CHECK(cut.rate <= truth.rate + 1e-15);
        CHECK(truth.rate <= cut.rate + cut.error_bound + 1e-15);
    }
}

TEST_CASE("rate is nonincreasing in q and nondecreasing in snr") {
    ChannelParams p{0.8, 0.2, 10.0};
    double prev = erasure_free_upper_bound(p) + 1e-9;
    for (int i = 0; i <= 20; ++i) {
        double q = i / 20.0;
        double v = two_tap_rate_iid(p, q, kDeep).rate;
        CHECK(v <= prev + 1e-12);
        prev = v;
    }
    prev = -1.0;
    for (double snr : {0.0, 0.5, 1.0, 5.0, 10.0, 100.0, 1000.0}) {
        double v = two_tap_rate_iid({0.8, 0.2, snr}, 0.3, kDeep).rate;
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
}

TEST_CASE("bound sandwich: 0 <= rate <= min(log r, (1-q^2) log r)") {
    // The term-wise bound log det(D_n) <= (n+1) log r sums to (1-q^2) log r.
    std::mt19937_64 eng(777);
    for (int i = 0; i < 200; ++i) {
        ChannelParams p{u01(eng) * 2.0, u01(eng) * 2.0, u01(eng) * 100.0};
        if (p.g0 + p.g1 == 0.0) p.g0 = 1.0;
        double q = u01(eng);
        double rate = two_tap_rate_iid(p, q, kDeep).rate;
        double ub = erasure_free_upper_bound(p);
        CHECK(rate >= 0.0);
        CHECK(rate <= ub + 1e-12);
        CHECK(rate <= (1.0 - q * q) * ub + 1e-12);
    }
}

TEST_CASE("one_tap_rate values") {
    CHECK(one_tap_rate(1.0, 0.0, 0.3) == 0.0);
    CHECK(one_tap_rate(1.0, std::exp(1.0) - 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(one_tap_rate(0.8, 10.0, 0.2) ==
          doctest::Approx(1.75777966186897550623239237908).epsilon(1e-15));
}

TEST_CASE("erasure_free_upper_bound values") {
    CHECK(erasure_free_upper_bound({0.8, 0.2, 10.0}) ==
          doctest::Approx(2.22731368313133635732394943904).epsilon(1e-14));
    CHECK(erasure_free_upper_bound({0.8, 0.2, 0.0}) == 0.0);
    CHECK(erasure_free_upper_bound({0.7, 0.0, 10.0}) ==
          doctest::Approx(std::log(8.0)).epsilon(1e-14));
}

TEST_CASE("high_snr_two_tap: slope is 1-q and q=1 keeps only the first term") {
    auto hc = high_snr_two_tap(0.8, 0.2, 0.25, kDeep);
    CHECK(hc.s_inf == 0.75);
    auto at1 = high_snr_two_tap(0.8, 0.2, 1.0, kDeep);
    CHECK(at1.s_inf == 0.0);
    CHECK(at1.l_inf == doctest::Approx(-std::log(1.0)).epsilon(1e-14));  // unit gain: 0
    auto at1b = high_snr_two_tap(1.0, 0.5, 1.0, kDeep);
    CHECK(at1b.l_inf == doctest::Approx(-std::log(1.5)).epsilon(1e-14));
}

TEST_CASE("high_snr_two_tap: g1=0 collapses to -log g0 for every q") {
    const double expected = 0.22314355131420975576629509031;  // -log(0.8)
    for (double q : {0.1, 0.4, 0.8}) {
        auto hc = high_snr_two_tap(0.8, 0.0, q, kDeep);
        CHECK(std::abs(hc.l_inf - expected) <= 1e-11 + hc.l_inf_error_bound);
    }
    auto q0 = high_snr_two_tap(0.8, 0.0, 0.0, kDeep);
    CHECK(q0.l_inf == doctest::Approx(-std::log(0.8)).epsilon(1e-14));
}

TEST_CASE("high_snr_two_tap: equal gains use the (n+1) g^n limit") {
    auto hc = high_snr_two_tap(0.5, 0.5, 0.5, kDeep);
    // direct series with the limit terms
    double acc = 0.0;
    for (int n = 1; n <= 200; ++n)
        acc += 0.25 * std::pow(0.5, n - 1) * (std::log(n + 1.0) + n * std::log(0.5));
    CHECK(hc.l_inf == doctest::Approx(-acc).epsilon(1e-10));
}

TEST_CASE("high-SNR offset is consistent with the rate series at large P") {
    // rate(P) ~ (1-q) (log P - l_inf); compare at P = 1e8 with slope-corrected
    // tolerance.
    double q = 0.3, g0 = 0.8, g1 = 0.2;
    auto hc = high_snr_two_tap(g0, g1, q, kDeep);
    double P = 1e8;
    double rate = two_tap_rate_iid({g0, g1, P}, q, kDeep).rate;
    double approx = (1.0 - q) * (std::log(P) - hc.l_inf);
    CHECK(std::abs(rate - approx) <= 2e-4 * std::abs(rate));
}

TEST_CASE("markov_two_tap_rate reduces to the iid rate at q0=q1") {
    ChannelParams p{0.8, 0.2, 10.0};
    for (double q : {0.1, 0.3, 0.6, 0.9}) {
        double mk = markov_two_tap_rate(p, q, q, kDeep).rate;
        double id = two_tap_rate_iid(p, q, kDeep).rate;
        CHECK(std::abs(mk - id) <= 1e-12);
    }
}

TEST_CASE("markov_two_tap_rate: g1=0 gives the scaled memoryless capacity") {
    for (auto [q0, q1] : {std::pair{0.2, 0.3}, {0.5, 0.7}, {0.0, 0.4}}) {
        double rate = markov_two_tap_rate({0.8, 0.0, 10.0}, q0, q1, kDeep).rate;
        double qbar = q1 / (1.0 - q0 + q1);
        CHECK(std::abs(rate - (1.0 - qbar) * std::log1p(10.0 * 0.8)) <= 1e-12);
    }
}

TEST_CASE("markov_two_tap_rate edge chains") {
    ChannelParams p{0.8, 0.2, 10.0};
    // q1=1, q0=0: only isolated non-erasures survive; rate = log(a)/2.
    CHECK(markov_two_tap_rate(p, 0.0, 1.0, kDeep).rate ==
          doctest::Approx(1.19894763639918527203097178898).epsilon(1e-13));
    // q1=0: erasures die out.
    CHECK(markov_two_tap_rate(p, 0.3, 0.0, kDeep).rate ==
          doctest::Approx(erasure_free_upper_bound(p)).epsilon(1e-14));
    // q0=1 with q1>0: everything is erased in steady state.
    CHECK(markov_two_tap_rate(p, 1.0, 0.5, kDeep).rate == 0.0);
    CHECK_THROWS_AS(markov_two_tap_rate(p, 1.0, 0.0, kDeep), degenerate_chain_error);
}

TEST_CASE("run_length_pmf closed forms") {
    CHECK(run_length_pmf(ErasureProcess::iid(0.5), 2) == doctest::Approx(0.0625).epsilon(1e-15));
    for (int n : {1, 2, 5}) {
        double mk = run_length_pmf(ErasureProcess::markov(0.3, 0.3), n);
        double id = run_length_pmf(ErasureProcess::iid(0.3), n);
        CHECK(mk == doctest::Approx(id).epsilon(1e-14));
    }
    CHECK_THROWS_AS(run_length_pmf(ErasureProcess::iid(0.5), 0), std::invalid_argument);
    CHECK_THROWS_AS(run_length_pmf(ErasureProcess::markov(1.0, 0.0), 1), degenerate_chain_error);
}

TEST_CASE("run-start density sums to at most one") {
    // sum_n pmf(n) (n+1) = 1 - q^2 for IID and (1-q0)(1+q1)/(1-q0+q1) for Markov.
    for (double q : {0.1, 0.5, 0.9}) {
        double acc = 0.0;
        for (int n = 1; n <= 4000; ++n) acc += run_length_pmf(ErasureProcess::iid(q), n) * (n + 1);
        CHECK(acc <= 1.0 + 1e-9);
        CHECK(acc == doctest::Approx(1.0 - q * q).epsilon(1e-6));
    }
    for (auto [q0, q1] : {std::pair{0.2, 0.3}, {0.7, 0.4}}) {
        double acc = 0.0;
        for (int n = 1; n <= 4000; ++n)
            acc += run_length_pmf(ErasureProcess::markov(q0, q1), n) * (n + 1);
        CHECK(acc <= 1.0 + 1e-9);
    }
}

TEST_CASE("empirical interior run-start frequencies match the pmf") {
    const int n = 1000000;
    const double q = 0.3;
    auto pat = sample_pattern(ErasureProcess::iid(q), n, 2024, 0);
    // count maximal runs delimited by zeros on both sides
    std::vector<std::int64_t> counts(8, 0);
    int len = 0;
    bool open_left = true;  // run touching the left boundary
    for (int i = 0; i < n; ++i) {
        if (pat.bits[i]) {
            ++len;
        } else {
            if (len > 0 && !open_left && len < static_cast<int>(counts.size())) ++counts[len];
            len = 0;
            open_left = false;
        }
    }
    for (int k = 1; k <= 5; ++k) {
        double expected = (n - k - 1.0) * run_length_pmf(ErasureProcess::iid(q), k);
        double sigma = std::sqrt(expected);
        CHECK(std::abs(counts[k] - expected) <= 3.0 * sigma + 1.0);
    }
}
