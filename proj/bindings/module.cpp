// Python bindings for the erk core library. Thin wrappers only: every rate
// formula, oracle, and sampler lives in C++; this file just translates types.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <complex>
#include <cstdio>
#include <string>

#include "erk/analytic_rates.hpp"
#include "erk/cellular.hpp"
#include "erk/core_model.hpp"
#include "erk/matrix_oracle.hpp"

namespace py = pybind11;
using namespace erk;

namespace {

std::string fmt(const char* pattern, double a, double b, double c) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

py::array_t<std::complex<double>> matrix_to_numpy(const ComplexMatrix& m) {
    py::array_t<std::complex<double>> out(
        {static_cast<py::ssize_t>(m.rows), static_cast<py::ssize_t>(m.cols)});
    std::copy(m.data.begin(), m.data.end(), out.mutable_data());
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Achievable rates of the two-tap input-erasure Gaussian channel";
    m.attr("__version__") = "0.1.0";

    py::register_exception<degenerate_chain_error>(m, "DegenerateChainError", PyExc_ValueError);

    // --- core types -------------------------------------------------------

    py::class_<ChannelParams>(m, "ChannelParams",
                              "Squared tap gains g0, g1 and linear input power snr.")
        .def(py::init([](double g0, double g1, double snr) {
                 ChannelParams p{g0, g1, snr};
                 validate(p);
                 return p;
             }),
             py::arg("g0"), py::arg("g1"), py::arg("snr"))
        .def_readwrite("g0", &ChannelParams::g0)
        .def_readwrite("g1", &ChannelParams::g1)
        .def_readwrite("snr", &ChannelParams::snr)
        .def("__repr__", [](const ChannelParams& p) {
            return fmt("ChannelParams(g0=%g, g1=%g, snr=%g)", p.g0, p.g1, p.snr);
        });

    py::class_<DerivedQuantities>(m, "DerivedQuantities",
                                  "a = 1 + P(g0+g1), b = P*sqrt(g0*g1), and the roots r >= s "
                                  "of x^2 - a x + b^2.")
        .def_readonly("a", &DerivedQuantities::a)
        .def_readonly("b", &DerivedQuantities::b)
        .def_readonly("r", &DerivedQuantities::r)
        .def_readonly("s", &DerivedQuantities::s)
        .def("__repr__", [](const DerivedQuantities& d) {
            return fmt("DerivedQuantities(a=%g, b=%g, r=%g, ...)", d.a, d.b, d.r);
        });

    m.def("derive", &derive, py::arg("params"),
          "Scalars (a, b, r, s) used by every closed-form rate expression.");
    m.def("derive_from_ab", &derive_from_ab, py::arg("a"), py::arg("b"),
          "DerivedQuantities straight from (a, b); requires a >= 1 and a^2 - 4b^2 >= 1.");

    py::class_<SeriesConfig>(m, "SeriesConfig",
                             "Truncation policy: stop at max_terms or once the tail bound "
                             "drops below target_tail_bound.")
        .def(py::init([](int max_terms, double target_tail_bound) {
                 SeriesConfig c;
                 c.max_terms = max_terms;
                 c.target_tail_bound = target_tail_bound;
                 return c;
             }),
             py::arg("max_terms") = 200, py::arg("target_tail_bound") = 1e-12)
        .def_readwrite("max_terms", &SeriesConfig::max_terms)
        .def_readwrite("target_tail_bound", &SeriesConfig::target_tail_bound);

    py::enum_<RateKind>(m, "RateKind")
        .value("closed_form", RateKind::closed_form)
        .value("truncated_series", RateKind::truncated_series)
        .value("exact_enumeration", RateKind::exact_enumeration)
        .value("monte_carlo", RateKind::monte_carlo);

    py::class_<RateResult>(m, "RateResult",
                           "Rate in nats per channel use. error_bound is a deterministic "
                           "truncation bound for series results and a standard error for "
                           "Monte-Carlo ones.")
        .def_readonly("rate", &RateResult::rate)
        .def_readonly("error_bound", &RateResult::error_bound)
        .def_readonly("kind", &RateResult::kind)
        .def_readonly("meta", &RateResult::meta)
        .def("__repr__", [](const RateResult& r) {
            return "RateResult(rate=" + fmt("%.12g, error_bound=%.3g", r.rate, r.error_bound, 0) +
                   ", kind=" + to_string(r.kind) + ")";
        });

    py::class_<HighSnrCharacterization>(m, "HighSnrCharacterization",
                                        "High-SNR behaviour rate ~ s_inf * (log P - l_inf).")
        .def_readonly("s_inf", &HighSnrCharacterization::s_inf)
        .def_readonly("l_inf", &HighSnrCharacterization::l_inf)
        .def_readonly("l_inf_error_bound", &HighSnrCharacterization::l_inf_error_bound)
        .def_readonly("terms_used", &HighSnrCharacterization::terms_used)
        .def("__repr__", [](const HighSnrCharacterization& h) {
            return fmt("HighSnrCharacterization(s_inf=%g, l_inf=%.12g, ...)", h.s_inf, h.l_inf, 0);
        });

    py::class_<ErasureProcess>(m, "ErasureProcess",
                               "IID Bernoulli(q) erasures or a two-state Markov chain with "
                               "Pr(stay erased) = q0 and Pr(active -> erased) = q1.")
        .def_static("iid", &ErasureProcess::iid, py::arg("q"))
        .def_static("markov", &ErasureProcess::markov, py::arg("q0"), py::arg("q1"))
        .def_property_readonly("is_iid", &ErasureProcess::is_iid)
        .def_property_readonly("is_markov", &ErasureProcess::is_markov)
        .def_property_readonly("q", &ErasureProcess::q)
        .def_property_readonly("q0", &ErasureProcess::q0)
        .def_property_readonly("q1", &ErasureProcess::q1)
        .def("stationary_erasure_rate", &ErasureProcess::stationary_erasure_rate)
        .def("__repr__", &ErasureProcess::describe);

    // --- rate formulas ----------------------------------------------------

    m.def("log_block_det", &log_block_det, py::arg("n"), py::arg("dq"),
          "log det of the n x n tridiagonal matrix with diagonal a and off-diagonal b, "
          "i.e. log((r^{n+1} - s^{n+1})/(r - s)).");
    m.def("two_tap_rate_iid", &two_tap_rate_iid, py::arg("params"), py::arg("q"),
          py::arg("cfg") = SeriesConfig{},
          "Achievable rate with IID Gaussian inputs and IID erasure probability q.");
    m.def("one_tap_rate", &one_tap_rate, py::arg("g0"), py::arg("snr"), py::arg("q"),
          "Memoryless special case (1-q) log(1 + P g0).");
    m.def("erasure_free_upper_bound", &erasure_free_upper_bound, py::arg("params"),
          "log r: the q=0 capacity and an upper bound for every q.");
    m.def("high_snr_two_tap", &high_snr_two_tap, py::arg("g0"), py::arg("g1"), py::arg("q"),
          py::arg("cfg") = SeriesConfig{},
          "High-SNR pair (s_inf, l_inf) of the two-tap erasure channel.");
    m.def("markov_two_tap_rate", &markov_two_tap_rate, py::arg("params"), py::arg("q0"),
          py::arg("q1"), py::arg("cfg") = SeriesConfig{},
          "Two-tap rate under Markov erasures; markov(q, q) equals the IID rate.");
    m.def("run_length_pmf", &run_length_pmf, py::arg("process"), py::arg("n"),
          "Probability that a position starts an isolated run of exactly n non-erasures.");

    // --- matrix oracles and sampling --------------------------------------

    py::class_<FirFilter>(m, "FirFilter", "FIR filter with complex taps h_0..h_L.")
        .def(py::init([](std::vector<std::complex<double>> taps) {
                 FirFilter f{std::move(taps)};
                 validate(f);
                 return f;
             }),
             py::arg("taps"))
        .def_readwrite("taps", &FirFilter::taps)
        .def_property_readonly("memory", &FirFilter::memory)
        .def("__repr__", [](const FirFilter& f) {
            return "FirFilter(memory=" + std::to_string(f.memory()) + ")";
        });

    py::class_<ErasurePattern>(m, "ErasurePattern",
                               "Concrete 0/1 erasure realization (1 = symbol present).")
        .def(py::init([](std::vector<std::uint8_t> bits) {
                 for (auto b : bits)
                     if (b > 1) throw std::invalid_argument("pattern bits must be 0 or 1");
                 return ErasurePattern{std::move(bits)};
             }),
             py::arg("bits"))
        .def_readwrite("bits", &ErasurePattern::bits)
        .def("__len__", &ErasurePattern::size)
        .def("ones", &ErasurePattern::ones)
        .def("run_lengths", &ErasurePattern::run_lengths,
             "Lengths of maximal 1-runs, left to right.");

    py::class_<McConfig>(m, "McConfig")
        .def(py::init([](int block_size, int trials, std::uint64_t seed) {
                 McConfig c;
                 c.block_size = block_size;
                 c.trials = trials;
                 c.seed = seed;
                 validate(c);
                 return c;
             }),
             py::arg("block_size") = 200, py::arg("trials") = 50, py::arg("seed") = 0)
        .def_readwrite("block_size", &McConfig::block_size)
        .def_readwrite("trials", &McConfig::trials)
        .def_readwrite("seed", &McConfig::seed);

    m.def("dense_cap", &dense_cap,
          "Dense-path size guard (block size + filter memory); ERK_DENSE_CAP overrides.");
    m.def(
        "build_channel_matrix",
        [](const FirFilter& f, std::size_t n) { return matrix_to_numpy(build_channel_matrix(f, n)); },
        py::arg("filter"), py::arg("n"),
        "Banded Toeplitz transfer matrix, (n+L) x n, as a complex numpy array.");
    m.def("logdet_input_erasure", &logdet_input_erasure, py::arg("filter"), py::arg("pattern"),
          py::arg("snr"), "log det(I + P (HE)(HE)^dagger): erasures applied to the filter input.");
    m.def("logdet_output_erasure", &logdet_output_erasure, py::arg("filter"), py::arg("pattern"),
          py::arg("snr"), "Equivalent output-side form log det(I + P E^T H^dagger H E).");
    m.def("tridiag_logdet_recursive", &tridiag_logdet_recursive, py::arg("n"), py::arg("dq"),
          "log det(D_n) by the three-term determinant recursion.");
    m.def("tridiag_logdet_prefix", &tridiag_logdet_prefix, py::arg("n"), py::arg("dq"),
          "All of log det(D_1) .. log det(D_n) from one recursion sweep.");
    m.def("block_split_logdet", &block_split_logdet, py::arg("filter"), py::arg("pattern"),
          py::arg("snr"),
          "Two-tap fast path: sum of log det(D_len) over maximal 1-runs of the pattern.");
    m.def("exact_finite_rate", &exact_finite_rate, py::arg("filter"), py::arg("snr"),
          py::arg("process"), py::arg("n"),
          "Expectation of (1/N) log det over all 2^N erasure patterns; two-tap only, n <= 22.");
    m.def("sample_pattern", &sample_pattern, py::arg("process"), py::arg("n"), py::arg("seed"),
          py::arg("trial"),
          "Pattern for trial `trial` of master seed `seed`; streams are independent of trial "
          "count and order.");
    m.def("mc_trial_value", &mc_trial_value, py::arg("filter"), py::arg("snr"), py::arg("process"),
          py::arg("n"), py::arg("seed"), py::arg("trial"),
          "One Monte-Carlo trial value (1/N) log det.");
    m.def("monte_carlo_rate", &monte_carlo_rate, py::arg("filter"), py::arg("snr"),
          py::arg("process"), py::arg("cfg"),
          "Monte-Carlo mean of (1/N) log det with its standard error; deterministic per seed.");
    m.def("user_activity_throughput_mc", &user_activity_throughput_mc, py::arg("alpha"),
          py::arg("snr"), py::arg("q"), py::arg("cfg"),
          "Per-active-user throughput estimate; converges to the joint rate / (1-q).");

    // --- cellular uplink comparison ---------------------------------------

    py::class_<CellularParams>(m, "CellularParams",
                               "Soft-handoff uplink: inter-cell amplitude gain alpha "
                               "(given as alpha_sq), power snr, inactivity probability q.")
        .def(py::init([](double alpha_sq, double snr, double q) {
                 CellularParams p{alpha_sq, snr, q};
                 validate(p);
                 return p;
             }),
             py::arg("alpha_sq"), py::arg("snr"), py::arg("q"))
        .def_readwrite("alpha_sq", &CellularParams::alpha_sq)
        .def_readwrite("snr", &CellularParams::snr)
        .def_readwrite("q", &CellularParams::q)
        .def("__repr__", [](const CellularParams& p) {
            return fmt("CellularParams(alpha_sq=%g, snr=%g, q=%g)", p.alpha_sq, p.snr, p.q);
        });

    py::enum_<Scheme>(m, "Scheme")
        .value("mcp", Scheme::mcp)
        .value("scp", Scheme::scp)
        .value("icfs", Scheme::icfs);

    py::class_<SchemeComparison>(m, "SchemeComparison")
        .def_readonly("mcp", &SchemeComparison::mcp)
        .def_readonly("scp", &SchemeComparison::scp)
        .def_readonly("icfs", &SchemeComparison::icfs)
        .def_readonly("mcp_throughput", &SchemeComparison::mcp_throughput)
        .def_readonly("scp_throughput", &SchemeComparison::scp_throughput)
        .def_readonly("icfs_throughput", &SchemeComparison::icfs_throughput)
        .def_readonly("crossover_q", &SchemeComparison::crossover_q);

    m.def("scp_rate", &scp_rate, py::arg("params"),
          "Single-cell processing with interference treated as noise.");
    m.def("scp_rate_expectation_oracle", &scp_rate_expectation_oracle, py::arg("params"),
          "Four-outcome Bernoulli expectation form of scp_rate (cross-check).");
    m.def("icfs_rate", &icfs_rate, py::arg("params"),
          "Inter-cell frequency sharing: (1-q)/2 log(1+P).");
    m.def("mcp_rate", &mcp_rate, py::arg("params"), py::arg("cfg") = SeriesConfig{},
          "Multicell joint processing: the two-tap rate with g0 = 1, g1 = alpha_sq.");
    m.def("high_snr_triple", &high_snr_triple, py::arg("scheme"), py::arg("params"),
          py::arg("cfg") = SeriesConfig{}, "High-SNR (s_inf, l_inf) for one scheme.");
    m.def("compare_schemes", &compare_schemes, py::arg("params"), py::arg("cfg") = SeriesConfig{},
          "Rates of all three schemes plus the SCP/ICFS crossover when it exists.");
    m.def("user_activity_throughputs", &user_activity_throughputs, py::arg("params"),
          py::arg("cfg") = SeriesConfig{},
          "Per-active-user throughputs rate / (1-q); rejects q = 1.");
    m.def("scp_icfs_crossover", &scp_icfs_crossover, py::arg("alpha_sq"), py::arg("snr"),
          "Bisection root of icfs - scp over q in (0, 1) to 1e-6, or None.");
}
