#include "qag/metrics/circuit_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qag/sim/state_vector.hpp"
#include "qag/util/rng.hpp"
#include "qag/util/stats.hpp"
#include "qag/util/threads.hpp"

namespace qag::metrics {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr int kJackknifeBlocks = 10;

std::vector<double> random_params(int n, util::Rng& rng) {
    std::vector<double> p(static_cast<std::size_t>(n));
    for (double& x : p) x = rng.uniform(0.0, kTwoPi);
    return p;
}

/// KL(P || Q) of a fidelity histogram against the Haar bin masses.
/// Empty observed bins get the small-count regularizer 1e-9 before
/// normalization; Haar masses that underflow are floored.
double kl_vs_haar(const std::vector<double>& counts, double n_total, int n_qubits) {
    const auto n_bins = counts.size();
    const double dim = std::pow(2.0, n_qubits);
    double kl = 0.0;
    double norm = 0.0;
    std::vector<double> p(n_bins);
    for (std::size_t b = 0; b < n_bins; ++b) {
        p[b] = counts[b] > 0.0 ? counts[b] / n_total : 1e-9;
        norm += p[b];
    }
    for (std::size_t b = 0; b < n_bins; ++b) {
        const double lo = static_cast<double>(b) / static_cast<double>(n_bins);
        const double hi = static_cast<double>(b + 1) / static_cast<double>(n_bins);
        const double q = std::max(std::pow(1.0 - lo, dim - 1.0) - std::pow(1.0 - hi, dim - 1.0),
                                  1e-300);
        const double pb = p[b] / norm;
        kl += pb * std::log(pb / q);
    }
    return kl;
}

}  // namespace

MetricEstimate expressibility_score(const circuits::CircuitSpec& circuit, int n_pairs, int n_bins,
                                    std::uint64_t seed) {
    if (n_pairs < 1000) throw std::invalid_argument("expressibility_score: need n_pairs >= 1000");
    if (n_bins < 10) throw std::invalid_argument("expressibility_score: need n_bins >= 10");

    util::Rng rng(seed);
    // Per-block histograms enable a jackknife error estimate without
    // re-simulating.
    std::vector<std::vector<double>> block_counts(
        kJackknifeBlocks, std::vector<double>(static_cast<std::size_t>(n_bins), 0.0));
    std::vector<double> block_totals(kJackknifeBlocks, 0.0);

    for (int i = 0; i < n_pairs; ++i) {
        const auto p1 = random_params(circuit.n_params, rng);
        const auto p2 = random_params(circuit.n_params, rng);
        const auto s1 = circuits::run_circuit(circuit, p1);
        const auto s2 = circuits::run_circuit(circuit, p2);
        const double fid = std::norm(s1.inner_product(s2));
        auto bin = static_cast<long>(std::floor(fid * n_bins));
        bin = std::clamp<long>(bin, 0, n_bins - 1);
        const int block = i % kJackknifeBlocks;
        block_counts[static_cast<std::size_t>(block)][static_cast<std::size_t>(bin)] += 1.0;
        block_totals[static_cast<std::size_t>(block)] += 1.0;
    }

    std::vector<double> total(static_cast<std::size_t>(n_bins), 0.0);
    for (const auto& bc : block_counts)
        for (std::size_t b = 0; b < total.size(); ++b) total[b] += bc[b];

    MetricEstimate est;
    est.value = 1.0 - kl_vs_haar(total, static_cast<double>(n_pairs), circuit.n_qubits);

    std::vector<double> leave_out(kJackknifeBlocks, 0.0);
    std::vector<double> reduced(static_cast<std::size_t>(n_bins));
    for (int k = 0; k < kJackknifeBlocks; ++k) {
        for (std::size_t b = 0; b < reduced.size(); ++b)
            reduced[b] = total[b] - block_counts[static_cast<std::size_t>(k)][b];
        leave_out[static_cast<std::size_t>(k)] =
            1.0 - kl_vs_haar(reduced, static_cast<double>(n_pairs) -
                                          block_totals[static_cast<std::size_t>(k)],
                             circuit.n_qubits);
    }
    const double m = util::mean(leave_out);
    double var = 0.0;
    for (double v : leave_out) var += (v - m) * (v - m);
    const double g = static_cast<double>(kJackknifeBlocks);
    est.std_error = std::sqrt((g - 1.0) / g * var);
    return est;
}

MetricEstimate entanglement_capability(const circuits::CircuitSpec& circuit, int n_samples,
                                       std::uint64_t seed) {
    if (n_samples < 1000)
        throw std::invalid_argument("entanglement_capability: need n_samples >= 1000");
    util::Rng rng(seed);
    std::vector<double> q_values(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        const auto p = random_params(circuit.n_params, rng);
        const auto s = circuits::run_circuit(circuit, p);
        double purity_sum = 0.0;
        for (int k = 0; k < circuit.n_qubits; ++k) purity_sum += s.qubit_purity(k);
        q_values[static_cast<std::size_t>(i)] =
            2.0 * (1.0 - purity_sum / static_cast<double>(circuit.n_qubits));
    }
    MetricEstimate est;
    est.value = util::mean(q_values);
    est.std_error = util::stddev(q_values) / std::sqrt(static_cast<double>(n_samples));
    return est;
}

std::vector<CircuitReport> full_report(const ReportConfig& cfg) {
    const auto& names = circuits::architecture_names();
    std::vector<CircuitReport> rows(names.size());
    util::parallel_for(names.size(), cfg.threads, [&](std::size_t i) {
        const auto spec = circuits::build_architecture(names[i], cfg.n_qubits);
        CircuitReport row;
        row.name = names[i];
        row.n_params = spec.n_params;
        if (cfg.with_metrics) {
            row.expressibility =
                expressibility_score(spec, cfg.n_pairs, cfg.n_bins, util::derive_seed(cfg.seed, 2 * i));
            row.entanglement =
                entanglement_capability(spec, cfg.n_samples, util::derive_seed(cfg.seed, 2 * i + 1));
        }
        rows[i] = std::move(row);
    });
    return rows;
}

}  // namespace qag::metrics
