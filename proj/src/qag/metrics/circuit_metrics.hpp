#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qag/circuits/architectures.hpp"

namespace qag::metrics {

struct MetricEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Expressibility score 1 - KL(P_hat || P_Haar) where P_hat is the
/// fidelity histogram of `n_pairs` uniformly sampled parameter pairs and
/// P_Haar(F) = (N-1)(1-F)^(N-2) with N = 2^n. Closer to 1 is better;
/// degenerate circuits go strongly negative. The standard error is a
/// jackknife estimate over sample blocks.
MetricEstimate expressibility_score(const circuits::CircuitSpec& circuit, int n_pairs, int n_bins,
                                    std::uint64_t seed);

/// Mean Meyer-Wallach entanglement Q = 2 (1 - mean_k Tr rho_k^2) over
/// sampled parameter vectors; in [0, 1].
MetricEstimate entanglement_capability(const circuits::CircuitSpec& circuit, int n_samples,
                                       std::uint64_t seed);

struct CircuitReport {
    std::string name;
    int n_params = 0;
    MetricEstimate expressibility;
    MetricEstimate entanglement;
};

struct ReportConfig {
    int n_qubits = 8;
    bool with_metrics = false;
    int n_pairs = 5000;
    int n_samples = 5000;
    int n_bins = 75;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

/// One row per architecture, in the canonical order.
std::vector<CircuitReport> full_report(const ReportConfig& cfg);

}  // namespace qag::metrics
