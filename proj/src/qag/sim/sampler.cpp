#include "qag/sim/sampler.hpp"

#include <algorithm>
#include <stdexcept>

#include "qag/util/rng.hpp"

namespace qag::sim {

namespace {

std::vector<double> cumulative_probs(const StateVector& s) {
    std::vector<double> cum(s.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        acc += std::norm(s.amp(i));
        cum[i] = acc;
    }
    return cum;
}

std::size_t sample_index(const std::vector<double>& cum, double u) {
    // u in [0,1); total probability is 1 within rounding.
    const double x = u * cum.back();
    const auto it = std::lower_bound(cum.begin(), cum.end(), x);
    return static_cast<std::size_t>(std::min<std::ptrdiff_t>(
        it - cum.begin(), static_cast<std::ptrdiff_t>(cum.size()) - 1));
}

}  // namespace

std::vector<long> sample_counts(const StateVector& state, long shots, const NoiseModel& noise,
                                std::span<const Gate> gates, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("sample_counts: shots must be >= 1");
    const int n = state.num_qubits();
    if (noise.num_qubits() != 0 && noise.num_qubits() != n)
        throw std::invalid_argument("sample_counts: noise model qubit count mismatch");

    // CX gate positions with a nonzero error are the only ones that can
    // branch a trajectory.
    struct CxSite {
        std::size_t gate_index;
        int control, target;
        double p;
    };
    std::vector<CxSite> sites;
    for (std::size_t gi = 0; gi < gates.size(); ++gi) {
        const Gate& g = gates[gi];
        if (g.kind != GateKind::CX) continue;
        const double p = noise.num_qubits() ? noise.cx_error(g.control, g.target) : 0.0;
        if (p > 0.0) sites.push_back({gi, g.control, g.target, p});
    }
    std::vector<int> noisy_readout;
    for (int q = 0; q < n; ++q)
        if (noise.num_qubits() && noise.readout_error(q) > 0.0) noisy_readout.push_back(q);

    const std::vector<double> clean_cum = cumulative_probs(state);

    util::Rng rng(seed);
    std::vector<long> counts0(static_cast<std::size_t>(n), 0);
    std::vector<std::pair<std::size_t, int>> injections;  // (gate index, pauli code 1..15)

    for (long shot = 0; shot < shots; ++shot) {
        injections.clear();
        for (const CxSite& site : sites)
            if (rng.uniform() < site.p)
                injections.emplace_back(site.gate_index, static_cast<int>(rng.uniform_int(15)) + 1);

        std::size_t idx;
        if (injections.empty()) {
            idx = sample_index(clean_cum, rng.uniform());
        } else {
            StateVector traj(n);
            std::size_t next_inj = 0;
            for (std::size_t gi = 0; gi < gates.size(); ++gi) {
                traj.apply(gates[gi]);
                while (next_inj < injections.size() && injections[next_inj].first == gi) {
                    const int code = injections[next_inj].second;
                    traj.apply_pauli(gates[gi].control, code >> 2);
                    traj.apply_pauli(gates[gi].target, code & 3);
                    ++next_inj;
                }
            }
            idx = sample_index(cumulative_probs(traj), rng.uniform());
        }

        std::size_t outcome = idx;
        for (int q : noisy_readout)
            if (rng.uniform() < noise.readout_error(q)) outcome ^= std::size_t{1} << q;

        for (int q = 0; q < n; ++q)
            if (!(outcome & (std::size_t{1} << q))) ++counts0[static_cast<std::size_t>(q)];
    }
    return counts0;
}

std::vector<long> sample_counts(const StateVector& state, long shots, std::uint64_t seed) {
    return sample_counts(state, shots, NoiseModel::zero(state.num_qubits()), {}, seed);
}

}  // namespace qag::sim
