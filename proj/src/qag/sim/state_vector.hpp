#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qag/sim/gate.hpp"

namespace qag::sim {

/// Statevector over n qubits, little-endian: qubit k is bit k of the
/// basis-state index. Starts in |0...0>. Supports 1 to 12 qubits.
class StateVector {
public:
    explicit StateVector(int n_qubits);

    int num_qubits() const { return n_qubits_; }
    std::size_t size() const { return amps_.size(); }

    std::span<const std::complex<double>> amplitudes() const { return amps_; }
    std::complex<double>& amp(std::size_t i) { return amps_[i]; }
    const std::complex<double>& amp(std::size_t i) const { return amps_[i]; }

    double norm_sq() const;

    /// Apply one gate; the gate must carry a concrete angle (no unbound
    /// parameter slot). Throws on out-of-range qubits or non-finite angles.
    void apply(const Gate& g);
    void apply(std::span<const Gate> gates);

    void apply_h(int target);
    void apply_ry(int target, double angle);
    void apply_rz(int target, double angle);
    void apply_cx(int control, int target);
    /// pauli: 1 = X, 2 = Y, 3 = Z (0 = identity, no-op).
    void apply_pauli(int target, int pauli);

    /// <this|other>
    std::complex<double> inner_product(const StateVector& other) const;

    /// Probability of measuring |0> on one qubit.
    double prob_zero(int qubit) const;

    /// Purity Tr(rho_k^2) of the single-qubit reduced state.
    double qubit_purity(int qubit) const;

private:
    void check_qubit(int q) const;

    int n_qubits_;
    std::vector<std::complex<double>> amps_;
};

}  // namespace qag::sim
