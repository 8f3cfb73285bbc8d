#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qag/sim/gate.hpp"
#include "qag/sim/state_vector.hpp"

namespace qag::circuits {

/// A named ansatz: an ordered gate list whose Ry/Rz gates reference
/// parameter slots 0..n_params-1 in order of appearance.
struct CircuitSpec {
    std::string name;
    int n_qubits = 0;
    std::vector<sim::Gate> gates;
    int n_params = 0;
};

/// The nine architecture names, in report order.
const std::vector<std::string>& architecture_names();

/// Build one of the nine architectures. n_qubits must be a power of two
/// in [2, 12]; the reference configuration is 8.
CircuitSpec build_architecture(std::string_view name, int n_qubits);

/// Insert a parameterized Rz after every Ry (doubles the parameter count).
CircuitSpec with_rz(const CircuitSpec& base);
/// Repeat the whole gate sequence with fresh parameter slots (doubles the
/// parameter count).
CircuitSpec with_depth2(const CircuitSpec& base);

/// Bind a parameter vector to the circuit's slots. Throws when the length
/// does not equal n_params.
std::vector<sim::Gate> bind_params(const CircuitSpec& spec, std::span<const double> params);

/// |0...0> run through the bound circuit.
sim::StateVector run_circuit(const CircuitSpec& spec, std::span<const double> params);

/// Gate list + parameter count as JSON.
std::string circuit_to_json(const CircuitSpec& spec);

}  // namespace qag::circuits
