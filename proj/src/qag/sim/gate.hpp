#pragma once

#include <string>

namespace qag::sim {

enum class GateKind { H, Ry, Rz, CX };

/// One gate in a circuit. Ry/Rz carry either a concrete angle or a
/// parameter-slot index (param >= 0) to be bound before execution; CX
/// carries a control qubit and no angle.
struct Gate {
    GateKind kind = GateKind::H;
    int target = 0;
    int control = -1;  // CX only
    double angle = 0.0;
    int param = -1;  // slot index into the parameter vector, Ry/Rz only

    static Gate h(int target) { return {GateKind::H, target, -1, 0.0, -1}; }
    static Gate ry(int target, double angle) { return {GateKind::Ry, target, -1, angle, -1}; }
    static Gate rz(int target, double angle) { return {GateKind::Rz, target, -1, angle, -1}; }
    static Gate ry_slot(int target, int slot) { return {GateKind::Ry, target, -1, 0.0, slot}; }
    static Gate rz_slot(int target, int slot) { return {GateKind::Rz, target, -1, 0.0, slot}; }
    static Gate cx(int control, int target) { return {GateKind::CX, target, control, 0.0, -1}; }

    bool is_parameterized() const { return param >= 0; }
};

std::string to_string(GateKind kind);

}  // namespace qag::sim
