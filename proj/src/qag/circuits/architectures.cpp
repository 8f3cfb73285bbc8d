#include "qag/circuits/architectures.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace qag::circuits {

using sim::Gate;
using sim::GateKind;

namespace {

void check_qubit_count(int n) {
    if (n < 2 || n > 12 || (n & (n - 1)) != 0)
        throw std::invalid_argument("architecture requires a power-of-two qubit count in [2, 12]");
}

/// Appends an Ry layer over `qubits` (ascending), consuming one fresh
/// parameter slot each.
void ry_layer(CircuitSpec& c, const std::vector<int>& qubits) {
    for (int q : qubits) c.gates.push_back(Gate::ry_slot(q, c.n_params++));
}

void ry_all(CircuitSpec& c) {
    for (int q = 0; q < c.n_qubits; ++q) c.gates.push_back(Gate::ry_slot(q, c.n_params++));
}

/// Upsampling half of the MERA: one Ry on the central qubit, CX fan-out
/// levels whose edge distance halves each level (control = the qubit that
/// already carries information), an Ry layer on the informed set after
/// each level, one offset-pair entangler layer, and a final Ry layer.
CircuitSpec mera_up(int n) {
    CircuitSpec c{"MERA-up", n, {}, 0};
    const int center = n / 2 - 1;
    std::vector<int> informed{center};
    ry_layer(c, informed);

    c.gates.push_back(Gate::cx(center, center + n / 2));
    informed.push_back(center + n / 2);
    ry_layer(c, informed);

    for (int dist = n / 4; dist >= 1; dist /= 2) {
        std::vector<int> next;
        for (int q : informed) {
            c.gates.push_back(Gate::cx(q, q - dist));
            next.push_back(q - dist);
        }
        for (int q : next) informed.push_back(q);
        std::sort(informed.begin(), informed.end());
        ry_layer(c, informed);
    }

    for (int k = 0; 2 * k + 2 < n; ++k) c.gates.push_back(Gate::cx(2 * k + 1, 2 * k + 2));
    ry_all(c);
    return c;
}

/// Full MERA: the mirror image of the upsampling half (reversed gate
/// order, CX direction flipped, centre Ry dropped) followed by the
/// upsampling half itself, so the central Ry is shared.
CircuitSpec mera_full(int n) {
    const CircuitSpec up = mera_up(n);
    CircuitSpec c{"MERA", n, {}, 0};
    for (auto it = up.gates.rbegin(); it != up.gates.rend() - 1; ++it) {
        if (it->kind == GateKind::CX)
            c.gates.push_back(Gate::cx(it->target, it->control));
        else
            c.gates.push_back(Gate::ry_slot(it->target, c.n_params++));
    }
    for (const Gate& g : up.gates) {
        if (g.kind == GateKind::CX)
            c.gates.push_back(g);
        else
            c.gates.push_back(Gate::ry_slot(g.target, c.n_params++));
    }
    return c;
}

/// Binary-tree downsampling into the last qubit followed by the mirrored
/// upsampling tree; the up half starts after the root Ry with Ry layer
/// sizes 2, 4, ..., n.
CircuitSpec ttn(int n) {
    CircuitSpec c{"TTN", n, {}, 0};
    ry_all(c);
    std::vector<int> kept;
    for (int q = 0; q < n; ++q) kept.push_back(q);
    std::vector<std::vector<int>> levels;  // kept sets after each fold
    while (kept.size() > 1) {
        std::vector<int> next;
        for (std::size_t i = 0; i + 1 < kept.size(); i += 2) {
            c.gates.push_back(Gate::cx(kept[i], kept[i + 1]));
            next.push_back(kept[i + 1]);
        }
        ry_layer(c, next);
        levels.push_back(next);
        kept = std::move(next);
    }
    // Mirror back out, skipping the root Ry that was just placed.
    for (auto lvl = levels.rbegin(); lvl != levels.rend(); ++lvl) {
        const auto& folded = *lvl;
        std::vector<int> expanded;
        if (lvl + 1 != levels.rend()) {
            expanded = *(lvl + 1);
        } else {
            for (int q = 0; q < n; ++q) expanded.push_back(q);
        }
        for (std::size_t i = 0; i < folded.size(); ++i)
            c.gates.push_back(Gate::cx(expanded[2 * i + 1], expanded[2 * i]));
        ry_layer(c, expanded);
    }
    return c;
}

CircuitSpec linear(int n) {
    CircuitSpec c{"Linear", n, {}, 0};
    ry_all(c);
    for (int q = 0; q + 1 < n; ++q) c.gates.push_back(Gate::cx(q, q + 1));
    ry_all(c);
    return c;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

const std::vector<std::string>& architecture_names() {
    static const std::vector<std::string> names = {
        "Linear",  "TTN",        "TTN_Rz",     "MERA",       "MERA_Rz",
        "MERA-up", "MERA-up_d2", "MERA-up_Rz", "MERA-up_d2_Rz"};
    return names;
}

CircuitSpec build_architecture(std::string_view name, int n_qubits) {
    check_qubit_count(n_qubits);
    const auto& names = architecture_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw std::invalid_argument("unknown architecture: " + std::string(name));

    std::string_view base = name;
    bool rz = false, d2 = false;
    if (ends_with(base, "_Rz")) {
        rz = true;
        base.remove_suffix(3);
    }
    if (ends_with(base, "_d2")) {
        d2 = true;
        base.remove_suffix(3);
    }

    CircuitSpec c;
    if (base == "Linear" && !d2 && !rz)
        c = linear(n_qubits);
    else if (base == "TTN" && !d2)
        c = ttn(n_qubits);
    else if (base == "MERA" && !d2)
        c = mera_full(n_qubits);
    else if (base == "MERA-up")
        c = mera_up(n_qubits);
    else
        throw std::invalid_argument("unknown architecture: " + std::string(name));

    if (d2) c = with_depth2(c);
    if (rz) c = with_rz(c);
    return c;
}

CircuitSpec with_rz(const CircuitSpec& base) {
    const bool has_rz = std::any_of(base.gates.begin(), base.gates.end(), [](const Gate& g) {
        return g.kind == GateKind::Rz && g.is_parameterized();
    });
    if (has_rz || ends_with(base.name, "_Rz"))
        throw std::invalid_argument("with_rz: variant already applied to " + base.name);
    CircuitSpec c{base.name + "_Rz", base.n_qubits, {}, 0};
    for (const Gate& g : base.gates) {
        if (g.kind == GateKind::Ry) {
            c.gates.push_back(Gate::ry_slot(g.target, c.n_params++));
            c.gates.push_back(Gate::rz_slot(g.target, c.n_params++));
        } else {
            c.gates.push_back(g);
        }
    }
    return c;
}

CircuitSpec with_depth2(const CircuitSpec& base) {
    if (ends_with(base.name, "_d2") || base.name.find("_d2_") != std::string::npos)
        throw std::invalid_argument("with_depth2: variant already applied to " + base.name);
    CircuitSpec c{base.name + "_d2", base.n_qubits, {}, 0};
    for (int rep = 0; rep < 2; ++rep)
        for (const Gate& g : base.gates) {
            if (g.is_parameterized()) {
                if (g.kind == GateKind::Ry)
                    c.gates.push_back(Gate::ry_slot(g.target, c.n_params++));
                else
                    c.gates.push_back(Gate::rz_slot(g.target, c.n_params++));
            } else {
                c.gates.push_back(g);
            }
        }
    return c;
}

std::vector<sim::Gate> bind_params(const CircuitSpec& spec, std::span<const double> params) {
    if (static_cast<int>(params.size()) != spec.n_params)
        throw std::invalid_argument("bind_params: expected " + std::to_string(spec.n_params) +
                                    " parameters, got " + std::to_string(params.size()));
    std::vector<Gate> bound = spec.gates;
    for (Gate& g : bound)
        if (g.is_parameterized()) {
            g.angle = params[static_cast<std::size_t>(g.param)];
            g.param = -1;
        }
    return bound;
}

sim::StateVector run_circuit(const CircuitSpec& spec, std::span<const double> params) {
    sim::StateVector state(spec.n_qubits);
    const auto bound = bind_params(spec, params);
    state.apply(bound);
    return state;
}

std::string circuit_to_json(const CircuitSpec& spec) {
    nlohmann::json j;
    j["name"] = spec.name;
    j["n_qubits"] = spec.n_qubits;
    j["n_params"] = spec.n_params;
    nlohmann::json gates = nlohmann::json::array();
    for (const Gate& g : spec.gates) {
        nlohmann::json jg;
        jg["gate"] = sim::to_string(g.kind);
        jg["target"] = g.target;
        if (g.kind == GateKind::CX) jg["control"] = g.control;
        if (g.is_parameterized()) jg["param"] = g.param;
        gates.push_back(std::move(jg));
    }
    j["gates"] = std::move(gates);
    return j.dump();
}

}  // namespace qag::circuits
