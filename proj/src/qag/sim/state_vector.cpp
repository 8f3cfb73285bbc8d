#include "qag/sim/state_vector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qag::sim {

namespace {
constexpr int kMaxQubits = 12;
}

std::string to_string(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "h";
        case GateKind::Ry: return "ry";
        case GateKind::Rz: return "rz";
        case GateKind::CX: return "cx";
    }
    return "?";
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw std::invalid_argument("StateVector: n_qubits must be in [1, " +
                                    std::to_string(kMaxQubits) + "]");
    amps_.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
    amps_[0] = {1.0, 0.0};
}

double StateVector::norm_sq() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
}

void StateVector::check_qubit(int q) const {
    if (q < 0 || q >= n_qubits_)
        throw std::out_of_range("qubit index " + std::to_string(q) + " out of range for " +
                                std::to_string(n_qubits_) + " qubits");
}

void StateVector::apply(const Gate& g) {
    switch (g.kind) {
        case GateKind::H:
            apply_h(g.target);
            break;
        case GateKind::Ry:
            if (g.is_parameterized())
                throw std::invalid_argument("apply: unbound parameter slot on ry gate");
            apply_ry(g.target, g.angle);
            break;
        case GateKind::Rz:
            if (g.is_parameterized())
                throw std::invalid_argument("apply: unbound parameter slot on rz gate");
            apply_rz(g.target, g.angle);
            break;
        case GateKind::CX:
            apply_cx(g.control, g.target);
            break;
    }
}

void StateVector::apply(std::span<const Gate> gates) {
    for (const Gate& g : gates) apply(g);
}

void StateVector::apply_h(int target) {
    check_qubit(target);
    const std::size_t stride = std::size_t{1} << target;
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    for (std::size_t base = 0; base < amps_.size(); base += 2 * stride)
        for (std::size_t i = base; i < base + stride; ++i) {
            const auto a0 = amps_[i];
            const auto a1 = amps_[i + stride];
            amps_[i] = inv_sqrt2 * (a0 + a1);
            amps_[i + stride] = inv_sqrt2 * (a0 - a1);
        }
}

void StateVector::apply_ry(int target, double angle) {
    check_qubit(target);
    if (!std::isfinite(angle)) throw std::invalid_argument("apply_ry: non-finite angle");
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    const std::size_t stride = std::size_t{1} << target;
    for (std::size_t base = 0; base < amps_.size(); base += 2 * stride)
        for (std::size_t i = base; i < base + stride; ++i) {
            const auto a0 = amps_[i];
            const auto a1 = amps_[i + stride];
            amps_[i] = c * a0 - s * a1;
            amps_[i + stride] = s * a0 + c * a1;
        }
}

void StateVector::apply_rz(int target, double angle) {
    check_qubit(target);
    if (!std::isfinite(angle)) throw std::invalid_argument("apply_rz: non-finite angle");
    const std::complex<double> e0{std::cos(angle / 2.0), -std::sin(angle / 2.0)};
    const std::complex<double> e1 = std::conj(e0);
    const std::size_t stride = std::size_t{1} << target;
    for (std::size_t base = 0; base < amps_.size(); base += 2 * stride)
        for (std::size_t i = base; i < base + stride; ++i) {
            amps_[i] *= e0;
            amps_[i + stride] *= e1;
        }
}

void StateVector::apply_cx(int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) throw std::invalid_argument("apply_cx: control equals target");
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if ((i & cbit) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
}

void StateVector::apply_pauli(int target, int pauli) {
    check_qubit(target);
    const std::size_t tbit = std::size_t{1} << target;
    switch (pauli) {
        case 0:
            return;
        case 1:  // X
            for (std::size_t i = 0; i < amps_.size(); ++i)
                if (!(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
            return;
        case 2:  // Y = [[0,-i],[i,0]]
            for (std::size_t i = 0; i < amps_.size(); ++i)
                if (!(i & tbit)) {
                    const auto a0 = amps_[i];
                    const auto a1 = amps_[i | tbit];
                    amps_[i] = std::complex<double>{0.0, -1.0} * a1;
                    amps_[i | tbit] = std::complex<double>{0.0, 1.0} * a0;
                }
            return;
        case 3:  // Z
            for (std::size_t i = 0; i < amps_.size(); ++i)
                if (i & tbit) amps_[i] = -amps_[i];
            return;
        default:
            throw std::invalid_argument("apply_pauli: pauli code must be in [0,3]");
    }
}

std::complex<double> StateVector::inner_product(const StateVector& other) const {
    if (other.n_qubits_ != n_qubits_)
        throw std::invalid_argument("inner_product: qubit count mismatch");
    std::complex<double> s{0.0, 0.0};
    for (std::size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
    return s;
}

double StateVector::prob_zero(int qubit) const {
    check_qubit(qubit);
    const std::size_t bit = std::size_t{1} << qubit;
    double p = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if (!(i & bit)) p += std::norm(amps_[i]);
    return p;
}

double StateVector::qubit_purity(int qubit) const {
    check_qubit(qubit);
    const std::size_t bit = std::size_t{1} << qubit;
    double r00 = 0.0, r11 = 0.0;
    std::complex<double> r01{0.0, 0.0};
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & bit) {
            r11 += std::norm(amps_[i]);
        } else {
            r00 += std::norm(amps_[i]);
            r01 += amps_[i] * std::conj(amps_[i | bit]);
        }
    }
    return r00 * r00 + r11 * r11 + 2.0 * std::norm(r01);
}

}  // namespace qag::sim
