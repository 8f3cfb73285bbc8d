#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qag::sim {

/// Hardware-noise abstraction: a readout flip probability per qubit and
/// a depolarizing-style error probability per directed CX edge. An
/// all-zeros model reproduces the noiseless sampler bit for bit.
class NoiseModel {
public:
    NoiseModel() = default;

    /// Noiseless model for n qubits.
    static NoiseModel zero(int n_qubits, std::string label = "noiseless");
    /// Same readout probability on every qubit and the same error on
    /// every CX edge.
    static NoiseModel uniform(int n_qubits, double readout, double cx, std::string label = "");

    /// Parse the JSON form
    ///   {"label": str, "readout_error": [p0..p{n-1}], "cx_error": {"c-t": p, ...}}
    /// or the scalar shorthand {"readout": p, "cx": q} which expands to
    /// uniform per-qubit / per-edge values.
    static NoiseModel from_json(const std::string& json_text, int n_qubits);
    std::string to_json() const;

    const std::string& label() const { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    int num_qubits() const { return static_cast<int>(readout_.size()); }
    double readout_error(int qubit) const;
    void set_readout_error(int qubit, double p);
    const std::vector<double>& readout_errors() const { return readout_; }

    /// Error probability for a CX with this control/target pair; falls
    /// back to the uniform default when the edge is not listed.
    double cx_error(int control, int target) const;
    void set_cx_error(int control, int target, double p);
    void set_cx_uniform(double p);
    const std::map<std::pair<int, int>, double>& cx_edges() const { return cx_edges_; }
    double cx_uniform() const { return cx_uniform_; }

    bool is_zero() const;

    /// Scalar placement level for sweep plots: the average of the mean
    /// readout error and the mean CX error.
    double summary_level() const;

private:
    std::string label_;
    std::vector<double> readout_;
    std::map<std::pair<int, int>, double> cx_edges_;
    double cx_uniform_ = 0.0;
};

}  // namespace qag::sim
