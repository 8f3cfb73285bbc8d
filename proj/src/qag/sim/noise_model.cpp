#include "qag/sim/noise_model.hpp"

#include <stdexcept>

#include <json.hpp>

namespace qag::sim {

using nlohmann::json;

namespace {

void check_prob(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument(std::string(what) + " probability must be in [0,1]");
}

}  // namespace

NoiseModel NoiseModel::zero(int n_qubits, std::string label) {
    NoiseModel m;
    m.label_ = std::move(label);
    m.readout_.assign(static_cast<std::size_t>(n_qubits), 0.0);
    return m;
}

NoiseModel NoiseModel::uniform(int n_qubits, double readout, double cx, std::string label) {
    check_prob(readout, "readout");
    check_prob(cx, "cx");
    NoiseModel m;
    m.label_ = std::move(label);
    m.readout_.assign(static_cast<std::size_t>(n_qubits), readout);
    m.cx_uniform_ = cx;
    return m;
}

NoiseModel NoiseModel::from_json(const std::string& json_text, int n_qubits) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("noise model JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("noise model JSON must be an object");

    NoiseModel m = NoiseModel::zero(n_qubits);
    if (j.contains("label")) m.label_ = j.at("label").get<std::string>();

    const bool scalar_form = j.contains("readout") || j.contains("cx");
    if (scalar_form) {
        const double r = j.value("readout", 0.0);
        const double c = j.value("cx", 0.0);
        check_prob(r, "readout");
        check_prob(c, "cx");
        for (auto& v : m.readout_) v = r;
        m.cx_uniform_ = c;
        return m;
    }

    if (j.contains("readout_error")) {
        const auto& arr = j.at("readout_error");
        if (!arr.is_array() || static_cast<int>(arr.size()) != n_qubits)
            throw std::invalid_argument("readout_error must be an array of length n_qubits");
        for (int q = 0; q < n_qubits; ++q) {
            const double p = arr[static_cast<std::size_t>(q)].get<double>();
            check_prob(p, "readout");
            m.readout_[static_cast<std::size_t>(q)] = p;
        }
    }
    if (j.contains("cx_error")) {
        const auto& edges = j.at("cx_error");
        if (!edges.is_object()) throw std::invalid_argument("cx_error must be an object");
        for (auto it = edges.begin(); it != edges.end(); ++it) {
            const std::string& key = it.key();
            const auto dash = key.find('-');
            if (dash == std::string::npos)
                throw std::invalid_argument("cx_error key must look like \"c-t\": " + key);
            int c = 0, t = 0;
            try {
                c = std::stoi(key.substr(0, dash));
                t = std::stoi(key.substr(dash + 1));
            } catch (const std::exception&) {
                throw std::invalid_argument("cx_error key must look like \"c-t\": " + key);
            }
            if (c < 0 || c >= n_qubits || t < 0 || t >= n_qubits || c == t)
                throw std::invalid_argument("cx_error edge out of range: " + key);
            const double p = it.value().get<double>();
            check_prob(p, "cx");
            m.cx_edges_[{c, t}] = p;
        }
    }
    return m;
}

std::string NoiseModel::to_json() const {
    json j;
    j["label"] = label_;
    j["readout_error"] = readout_;
    json edges = json::object();
    for (const auto& [edge, p] : cx_edges_)
        edges[std::to_string(edge.first) + "-" + std::to_string(edge.second)] = p;
    j["cx_error"] = edges;
    if (cx_uniform_ != 0.0) j["cx_uniform"] = cx_uniform_;
    return j.dump();
}

double NoiseModel::readout_error(int qubit) const {
    if (qubit < 0 || qubit >= num_qubits())
        throw std::out_of_range("readout_error: qubit out of range");
    return readout_[static_cast<std::size_t>(qubit)];
}

void NoiseModel::set_readout_error(int qubit, double p) {
    if (qubit < 0 || qubit >= num_qubits())
        throw std::out_of_range("set_readout_error: qubit out of range");
    check_prob(p, "readout");
    readout_[static_cast<std::size_t>(qubit)] = p;
}

double NoiseModel::cx_error(int control, int target) const {
    const auto it = cx_edges_.find({control, target});
    return it != cx_edges_.end() ? it->second : cx_uniform_;
}

void NoiseModel::set_cx_error(int control, int target, double p) {
    check_prob(p, "cx");
    cx_edges_[{control, target}] = p;
}

void NoiseModel::set_cx_uniform(double p) {
    check_prob(p, "cx");
    cx_uniform_ = p;
}

bool NoiseModel::is_zero() const {
    for (double p : readout_)
        if (p != 0.0) return false;
    if (cx_uniform_ != 0.0) return false;
    for (const auto& [edge, p] : cx_edges_)
        if (p != 0.0) return false;
    return true;
}

double NoiseModel::summary_level() const {
    double r = 0.0;
    for (double p : readout_) r += p;
    if (!readout_.empty()) r /= static_cast<double>(readout_.size());
    double c = cx_uniform_;
    if (!cx_edges_.empty()) {
        c = 0.0;
        for (const auto& [edge, p] : cx_edges_) c += p;
        c /= static_cast<double>(cx_edges_.size());
    }
    return 0.5 * (r + c);
}

}  // namespace qag::sim
