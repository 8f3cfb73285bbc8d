#pragma once

#include <string>

#include "qag/circuits/architectures.hpp"
#include "qag/codec/angle_codec.hpp"
#include "qag/train/spsa_trainer.hpp"

namespace qag::run {

/// Library version reported in manifests and by the C API.
const char* version();

/// Everything a trained model needs at inference time.
struct Checkpoint {
    std::string arch;
    int n_qubits = 8;
    std::vector<double> params;
    int epoch = 0;
    std::uint64_t seed = 0;
    codec::EncodingConfig encoding;
    std::string config_hash;
};

void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

/// Experiment entry points. Each takes the merged run configuration as a
/// JSON document and writes its artifacts (plus manifest.json) under
/// out_dir, creating it if needed. They throw on invalid configuration
/// or I/O failure; outputs are byte-identical for identical configs.
void cmd_train(const std::string& config_json, const std::string& out_dir);
void cmd_generate(const std::string& config_json, const std::string& out_dir);
void cmd_evaluate(const std::string& config_json, const std::string& out_dir);
void cmd_circuit_report(const std::string& config_json, const std::string& out_dir);
void cmd_noise_sweep(const std::string& config_json, const std::string& out_dir);
void cmd_data_gen(const std::string& config_json, const std::string& out_dir);

}  // namespace qag::run
