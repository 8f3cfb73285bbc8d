#include "qag/qag.h"

#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "qag/circuits/architectures.hpp"
#include "qag/codec/angle_codec.hpp"
#include "qag/data/dataset.hpp"
#include "qag/run/experiments.hpp"
#include "qag/sim/noise_model.hpp"

namespace {

thread_local std::string g_last_error;

qag_status fail(qag_status code, const char* message) {
    g_last_error = message;
    return code;
}

/// Runs fn, translating exceptions into status codes.
template <typename Fn>
qag_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return QAG_OK;
    } catch (const std::invalid_argument& e) {
        return fail(QAG_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::out_of_range& e) {
        return fail(QAG_ERR_INVALID_ARGUMENT, e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(QAG_ERR_PARSE, e.what());
    } catch (const std::runtime_error& e) {
        return fail(QAG_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(QAG_ERR_INTERNAL, e.what());
    }
}

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

struct qag_circuit {
    qag::circuits::CircuitSpec spec;
};

struct qag_dataset {
    qag::data::ShowerDataset data;
};

struct qag_noise_model {
    qag::sim::NoiseModel model;
};

extern "C" {

const char* qag_version(void) { return qag::run::version(); }

const char* qag_last_error(void) { return g_last_error.c_str(); }

void qag_string_free(char* s) { delete[] s; }

qag_status qag_circuit_build(const char* arch_name, int n_qubits, qag_circuit** out) {
    if (!arch_name || !out) return fail(QAG_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto* c = new qag_circuit{qag::circuits::build_architecture(arch_name, n_qubits)};
        *out = c;
    });
}

void qag_circuit_free(qag_circuit* circuit) { delete circuit; }

int qag_circuit_param_count(const qag_circuit* circuit) {
    return circuit ? circuit->spec.n_params : -1;
}

qag_status qag_circuit_to_json(const qag_circuit* circuit, char** out_json) {
    if (!circuit || !out_json) return fail(QAG_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out_json = copy_string(qag::circuits::circuit_to_json(circuit->spec)); });
}

qag_status qag_dataset_load_csv(const char* path, qag_dataset** out) {
    if (!path || !out) return fail(QAG_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = new qag_dataset{qag::data::load_dataset(path)}; });
}

qag_status qag_dataset_synthesize(const char* params_json, uint64_t seed, qag_dataset** out) {
    if (!params_json || !out) return fail(QAG_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const auto params = qag::data::SynthParams::from_json(params_json);
        *out = new qag_dataset{qag::data::synth_generate(params, seed)};
    });
}

qag_status qag_dataset_save_csv(const qag_dataset* dataset, const char* path) {
    if (!dataset || !path) return fail(QAG_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { qag::data::save_dataset(dataset->data, path); });
}

void qag_dataset_free(qag_dataset* dataset) { delete dataset; }

int qag_dataset_num_samples(const qag_dataset* dataset) {
    return dataset ? static_cast<int>(dataset->data.size()) : -1;
}

int qag_dataset_num_pixels(const qag_dataset* dataset) {
    return dataset ? static_cast<int>(dataset->data.n_pixels()) : -1;
}

qag_status qag_dataset_pixel_stats(const qag_dataset* dataset, double* mean_out, double* std_out,
                                   size_t len) {
    if (!dataset) return fail(QAG_ERR_INVALID_ARGUMENT, "null dataset");
    if (len < dataset->data.n_pixels())
        return fail(QAG_ERR_INVALID_ARGUMENT, "buffer shorter than pixel count");
    for (std::size_t i = 0; i < dataset->data.n_pixels(); ++i) {
        if (mean_out) mean_out[i] = dataset->data.pixel_mean[i];
        if (std_out) std_out[i] = dataset->data.pixel_std[i];
    }
    g_last_error.clear();
    return QAG_OK;
}

qag_status qag_noise_model_parse(const char* json, int n_qubits, qag_noise_model** out) {
    if (!json || !out) return fail(QAG_ERR_INVALID_ARGUMENT, "null argument");
    return guarded(
        [&] { *out = new qag_noise_model{qag::sim::NoiseModel::from_json(json, n_qubits)}; });
}

void qag_noise_model_free(qag_noise_model* model) { delete model; }

qag_status qag_generate(const qag_circuit* circuit, const double* params, size_t n_params,
                        const char* encoding_json, const qag_noise_model* noise, int n_images,
                        uint64_t seed, double* out) {
    if (!circuit || !params || !encoding_json || !out)
        return fail(QAG_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const auto j = nlohmann::json::parse(encoding_json);
        qag::codec::EncodingConfig enc;
        enc.n_pixels = j.value("n_pixels", circuit->spec.n_qubits);
        enc.pixel_std = j.at("pixel_std").get<std::vector<double>>();
        enc.e_max = j.value("e_max", enc.e_max);
        enc.theta_max = j.value("theta_max", enc.theta_max);
        enc.shots = j.value("shots", enc.shots);
        enc.global_factor_min = j.value("global_factor_min", enc.global_factor_min);
        enc.global_factor_max = j.value("global_factor_max", enc.global_factor_max);

        const qag::sim::NoiseModel model =
            noise ? noise->model : qag::sim::NoiseModel::zero(circuit->spec.n_qubits);
        const auto images = qag::codec::generate_images(
            circuit->spec, std::span<const double>(params, n_params), enc, n_images, model, seed);
        std::memcpy(out, images.data().data(), images.data().size() * sizeof(double));
    });
}

qag_status qag_run_train(const char* config_json, const char* out_dir) {
    if (!config_json || !out_dir) return fail(QAG_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { qag::run::cmd_train(config_json, out_dir); });
}

qag_status qag_run_generate(const char* config_json, const char* out_dir) {
    if (!config_json || !out_dir) return fail(QAG_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { qag::run::cmd_generate(config_json, out_dir); });
}

qag_status qag_run_evaluate(const char* config_json, const char* out_dir) {
    if (!config_json || !out_dir) return fail(QAG_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { qag::run::cmd_evaluate(config_json, out_dir); });
}

qag_status qag_run_circuit_report(const char* config_json, const char* out_dir) {
    if (!config_json || !out_dir) return fail(QAG_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { qag::run::cmd_circuit_report(config_json, out_dir); });
}

qag_status qag_run_noise_sweep(const char* config_json, const char* out_dir) {
    if (!config_json || !out_dir) return fail(QAG_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { qag::run::cmd_noise_sweep(config_json, out_dir); });
}

qag_status qag_run_data_gen(const char* config_json, const char* out_dir) {
    if (!config_json || !out_dir) return fail(QAG_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { qag::run::cmd_data_gen(config_json, out_dir); });
}

}  // extern "C"
