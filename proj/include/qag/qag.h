/*
 * qag - Quantum Angle Generator toolkit.
 *
 * C API over the simulation, training, and evaluation core. All functions
 * return QAG_OK on success; on failure they return an error code and
 * qag_last_error() gives a thread-local diagnostic message. Handles are
 * opaque and freed with their matching *_free function.
 */
#ifndef QAG_H
#define QAG_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QAG_API __declspec(dllexport)
#else
#define QAG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qag_status {
    QAG_OK = 0,
    QAG_ERR_INVALID_ARGUMENT = 1,
    QAG_ERR_PARSE = 2,
    QAG_ERR_IO = 3,
    QAG_ERR_INTERNAL = 4
} qag_status;

QAG_API const char* qag_version(void);
/* Message for the most recent failure on this thread; empty on success. */
QAG_API const char* qag_last_error(void);

/* Free a string returned through an out parameter. */
QAG_API void qag_string_free(char* s);

/* ---- circuits ------------------------------------------------------- */

typedef struct qag_circuit qag_circuit;

/* arch_name is one of: Linear, TTN, TTN_Rz, MERA, MERA_Rz, MERA-up,
 * MERA-up_d2, MERA-up_Rz, MERA-up_d2_Rz. n_qubits: power of two in [2, 12]. */
QAG_API qag_status qag_circuit_build(const char* arch_name, int n_qubits, qag_circuit** out);
QAG_API void qag_circuit_free(qag_circuit* circuit);
/* Number of trainable parameters; < 0 on a null handle. */
QAG_API int qag_circuit_param_count(const qag_circuit* circuit);
/* Gate list + parameter count as JSON; free with qag_string_free. */
QAG_API qag_status qag_circuit_to_json(const qag_circuit* circuit, char** out_json);

/* ---- datasets ------------------------------------------------------- */

typedef struct qag_dataset qag_dataset;

QAG_API qag_status qag_dataset_load_csv(const char* path, qag_dataset** out);
/* params_json: synthetic-generator parameters (JSON object, may be "{}"). */
QAG_API qag_status qag_dataset_synthesize(const char* params_json, uint64_t seed,
                                          qag_dataset** out);
QAG_API qag_status qag_dataset_save_csv(const qag_dataset* dataset, const char* path);
QAG_API void qag_dataset_free(qag_dataset* dataset);
QAG_API int qag_dataset_num_samples(const qag_dataset* dataset);
QAG_API int qag_dataset_num_pixels(const qag_dataset* dataset);
/* Copies per-pixel means and population stds into caller buffers of
 * length >= num_pixels (either pointer may be NULL to skip). */
QAG_API qag_status qag_dataset_pixel_stats(const qag_dataset* dataset, double* mean_out,
                                           double* std_out, size_t len);

/* ---- noise models --------------------------------------------------- */

typedef struct qag_noise_model qag_noise_model;

/* json: {"label": str, "readout_error": [...], "cx_error": {"c-t": p}} or
 * the scalar shorthand {"readout": p, "cx": q}. */
QAG_API qag_status qag_noise_model_parse(const char* json, int n_qubits, qag_noise_model** out);
QAG_API void qag_noise_model_free(qag_noise_model* model);

/* ---- generation ----------------------------------------------------- */

/* Generates n_images images and writes them row-major (n_images x
 * n_pixels, n_pixels = circuit qubits) into out. encoding_json holds at
 * least {"n_pixels": n, "pixel_std": [...]}; optional keys: e_max,
 * theta_max, shots, global_factor_min/max. noise may be NULL. */
QAG_API qag_status qag_generate(const qag_circuit* circuit, const double* params, size_t n_params,
                                const char* encoding_json, const qag_noise_model* noise,
                                int n_images, uint64_t seed, double* out);

/* ---- experiment runners --------------------------------------------- */

/* These back the CLI subcommands one to one: the run configuration is a
 * JSON document and every artifact (plus manifest.json) is written under
 * out_dir. See the README for the per-command schema. */
QAG_API qag_status qag_run_train(const char* config_json, const char* out_dir);
QAG_API qag_status qag_run_generate(const char* config_json, const char* out_dir);
QAG_API qag_status qag_run_evaluate(const char* config_json, const char* out_dir);
QAG_API qag_status qag_run_circuit_report(const char* config_json, const char* out_dir);
QAG_API qag_status qag_run_noise_sweep(const char* config_json, const char* out_dir);
QAG_API qag_status qag_run_data_gen(const char* config_json, const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif /* QAG_H */
