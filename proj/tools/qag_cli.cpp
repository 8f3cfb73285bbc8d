// Command-line front end for the qag shared library. Flags are merged
// over an optional JSON config file; the merged document is handed to the
// matching qag_run_* entry point, which writes all artifacts under --out.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qag/qag.h"

using nlohmann::json;

namespace {

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
    json j = json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw CLI::ValidationError("--config", "invalid JSON in " + path);
    if (!j.is_object()) throw CLI::ValidationError("--config", "config must be a JSON object");
    return j;
}

/// Inline JSON object if the text starts with '{', otherwise a file path.
json noise_value(const std::string& text) {
    if (!text.empty() && text.front() == '{') return json::parse(text);
    return json(text);
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

int run(qag_status (*fn)(const char*, const char*), const json& config, const std::string& out_dir,
        const char* name) {
    const qag_status status = fn(config.dump().c_str(), out_dir.c_str());
    if (status != QAG_OK) {
        std::cerr << "qag " << name << ": " << qag_last_error() << "\n";
        return static_cast<int>(status);
    }
    return 0;
}

struct DatasetFlags {
    std::string dataset_csv;
    std::string train_csv;
    std::string test_csv;
    bool synthetic = false;
    std::uint64_t data_seed = 7;
    int split_train = 1000;
    int split_test = 980;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--dataset", dataset_csv, "Dataset CSV used for both train and test");
        cmd->add_option("--train-csv", train_csv, "Training-set CSV");
        cmd->add_option("--test-csv", test_csv, "Test-set CSV");
        cmd->add_flag("--synthetic", synthetic, "Use the built-in synthetic generator");
        cmd->add_option("--data-seed", data_seed, "Seed for the synthetic generator");
        cmd->add_option("--split-train", split_train, "Synthetic split: training samples");
        cmd->add_option("--split-test", split_test, "Synthetic split: test samples");
    }

    void apply(json& config) const {
        if (!dataset_csv.empty()) {
            config["dataset"] = {{"path", dataset_csv}};
        } else if (!train_csv.empty() || !test_csv.empty()) {
            config["dataset"] = {{"train_path", train_csv}, {"test_path", test_csv}};
        } else if (synthetic) {
            config["dataset"] = {{"synthetic", json::object()},
                                 {"seed", data_seed},
                                 {"split", {{"train", split_train}, {"test", split_test}}}};
        }
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum Angle Generator toolkit (libqag " + std::string(qag_version()) + ")"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out";

    // train ---------------------------------------------------------------
    auto* train = app.add_subcommand("train", "Train a model and write checkpoint + loss history");
    std::string arch = "MERA-up", noise_text;
    std::vector<std::string> noise_changes;
    std::uint64_t seed = 0;
    int epochs = -1, shots = -1, trials = -1, threads = -1, eval_images = -1, drop_extremes = -1;
    DatasetFlags train_data;
    train->add_option("--config", config_path, "JSON config file");
    train->add_option("--out", out_dir, "Output directory");
    train->add_option("--seed", seed, "Run seed");
    train->add_option("--epochs", epochs, "Training epochs");
    train->add_option("--shots", shots, "Shots per quantum job");
    train->add_option("--arch", arch, "Circuit architecture name");
    train->add_option("--noise", noise_text, "Noise model: inline JSON or file path");
    train->add_option("--noise-change", noise_changes,
                      "Scheduled noise swap 'epoch:file.json' (repeatable)");
    train->add_option("--trials", trials, "Independent training trials");
    train->add_option("--threads", threads, "Worker threads for trials");
    train->add_option("--eval-images", eval_images, "Images generated to score each trial");
    train->add_option("--drop-extremes", drop_extremes, "Best/worst trials dropped per side");
    train_data.add_to(train);

    // generate ------------------------------------------------------------
    auto* generate = app.add_subcommand("generate", "Generate images from a checkpoint");
    std::string checkpoint;
    int n_images = -1;
    generate->add_option("--config", config_path, "JSON config file");
    generate->add_option("--out", out_dir, "Output directory");
    generate->add_option("--checkpoint", checkpoint, "Checkpoint JSON");
    generate->add_option("-n,--n-images", n_images, "Number of images");
    generate->add_option("--seed", seed, "Run seed");
    generate->add_option("--noise", noise_text, "Noise model: inline JSON or file path");
    generate->add_option("--shots", shots, "Override checkpoint shots");

    // evaluate --------------------------------------------------------------
    auto* evaluate = app.add_subcommand("evaluate", "Compare generated images against a reference set");
    std::string generated_csv, reference_csv;
    int bins = -1, kmeans_k = -1;
    evaluate->add_option("--config", config_path, "JSON config file");
    evaluate->add_option("--out", out_dir, "Output directory");
    evaluate->add_option("--generated", generated_csv, "Generated-images CSV");
    evaluate->add_option("--reference", reference_csv, "Reference CSV");
    evaluate->add_option("--seed", seed, "k-means seed");
    evaluate->add_option("--bins", bins, "Histogram bins");
    evaluate->add_option("--k", kmeans_k, "k-means cluster count");

    // circuit-report --------------------------------------------------------
    auto* report = app.add_subcommand("circuit-report", "Parameter counts and circuit metrics");
    int n_qubits = -1, n_pairs = -1, n_samples = -1, n_bins_opt = -1;
    bool with_metrics = false;
    report->add_option("--config", config_path, "JSON config file");
    report->add_option("--out", out_dir, "Output directory");
    report->add_option("--n-qubits", n_qubits, "Qubit count (power of two)");
    report->add_flag("--metrics", with_metrics, "Also compute expressibility/entanglement");
    report->add_option("--n-pairs", n_pairs, "Fidelity pairs for expressibility");
    report->add_option("--n-samples", n_samples, "Samples for entanglement");
    report->add_option("--n-bins", n_bins_opt, "Fidelity histogram bins");
    report->add_option("--seed", seed, "Sampling seed");
    report->add_option("--threads", threads, "Worker threads");

    // noise-sweep -----------------------------------------------------------
    auto* sweep = app.add_subcommand("noise-sweep", "Inference or training noise sweeps");
    std::string mode = "inference", levels_text, configs_text;
    int repeats = -1;
    DatasetFlags sweep_data;
    sweep->add_option("--config", config_path, "JSON config file");
    sweep->add_option("--out", out_dir, "Output directory");
    sweep->add_option("--mode", mode, "'inference' or 'training'");
    sweep->add_option("--checkpoint", checkpoint, "Checkpoint JSON (inference mode)");
    sweep->add_option("--levels", levels_text, "Comma-separated noise levels");
    sweep->add_option("--configs", configs_text, "Comma list from {readout,cnot,combined}");
    sweep->add_option("--noise", noise_text, "Extra per-qubit model: inline JSON or file path");
    sweep->add_option("--images", n_images, "Images per repeat/evaluation");
    sweep->add_option("--repeats", repeats, "Repeats per point (inference)");
    sweep->add_option("--trials", trials, "Trainings per point (training)");
    sweep->add_option("--epochs", epochs, "Epochs per training (training mode)");
    sweep->add_option("--arch", arch, "Architecture (training mode)");
    sweep->add_option("--seed", seed, "Run seed");
    sweep->add_option("--threads", threads, "Worker threads");
    sweep_data.add_to(sweep);

    // data-gen ----------------------------------------------------------------
    auto* data_gen = app.add_subcommand("data-gen", "Write a synthetic dataset");
    std::string params_text, out_name;
    int gen_n = -1, split_train = -1, split_test = -1;
    data_gen->add_option("--config", config_path, "JSON config file");
    data_gen->add_option("--out", out_dir, "Output directory");
    data_gen->add_option("-n,--n-samples", gen_n, "Number of samples");
    data_gen->add_option("--seed", seed, "Generator seed");
    data_gen->add_option("--params", params_text, "Synthetic parameters (inline JSON)");
    data_gen->add_option("--split-train", split_train, "Also write train.csv of this size");
    data_gen->add_option("--split-test", split_test, "Also write test.csv of this size");
    data_gen->add_option("--out-name", out_name, "Name of the full dataset CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        json config = load_config(config_path);

        if (app.got_subcommand(train)) {
            if (train->count("--seed")) config["seed"] = seed;
            if (epochs >= 0) config["epochs"] = epochs;
            if (shots > 0) config["shots"] = shots;
            if (train->count("--arch")) config["arch"] = arch;
            if (!noise_text.empty()) config["noise"] = noise_value(noise_text);
            if (!noise_changes.empty()) {
                json schedule = config.value("noise_schedule", json::array());
                for (const auto& change : noise_changes) {
                    const auto colon = change.find(':');
                    if (colon == std::string::npos)
                        throw CLI::ValidationError("--noise-change", "expected 'epoch:file.json'");
                    schedule.push_back({{"epoch", std::stoi(change.substr(0, colon))},
                                        {"model", noise_value(change.substr(colon + 1))}});
                }
                config["noise_schedule"] = schedule;
            }
            if (trials > 0) config["trials"] = trials;
            if (threads > 0) config["threads"] = threads;
            if (eval_images > 0) config["eval_images"] = eval_images;
            if (drop_extremes >= 0) config["drop_extremes"] = drop_extremes;
            train_data.apply(config);
            return run(qag_run_train, config, out_dir, "train");
        }
        if (app.got_subcommand(generate)) {
            if (!checkpoint.empty()) config["checkpoint"] = checkpoint;
            if (n_images > 0) config["n_images"] = n_images;
            if (generate->count("--seed")) config["seed"] = seed;
            if (!noise_text.empty()) config["noise"] = noise_value(noise_text);
            if (shots > 0) config["shots"] = shots;
            return run(qag_run_generate, config, out_dir, "generate");
        }
        if (app.got_subcommand(evaluate)) {
            if (!generated_csv.empty()) config["generated"] = generated_csv;
            if (!reference_csv.empty()) config["reference"] = reference_csv;
            if (evaluate->count("--seed")) config["seed"] = seed;
            if (bins > 0) config["bins"] = bins;
            if (kmeans_k > 0) config["kmeans_k"] = kmeans_k;
            return run(qag_run_evaluate, config, out_dir, "evaluate");
        }
        if (app.got_subcommand(report)) {
            if (n_qubits > 0) config["n_qubits"] = n_qubits;
            if (with_metrics) config["metrics"] = true;
            if (n_pairs > 0) config["n_pairs"] = n_pairs;
            if (n_samples > 0) config["n_samples"] = n_samples;
            if (n_bins_opt > 0) config["n_bins"] = n_bins_opt;
            if (report->count("--seed")) config["seed"] = seed;
            if (threads > 0) config["threads"] = threads;
            return run(qag_run_circuit_report, config, out_dir, "circuit-report");
        }
        if (app.got_subcommand(sweep)) {
            if (sweep->count("--mode")) config["mode"] = mode;
            if (!checkpoint.empty()) config["checkpoint"] = checkpoint;
            if (!levels_text.empty()) config["levels"] = parse_double_list(levels_text);
            if (!configs_text.empty() || !noise_text.empty()) {
                json configs = json::array();
                std::stringstream ss(configs_text);
                std::string item;
                while (std::getline(ss, item, ','))
                    if (!item.empty()) configs.push_back(item);
                if (!noise_text.empty()) configs.push_back({{"file", noise_value(noise_text)}});
                config["configs"] = configs;
            }
            if (n_images > 0) config["images"] = n_images;
            if (repeats > 0) config["repeats"] = repeats;
            if (trials > 0) config["trials"] = trials;
            if (epochs >= 0) config["epochs"] = epochs;
            if (sweep->count("--arch")) config["arch"] = arch;
            if (sweep->count("--seed")) config["seed"] = seed;
            if (threads > 0) config["threads"] = threads;
            sweep_data.apply(config);
            return run(qag_run_noise_sweep, config, out_dir, "noise-sweep");
        }
        if (app.got_subcommand(data_gen)) {
            json synth = config.value("synthetic", json::object());
            if (!params_text.empty()) synth.merge_patch(json::parse(params_text));
            if (gen_n > 0) synth["n_samples"] = gen_n;
            config["synthetic"] = synth;
            if (data_gen->count("--seed")) config["seed"] = seed;
            if (split_train > 0 && split_test > 0)
                config["split"] = {{"train", split_train}, {"test", split_test}};
            if (!out_name.empty()) config["out_name"] = out_name;
            return run(qag_run_data_gen, config, out_dir, "data-gen");
        }
    } catch (const std::exception& e) {
        std::cerr << "qag: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
