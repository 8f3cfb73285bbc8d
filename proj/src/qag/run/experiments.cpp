#include "qag/run/experiments.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qag/data/dataset.hpp"
#include "qag/eval/physics_eval.hpp"
#include "qag/metrics/circuit_metrics.hpp"
#include "qag/util/csv.hpp"
#include "qag/util/rng.hpp"
#include "qag/util/threads.hpp"

namespace qag::run {

using nlohmann::json;
namespace fs = std::filesystem;

const char* version() { return "1.0.0"; }

namespace {

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("error while writing " + path.string());
}

json parse_config(const std::string& config_json) {
    json j = json::parse(config_json);
    if (!j.is_object()) throw std::invalid_argument("run config must be a JSON object");
    return j;
}

fs::path prepare_out_dir(const std::string& out_dir) {
    if (out_dir.empty()) throw std::invalid_argument("output directory must not be empty");
    fs::path p(out_dir);
    fs::create_directories(p);
    return p;
}

void write_manifest(const fs::path& dir, const char* subcommand, const json& config) {
    json m;
    m["subcommand"] = subcommand;
    m["version"] = version();
    m["seed"] = config.value("seed", 0ULL);
    m["config"] = config;
    m["config_hash"] = fnv1a_hex(config.dump());
    write_text(dir / "manifest.json", m.dump(2) + "\n");
}

sim::NoiseModel noise_from_config(const json& value, int n_qubits) {
    if (value.is_null()) return sim::NoiseModel::zero(n_qubits);
    if (value.is_string()) {
        std::ifstream in(value.get<std::string>());
        if (!in) throw std::runtime_error("cannot open noise model file: " + value.get<std::string>());
        std::stringstream ss;
        ss << in.rdbuf();
        return sim::NoiseModel::from_json(ss.str(), n_qubits);
    }
    return sim::NoiseModel::from_json(value.dump(), n_qubits);
}

objectives::WeightScheduleMode weight_mode_from(const std::string& name) {
    if (name == "continuous") return objectives::WeightScheduleMode::kContinuous;
    if (name == "absolute") return objectives::WeightScheduleMode::kAbsolute;
    throw std::invalid_argument("weight_mode must be 'continuous' or 'absolute'");
}

train::TrainConfig train_config_from(const json& j, int n_qubits) {
    train::TrainConfig cfg;
    cfg.epochs = j.value("epochs", cfg.epochs);
    cfg.shots = j.value("shots", cfg.shots);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.lr_c0 = j.value("lr_c0", cfg.lr_c0);
    cfg.lr_decay = j.value("lr_decay", cfg.lr_decay);
    cfg.lr_decay_start = j.value("lr_decay_start", cfg.lr_decay_start);
    cfg.perturbation_c = j.value("perturbation_c", cfg.perturbation_c);
    cfg.batch_small = j.value("batch_small", cfg.batch_small);
    cfg.batch_large = j.value("batch_large", cfg.batch_large);
    cfg.batch_switch_epoch = j.value("batch_switch_epoch", cfg.batch_switch_epoch);
    cfg.weights.start_epoch = j.value("weight_start_epoch", cfg.weights.start_epoch);
    cfg.weights.rate = j.value("weight_rate", cfg.weights.rate);
    cfg.weights.mode = weight_mode_from(j.value("weight_mode", std::string("continuous")));
    if (j.contains("mmd_bandwidths"))
        cfg.mmd_bandwidths = j.at("mmd_bandwidths").get<std::vector<double>>();
    cfg.reference_full_set = j.value("reference_full_set", cfg.reference_full_set);
    cfg.common_random_numbers = j.value("common_random_numbers", cfg.common_random_numbers);
    cfg.noise = noise_from_config(j.contains("noise") ? j.at("noise") : json(), n_qubits);
    if (j.contains("noise_schedule")) {
        for (const auto& entry : j.at("noise_schedule")) {
            const int epoch = entry.at("epoch").get<int>();
            cfg.noise_schedule.emplace_back(epoch, noise_from_config(entry.at("model"), n_qubits));
        }
        std::sort(cfg.noise_schedule.begin(), cfg.noise_schedule.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    return cfg;
}

struct ResolvedData {
    data::ShowerDataset train;
    data::ShowerDataset test;
};

/// "dataset": {"path": f} | {"train_path": a, "test_path": b}
///          | {"synthetic": {...}, "seed": s, "split": {"train": n, "test": m}}
ResolvedData resolve_datasets(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("dataset config must be an object");
    if (j.contains("path")) {
        auto whole = data::load_dataset(j.at("path").get<std::string>());
        return {whole, whole};
    }
    if (j.contains("train_path")) {
        return {data::load_dataset(j.at("train_path").get<std::string>()),
                data::load_dataset(j.at("test_path").get<std::string>())};
    }
    if (j.contains("synthetic")) {
        const auto params = data::SynthParams::from_json(j.at("synthetic").dump());
        const auto seed = j.value("seed", 0ULL);
        auto whole = data::synth_generate(params, seed);
        if (j.contains("split")) {
            const auto& sp = j.at("split");
            auto split = data::split_dataset(whole, sp.value("train", 1000), sp.value("test", 980),
                                             util::derive_seed(seed, 1));
            return {std::move(split.train), std::move(split.test)};
        }
        return {whole, whole};
    }
    throw std::invalid_argument("dataset config needs 'path', 'train_path'/'test_path' or 'synthetic'");
}

void write_loss_history(const fs::path& path, const std::vector<train::EpochRecord>& history) {
    std::ostringstream out;
    out << "epoch,mmd_unweighted,corr_unweighted,w_mmd,w_corr,total\n";
    for (const auto& r : history) {
        out << r.epoch << ',' << util::format_double(r.mmd) << ',' << util::format_double(r.corr)
            << ',' << util::format_double(r.w_mmd) << ',' << util::format_double(r.w_corr) << ','
            << util::format_double(r.total) << '\n';
    }
    write_text(path, out.str());
}

void write_images_csv(const fs::path& path, const util::Matrix& images) {
    std::ostringstream out;
    std::vector<std::string> header;
    for (std::size_t j = 0; j < images.cols(); ++j) header.push_back("p" + std::to_string(j));
    util::write_csv_row(out, header);
    for (std::size_t i = 0; i < images.rows(); ++i) util::write_csv_row(out, images.row(i));
    write_text(path, out.str());
}

void write_matrix_csv(const fs::path& path, const util::Matrix& m) {
    std::ostringstream out;
    std::vector<std::string> header;
    for (std::size_t j = 0; j < m.cols(); ++j) header.push_back("c" + std::to_string(j));
    util::write_csv_row(out, header);
    for (std::size_t i = 0; i < m.rows(); ++i) util::write_csv_row(out, m.row(i));
    write_text(path, out.str());
}

json encoding_to_json(const codec::EncodingConfig& enc) {
    json e;
    e["n_pixels"] = enc.n_pixels;
    e["pixel_std"] = enc.pixel_std;
    e["global_factor_min"] = enc.global_factor_min;
    e["global_factor_max"] = enc.global_factor_max;
    e["e_min"] = enc.e_min;
    e["e_max"] = enc.e_max;
    e["theta_max"] = enc.theta_max;
    e["shots"] = enc.shots;
    return e;
}

codec::EncodingConfig encoding_from_json(const json& e) {
    codec::EncodingConfig enc;
    enc.n_pixels = e.at("n_pixels").get<int>();
    enc.pixel_std = e.at("pixel_std").get<std::vector<double>>();
    enc.global_factor_min = e.value("global_factor_min", enc.global_factor_min);
    enc.global_factor_max = e.value("global_factor_max", enc.global_factor_max);
    enc.e_min = e.value("e_min", enc.e_min);
    enc.e_max = e.value("e_max", enc.e_max);
    enc.theta_max = e.value("theta_max", enc.theta_max);
    enc.shots = e.value("shots", enc.shots);
    return enc;
}

}  // namespace

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
    json j;
    j["arch"] = ckpt.arch;
    j["n_qubits"] = ckpt.n_qubits;
    j["params"] = ckpt.params;
    j["epoch"] = ckpt.epoch;
    j["seed"] = ckpt.seed;
    j["encoding"] = encoding_to_json(ckpt.encoding);
    j["config_hash"] = ckpt.config_hash;
    write_text(path, j.dump(2) + "\n");
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
    json j = json::parse(in);
    Checkpoint c;
    c.arch = j.at("arch").get<std::string>();
    c.n_qubits = j.at("n_qubits").get<int>();
    c.params = j.at("params").get<std::vector<double>>();
    c.epoch = j.value("epoch", 0);
    c.seed = j.value("seed", 0ULL);
    c.encoding = encoding_from_json(j.at("encoding"));
    c.config_hash = j.value("config_hash", std::string());
    return c;
}

void cmd_train(const std::string& config_json, const std::string& out_dir) {
    const json j = parse_config(config_json);
    const fs::path dir = prepare_out_dir(out_dir);

    const std::string arch = j.value("arch", std::string("MERA-up"));
    const int n_qubits = j.value("n_qubits", 8);
    const auto circuit = circuits::build_architecture(arch, n_qubits);
    if (!j.contains("dataset")) throw std::invalid_argument("train config needs 'dataset'");
    const ResolvedData datasets = resolve_datasets(j.at("dataset"));
    if (static_cast<int>(datasets.train.n_pixels()) != n_qubits)
        throw std::invalid_argument("dataset pixel count does not match n_qubits");

    const train::TrainConfig cfg = train_config_from(j, n_qubits);
    const std::string config_hash = fnv1a_hex(j.dump());
    const int trials = j.value("trials", 1);
    const codec::EncodingConfig enc = train::encoding_for(datasets.train, cfg.shots);

    auto checkpoint_of = [&](const train::TrainState& state) {
        Checkpoint c;
        c.arch = arch;
        c.n_qubits = n_qubits;
        c.params = state.params;
        c.epoch = state.epoch;
        c.seed = state.seed;
        c.encoding = enc;
        c.config_hash = config_hash;
        return c;
    };

    if (trials <= 1) {
        const train::TrainState state = train::train(circuit, datasets.train, cfg);
        write_loss_history(dir / "loss_history.csv", state.history);
        save_checkpoint(checkpoint_of(state), (dir / "checkpoint.json").string());
    } else {
        train::RepeatConfig rep;
        rep.n_trials = trials;
        rep.drop_extremes = j.value("drop_extremes", 0);
        rep.n_eval_images = j.value("eval_images", 980);
        rep.threads = j.value("threads", 1u);
        const train::TrialStats stats =
            train::repeat_trials(circuit, datasets.train, datasets.test, cfg, rep);

        std::ostringstream summary;
        summary << "trial,shape_mse\n";
        std::size_t best = 0;
        for (std::size_t t = 0; t < stats.mse.size(); ++t) {
            summary << t << ',' << util::format_double(stats.mse[t]) << '\n';
            if (stats.mse[t] < stats.mse[best]) best = t;
        }
        write_text(dir / "trials_summary.csv", summary.str());
        json s;
        s["mse_mean"] = stats.mean;
        s["mse_std"] = stats.stddev;
        s["n_trials"] = trials;
        s["dropped_per_side"] = rep.drop_extremes;
        s["best_trial"] = best;
        write_text(dir / "trials_stats.json", s.dump(2) + "\n");

        for (std::size_t t = 0; t < stats.states.size(); ++t) {
            char name[32];
            std::snprintf(name, sizeof(name), "trial_%02zu", t);
            const fs::path tdir = dir / name;
            fs::create_directories(tdir);
            write_loss_history(tdir / "loss_history.csv", stats.states[t].history);
            save_checkpoint(checkpoint_of(stats.states[t]), (tdir / "checkpoint.json").string());
        }
        save_checkpoint(checkpoint_of(stats.states[best]), (dir / "checkpoint.json").string());
        write_loss_history(dir / "loss_history.csv", stats.states[best].history);
    }
    write_manifest(dir, "train", j);
}

void cmd_generate(const std::string& config_json, const std::string& out_dir) {
    const json j = parse_config(config_json);
    const fs::path dir = prepare_out_dir(out_dir);
    if (!j.contains("checkpoint")) throw std::invalid_argument("generate config needs 'checkpoint'");
    const Checkpoint ckpt = load_checkpoint(j.at("checkpoint").get<std::string>());

    codec::EncodingConfig enc = ckpt.encoding;
    if (j.contains("shots")) enc.shots = j.at("shots").get<long>();
    const int n_images = j.value("n_images", 980);
    const auto seed = j.value("seed", 0ULL);
    const auto circuit = circuits::build_architecture(ckpt.arch, ckpt.n_qubits);
    const sim::NoiseModel noise =
        noise_from_config(j.contains("noise") ? j.at("noise") : json(), ckpt.n_qubits);

    const util::Matrix images =
        codec::generate_images(circuit, ckpt.params, enc, n_images, noise, seed);
    write_images_csv(dir / "images.csv", images);

    json meta;
    meta["seed"] = seed;
    meta["shots"] = enc.shots;
    meta["noise_label"] = noise.label();
    meta["n_images"] = n_images;
    meta["arch"] = ckpt.arch;
    write_text(dir / "metadata.json", meta.dump(2) + "\n");
    write_manifest(dir, "generate", j);
}

void cmd_evaluate(const std::string& config_json, const std::string& out_dir) {
    const json j = parse_config(config_json);
    const fs::path dir = prepare_out_dir(out_dir);
    if (!j.contains("generated") || !j.contains("reference"))
        throw std::invalid_argument("evaluate config needs 'generated' and 'reference'");
    const double e_max = j.value("e_max", 0.6);
    const auto gen = data::load_dataset(j.at("generated").get<std::string>(), e_max);
    const auto ref = data::load_dataset(j.at("reference").get<std::string>(), e_max);
    const auto bins = j.value("bins", std::size_t{25});
    const int k = j.value("kmeans_k", 4);
    const auto seed = j.value("seed", 0ULL);

    const eval::EvalReport report = eval::evaluate(gen.samples, ref.samples, bins, e_max, k, seed);
    write_text(dir / "eval_report.json", eval::report_to_json(report) + "\n");

    {
        std::ostringstream out;
        out << "pixel,mean_gen,mean_ref\n";
        const auto mg = util::column_means(gen.samples);
        const auto mr = util::column_means(ref.samples);
        for (std::size_t p = 0; p < mg.size(); ++p)
            out << p << ',' << util::format_double(mg[p]) << ',' << util::format_double(mr[p])
                << '\n';
        write_text(dir / "shape.csv", out.str());
    }
    write_matrix_csv(dir / "corr_gen.csv", report.correlation.corr_gen);
    write_matrix_csv(dir / "corr_ref.csv", report.correlation.corr_ref);
    {
        std::ostringstream out;
        out << "bin_lo,bin_hi,count_gen,count_ref\n";
        const auto& hg = report.esum_gen.hist;
        const auto& hr = report.esum_ref.hist;
        for (std::size_t b = 0; b + 1 < hg.edges.size(); ++b)
            out << util::format_double(hg.edges[b]) << ',' << util::format_double(hg.edges[b + 1])
                << ',' << util::format_double(hg.counts[b]) << ','
                << util::format_double(hr.counts[b]) << '\n';
        write_text(dir / "esum_hist.csv", out.str());
    }
    {
        std::ostringstream out;
        out << "set,cluster";
        for (std::size_t p = 0; p < gen.n_pixels(); ++p) out << ",p" << p;
        out << '\n';
        for (int c = 0; c < k; ++c) {
            out << "gen," << c;
            for (std::size_t p = 0; p < gen.n_pixels(); ++p)
                out << ',' << util::format_double(report.clusters_gen.centroids(
                           static_cast<std::size_t>(c), p));
            out << '\n';
        }
        for (int c = 0; c < k; ++c) {
            out << "ref," << c;
            for (std::size_t p = 0; p < ref.n_pixels(); ++p)
                out << ',' << util::format_double(report.clusters_ref.centroids(
                           static_cast<std::size_t>(c), p));
            out << '\n';
        }
        write_text(dir / "clusters.csv", out.str());
    }
    {
        std::ostringstream out;
        out << "pixel,bin_lo,bin_hi,count_gen,count_ref\n";
        for (std::size_t p = 0; p < report.pixel_hists.gen.size(); ++p) {
            const auto& hg = report.pixel_hists.gen[p];
            const auto& hr = report.pixel_hists.ref[p];
            for (std::size_t b = 0; b + 1 < hg.edges.size(); ++b)
                out << p << ',' << util::format_double(hg.edges[b]) << ','
                    << util::format_double(hg.edges[b + 1]) << ','
                    << util::format_double(hg.counts[b]) << ',' << util::format_double(hr.counts[b])
                    << '\n';
        }
        write_text(dir / "pixel_hists.csv", out.str());
    }
    write_manifest(dir, "evaluate", j);
}

void cmd_circuit_report(const std::string& config_json, const std::string& out_dir) {
    const json j = parse_config(config_json);
    const fs::path dir = prepare_out_dir(out_dir);
    metrics::ReportConfig cfg;
    cfg.n_qubits = j.value("n_qubits", cfg.n_qubits);
    cfg.with_metrics = j.value("metrics", cfg.with_metrics);
    cfg.n_pairs = j.value("n_pairs", cfg.n_pairs);
    cfg.n_samples = j.value("n_samples", cfg.n_samples);
    cfg.n_bins = j.value("n_bins", cfg.n_bins);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.threads = j.value("threads", cfg.threads);

    const auto rows = metrics::full_report(cfg);

    std::ostringstream out;
    out << "circuit,n_params,expressibility,expressibility_err,entanglement,entanglement_err\n";
    for (const auto& r : rows) {
        out << r.name << ',' << r.n_params;
        if (cfg.with_metrics)
            out << ',' << util::format_double(r.expressibility.value) << ','
                << util::format_double(r.expressibility.std_error) << ','
                << util::format_double(r.entanglement.value) << ','
                << util::format_double(r.entanglement.std_error);
        else
            out << ",,,,";
        out << '\n';
    }
    write_text(dir / "circuit_report.csv", out.str());

    json report;
    report["n_qubits"] = cfg.n_qubits;
    json arr = json::array();
    for (const auto& r : rows) {
        json row;
        row["name"] = r.name;
        row["n_params"] = r.n_params;
        if (cfg.with_metrics) {
            row["expressibility"] = r.expressibility.value;
            row["expressibility_err"] = r.expressibility.std_error;
            row["entanglement"] = r.entanglement.value;
            row["entanglement_err"] = r.entanglement.std_error;
        }
        row["circuit"] =
            json::parse(circuits::circuit_to_json(circuits::build_architecture(r.name, cfg.n_qubits)));
        arr.push_back(std::move(row));
    }
    report["circuits"] = std::move(arr);
    write_text(dir / "circuit_report.json", report.dump(2) + "\n");
    write_manifest(dir, "circuit-report", j);
}

void cmd_noise_sweep(const std::string& config_json, const std::string& out_dir) {
    const json j = parse_config(config_json);
    const fs::path dir = prepare_out_dir(out_dir);
    const std::string mode = j.value("mode", std::string("inference"));
    if (mode != "inference" && mode != "training")
        throw std::invalid_argument("noise sweep mode must be 'inference' or 'training'");
    if (!j.contains("dataset")) throw std::invalid_argument("noise sweep config needs 'dataset'");
    const ResolvedData datasets = resolve_datasets(j.at("dataset"));

    std::vector<double> levels = {0.0, 0.005, 0.01, 0.015, 0.02, 0.03, 0.05, 0.08, 0.10, 0.15};
    if (j.contains("levels")) levels = j.at("levels").get<std::vector<double>>();
    std::vector<json> configs = {json("readout"), json("cnot"), json("combined")};
    if (j.contains("configs")) configs.assign(j.at("configs").begin(), j.at("configs").end());

    const auto seed = j.value("seed", 0ULL);
    const unsigned threads = j.value("threads", 1u);
    const int n_images = j.value("images", 20);
    const int repeats = j.value("repeats", 10);
    const int n_qubits = static_cast<int>(datasets.test.n_pixels());

    struct Point {
        std::string config_name;
        sim::NoiseModel model;
        double level = 0.0;
    };
    std::vector<Point> points;
    for (const auto& cfg_entry : configs) {
        if (cfg_entry.is_string()) {
            const std::string name = cfg_entry.get<std::string>();
            for (double level : levels) {
                Point p;
                p.config_name = name;
                p.level = level;
                if (name == "readout")
                    p.model = sim::NoiseModel::uniform(n_qubits, level, 0.0, name);
                else if (name == "cnot")
                    p.model = sim::NoiseModel::uniform(n_qubits, 0.0, level, name);
                else if (name == "combined")
                    p.model = sim::NoiseModel::uniform(n_qubits, level, level, name);
                else
                    throw std::invalid_argument("unknown sweep config: " + name);
                points.push_back(std::move(p));
            }
        } else if (cfg_entry.is_object()) {
            Point p;
            p.model = noise_from_config(cfg_entry.contains("file") ? cfg_entry.at("file")
                                                                   : cfg_entry.at("model"),
                                        n_qubits);
            p.config_name = p.model.label().empty() ? "from-file" : p.model.label();
            // Placement rule for measured per-qubit models: the average of
            // the mean readout and mean CX error.
            p.level = p.model.summary_level();
            points.push_back(std::move(p));
        } else {
            throw std::invalid_argument("sweep config entries must be strings or objects");
        }
    }

    std::vector<double> mse_mean(points.size(), 0.0), mse_std(points.size(), 0.0);

    if (mode == "inference") {
        if (!j.contains("checkpoint"))
            throw std::invalid_argument("inference noise sweep needs 'checkpoint'");
        const Checkpoint ckpt = load_checkpoint(j.at("checkpoint").get<std::string>());
        const auto circuit = circuits::build_architecture(ckpt.arch, ckpt.n_qubits);
        util::parallel_for(points.size(), threads, [&](std::size_t pi) {
            std::vector<double> mses(static_cast<std::size_t>(repeats));
            for (int r = 0; r < repeats; ++r) {
                const auto rep_seed = util::derive_seed(seed, pi * 131071ULL + static_cast<std::uint64_t>(r));
                const auto images = codec::generate_images(circuit, ckpt.params, ckpt.encoding,
                                                           n_images, points[pi].model, rep_seed);
                mses[static_cast<std::size_t>(r)] =
                    eval::shower_shape_mse(images, datasets.test.samples);
            }
            mse_mean[pi] = util::mean(mses);
            mse_std[pi] = util::stddev(mses);
        });
    } else {
        const std::string arch = j.value("arch", std::string("MERA-up"));
        const auto circuit = circuits::build_architecture(arch, n_qubits);
        const int trials = j.value("trials", 10);
        train::TrainConfig base = train_config_from(j, n_qubits);
        for (std::size_t pi = 0; pi < points.size(); ++pi) {
            train::TrainConfig cfg = base;
            cfg.noise = points[pi].model;
            cfg.seed = util::derive_seed(seed, 90000ULL + pi);
            train::RepeatConfig rep;
            rep.n_trials = trials;
            rep.drop_extremes = 0;
            rep.n_eval_images = n_images;
            rep.threads = threads;
            const auto stats =
                train::repeat_trials(circuit, datasets.train, datasets.test, cfg, rep);
            mse_mean[pi] = stats.mean;
            mse_std[pi] = stats.stddev;
        }
    }

    std::ostringstream out;
    out << "noise_level,config,mse_mean,mse_std,n\n";
    const int n_per_point = mode == "inference" ? repeats : j.value("trials", 10);
    for (std::size_t pi = 0; pi < points.size(); ++pi)
        out << util::format_double(points[pi].level) << ',' << points[pi].config_name << ','
            << util::format_double(mse_mean[pi]) << ',' << util::format_double(mse_std[pi]) << ','
            << n_per_point << '\n';
    write_text(dir / "sweep.csv", out.str());
    write_manifest(dir, "noise-sweep", j);
}

void cmd_data_gen(const std::string& config_json, const std::string& out_dir) {
    const json j = parse_config(config_json);
    const fs::path dir = prepare_out_dir(out_dir);
    const auto params = data::SynthParams::from_json(
        j.contains("synthetic") ? j.at("synthetic").dump() : std::string("{}"));
    const auto seed = j.value("seed", 0ULL);
    const auto dataset = data::synth_generate(params, seed);
    data::save_dataset(dataset, (dir / j.value("out_name", std::string("dataset.csv"))).string());

    if (j.contains("split")) {
        const auto& sp = j.at("split");
        const auto split = data::split_dataset(dataset, sp.value("train", 1000),
                                               sp.value("test", 980), util::derive_seed(seed, 1));
        data::save_dataset(split.train, (dir / "train.csv").string());
        data::save_dataset(split.test, (dir / "test.csv").string());
    }

    json stats;
    stats["n_samples"] = dataset.size();
    stats["pixel_mean"] = dataset.pixel_mean;
    stats["pixel_std"] = dataset.pixel_std;
    json corr = json::array();
    for (std::size_t i = 0; i < dataset.corr.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < dataset.corr.cols(); ++k) row.push_back(dataset.corr(i, k));
        corr.push_back(std::move(row));
    }
    stats["corr"] = std::move(corr);
    write_text(dir / "stats.json", stats.dump(2) + "\n");
    write_manifest(dir, "data-gen", j);
}

}  // namespace qag::run
