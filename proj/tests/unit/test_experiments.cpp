#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <algorithm>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "qag/data/dataset.hpp"
#include "qag/run/experiments.hpp"
#include "qag/util/csv.hpp"

using namespace qag;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const char* tag) {
        path = fs::temp_directory_path() /
               (std::string("qag_run_") + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string sub(const char* name) const { return (path / name).string(); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// sweep.csv rows: noise_level,config,mse_mean,mse_std,n (config is text).
struct SweepRow {
    double level;
    std::string config;
    double mse_mean;
    double mse_std;
};

std::vector<SweepRow> read_sweep(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in);
    std::vector<SweepRow> rows;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        SweepRow r;
        std::getline(ss, cell, ',');
        r.level = std::stod(cell);
        std::getline(ss, r.config, ',');
        std::getline(ss, cell, ',');
        r.mse_mean = std::stod(cell);
        std::getline(ss, cell, ',');
        r.mse_std = std::stod(cell);
        rows.push_back(std::move(r));
    }
    return rows;
}

const char* kSmallData =
    R"({"synthetic": {"n_samples": 160}, "seed": 4, "split": {"train": 100, "test": 50}})";

std::string train_config(const std::string& extra = "") {
    std::string cfg = R"({"arch": "MERA-up", "epochs": 6, "shots": 128, "seed": 21,
        "batch_switch_epoch": 3, "batch_large": 5, "weight_start_epoch": 3,
        "dataset": )" + std::string(kSmallData);
    if (!extra.empty()) cfg += "," + extra;
    cfg += "}";
    return cfg;
}

}  // namespace

TEST_CASE("data-gen writes dataset, split, stats, and manifest deterministically") {
    TempDir tmp("datagen");
    const std::string cfg =
        R"({"synthetic": {"n_samples": 300}, "seed": 9, "split": {"train": 150, "test": 100}})";
    run::cmd_data_gen(cfg, tmp.sub("a"));
    run::cmd_data_gen(cfg, tmp.sub("b"));
    for (const char* name : {"dataset.csv", "train.csv", "test.csv", "stats.json", "manifest.json"}) {
        CHECK(slurp(fs::path(tmp.sub("a")) / name) == slurp(fs::path(tmp.sub("b")) / name));
    }
    const auto train_set = data::load_dataset((fs::path(tmp.sub("a")) / "train.csv").string());
    CHECK(train_set.size() == 150);
}

TEST_CASE("train writes a checkpoint and one history row per epoch") {
    TempDir tmp("train");
    run::cmd_train(train_config(), tmp.sub("run"));
    const auto hist = util::read_csv((fs::path(tmp.sub("run")) / "loss_history.csv").string());
    CHECK(hist.rows.size() == 6);
    CHECK(hist.header == std::vector<std::string>{"epoch", "mmd_unweighted", "corr_unweighted",
                                                  "w_mmd", "w_corr", "total"});
    const auto ckpt = run::load_checkpoint((fs::path(tmp.sub("run")) / "checkpoint.json").string());
    CHECK(ckpt.arch == "MERA-up");
    CHECK(ckpt.params.size() == 23);
    CHECK(ckpt.epoch == 6);
    CHECK(ckpt.encoding.shots == 128);
}

TEST_CASE("zero-epoch train leaves an initialization checkpoint and empty history") {
    TempDir tmp("train0");
    run::cmd_train(R"({"epochs": 0, "seed": 3, "dataset": )" + std::string(kSmallData) + "}",
                   tmp.sub("run"));
    const auto hist = util::read_csv((fs::path(tmp.sub("run")) / "loss_history.csv").string());
    CHECK(hist.rows.empty());
    const auto ckpt = run::load_checkpoint((fs::path(tmp.sub("run")) / "checkpoint.json").string());
    CHECK(ckpt.epoch == 0);
}

TEST_CASE("train reruns are byte-identical under a fixed seed") {
    TempDir tmp("trainrep");
    run::cmd_train(train_config(), tmp.sub("a"));
    run::cmd_train(train_config(), tmp.sub("b"));
    for (const char* name : {"loss_history.csv", "checkpoint.json", "manifest.json"})
        CHECK(slurp(fs::path(tmp.sub("a")) / name) == slurp(fs::path(tmp.sub("b")) / name));
}

TEST_CASE("multi-trial train writes per-trial outputs and a summary") {
    TempDir tmp("trials");
    run::cmd_train(train_config(R"("trials": 3, "eval_images": 8, "threads": 2)"), tmp.sub("run"));
    const auto summary = util::read_csv((fs::path(tmp.sub("run")) / "trials_summary.csv").string());
    CHECK(summary.rows.size() == 3);
    for (int t = 0; t < 3; ++t) {
        char name[32];
        std::snprintf(name, sizeof(name), "trial_%02d", t);
        CHECK(fs::exists(fs::path(tmp.sub("run")) / name / "checkpoint.json"));
    }
    const json stats = json::parse(slurp(fs::path(tmp.sub("run")) / "trials_stats.json"));
    CHECK(stats.contains("mse_mean"));
}

TEST_CASE("generate produces a loadable image csv plus metadata") {
    TempDir tmp("gen");
    run::cmd_train(train_config(), tmp.sub("train"));
    const std::string ckpt = (fs::path(tmp.sub("train")) / "checkpoint.json").string();

    const std::string cfg = R"({"checkpoint": ")" + ckpt + R"(", "n_images": 12, "seed": 5})";
    run::cmd_generate(cfg, tmp.sub("gen"));
    const auto images = data::load_dataset((fs::path(tmp.sub("gen")) / "images.csv").string());
    CHECK(images.size() == 12);
    const json meta = json::parse(slurp(fs::path(tmp.sub("gen")) / "metadata.json"));
    CHECK(meta.at("shots").get<long>() == 128);
    CHECK(meta.at("n_images").get<int>() == 12);

    run::cmd_generate(cfg, tmp.sub("gen2"));
    CHECK(slurp(fs::path(tmp.sub("gen")) / "images.csv") ==
          slurp(fs::path(tmp.sub("gen2")) / "images.csv"));
}

TEST_CASE("evaluate against itself reports optimal metrics and plot csvs") {
    TempDir tmp("eval");
    run::cmd_data_gen(R"({"synthetic": {"n_samples": 120}, "seed": 2})", tmp.sub("data"));
    const std::string csv = (fs::path(tmp.sub("data")) / "dataset.csv").string();
    run::cmd_evaluate(R"({"generated": ")" + csv + R"(", "reference": ")" + csv + R"("})",
                      tmp.sub("eval"));
    const json report = json::parse(slurp(fs::path(tmp.sub("eval")) / "eval_report.json"));
    CHECK(report.at("shape_mse").get<double>() == 0.0);
    CHECK(report.at("corr_sign_agreement").get<double>() == 1.0);
    for (const char* name :
         {"shape.csv", "corr_gen.csv", "corr_ref.csv", "esum_hist.csv", "clusters.csv",
          "pixel_hists.csv", "manifest.json"})
        CHECK(fs::exists(fs::path(tmp.sub("eval")) / name));
}

TEST_CASE("circuit report emits the reference parameter counts") {
    TempDir tmp("report");
    run::cmd_circuit_report(R"({"n_qubits": 8})", tmp.sub("r"));
    const std::string csv = slurp(fs::path(tmp.sub("r")) / "circuit_report.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);  // header + 9 circuits
    CHECK(csv.find("MERA-up,23") != std::string::npos);
    const json report = json::parse(slurp(fs::path(tmp.sub("r")) / "circuit_report.json"));
    const int expected[] = {16, 29, 58, 45, 90, 23, 46, 46, 92};
    for (std::size_t i = 0; i < 9; ++i) {
        CHECK(report.at("circuits")[i].at("n_params").get<int>() == expected[i]);
        CHECK(report.at("circuits")[i].contains("circuit"));
    }
}

TEST_CASE("inference noise sweep: zero level matches noiseless, csv is stable") {
    TempDir tmp("sweep");
    run::cmd_train(train_config(), tmp.sub("train"));
    const std::string ckpt = (fs::path(tmp.sub("train")) / "checkpoint.json").string();
    const std::string cfg = R"({"mode": "inference", "checkpoint": ")" + ckpt +
                            R"(", "dataset": )" + kSmallData +
                            R"(, "levels": [0.0, 0.1], "configs": ["readout", "combined"],
                                "images": 6, "repeats": 3, "seed": 8, "threads": 2})";
    run::cmd_noise_sweep(cfg, tmp.sub("a"));
    run::cmd_noise_sweep(cfg, tmp.sub("b"));
    CHECK(slurp(fs::path(tmp.sub("a")) / "sweep.csv") == slurp(fs::path(tmp.sub("b")) / "sweep.csv"));

    const auto sweep = read_sweep(fs::path(tmp.sub("a")) / "sweep.csv");
    REQUIRE(sweep.size() == 4);
    CHECK(sweep[0].config == "readout");
    CHECK(sweep[0].level == 0.0);
    CHECK(sweep[1].level == 0.1);
    CHECK(sweep[2].config == "combined");
    for (const auto& row : sweep) {
        CHECK(row.mse_mean > 0.0);
        CHECK(row.mse_std >= 0.0);
    }
}

TEST_CASE("noise sweep accepts a measured per-qubit model and places it by its mean level") {
    TempDir tmp("sweepfile");
    run::cmd_train(train_config(), tmp.sub("train"));
    const std::string ckpt = (fs::path(tmp.sub("train")) / "checkpoint.json").string();
    const std::string cfg = R"({"mode": "inference", "checkpoint": ")" + ckpt +
                            R"(", "dataset": )" + kSmallData +
                            R"(, "configs": [{"model": {"label": "device",
                                 "readout_error": [0.02,0.02,0.02,0.02,0.02,0.08,0.02,0.02],
                                 "cx_error": {"0-1": 0.01}}}],
                                "images": 4, "repeats": 2, "seed": 1})";
    run::cmd_noise_sweep(cfg, tmp.sub("run"));
    const auto sweep = read_sweep(fs::path(tmp.sub("run")) / "sweep.csv");
    REQUIRE(sweep.size() == 1);
    // mean readout = (7*0.02 + 0.08)/8 = 0.0275, mean cx = 0.01 -> level 0.01875
    CHECK(sweep[0].level == doctest::Approx(0.018750).epsilon(1e-9));
    CHECK(sweep[0].config == "device");
}

TEST_CASE("checkpoint io round-trips") {
    TempDir tmp("ckpt");
    run::Checkpoint c;
    c.arch = "TTN";
    c.n_qubits = 8;
    c.params = {0.1, -0.2, 0.3};
    c.epoch = 7;
    c.seed = 99;
    c.encoding.n_pixels = 8;
    c.encoding.pixel_std.assign(8, 0.03);
    c.config_hash = "f00";
    const std::string path = tmp.sub("c.json");
    run::save_checkpoint(c, path);
    const auto back = run::load_checkpoint(path);
    CHECK(back.arch == c.arch);
    CHECK(back.params == c.params);
    CHECK(back.epoch == 7);
    CHECK(back.encoding.pixel_std == c.encoding.pixel_std);
}
