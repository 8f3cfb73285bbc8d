// Exercises the public C surface of libqag: opaque handles, error codes,
// and the run entry points used by the CLI.

#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "qag/qag.h"

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("qag_capi_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("version and error strings are always available") {
    CHECK(qag_version() != nullptr);
    CHECK(std::strlen(qag_version()) > 0);
    CHECK(qag_last_error() != nullptr);
}

TEST_CASE("circuit build, parameter counts, and json serialization") {
    qag_circuit* c = nullptr;
    REQUIRE(qag_circuit_build("MERA-up", 8, &c) == QAG_OK);
    CHECK(qag_circuit_param_count(c) == 23);

    char* js = nullptr;
    REQUIRE(qag_circuit_to_json(c, &js) == QAG_OK);
    CHECK(std::string(js).find("\"n_params\":23") != std::string::npos);
    qag_string_free(js);
    qag_circuit_free(c);

    qag_circuit* bad = nullptr;
    CHECK(qag_circuit_build("NoSuch", 8, &bad) == QAG_ERR_INVALID_ARGUMENT);
    CHECK(std::strlen(qag_last_error()) > 0);
    CHECK(qag_circuit_build(nullptr, 8, &bad) == QAG_ERR_INVALID_ARGUMENT);
    CHECK(qag_circuit_param_count(nullptr) == -1);
}

TEST_CASE("dataset synthesis, stats, and csv io through the C API") {
    TempDir tmp;
    qag_dataset* d = nullptr;
    REQUIRE(qag_dataset_synthesize(R"({"n_samples": 120})", 5, &d) == QAG_OK);
    CHECK(qag_dataset_num_samples(d) == 120);
    CHECK(qag_dataset_num_pixels(d) == 8);

    std::vector<double> mean(8), stddev(8);
    REQUIRE(qag_dataset_pixel_stats(d, mean.data(), stddev.data(), 8) == QAG_OK);
    for (double m : mean) CHECK(m > 0.0);
    CHECK(qag_dataset_pixel_stats(d, mean.data(), stddev.data(), 4) == QAG_ERR_INVALID_ARGUMENT);

    const std::string csv = (tmp.path / "d.csv").string();
    REQUIRE(qag_dataset_save_csv(d, csv.c_str()) == QAG_OK);
    qag_dataset_free(d);

    qag_dataset* back = nullptr;
    REQUIRE(qag_dataset_load_csv(csv.c_str(), &back) == QAG_OK);
    CHECK(qag_dataset_num_samples(back) == 120);
    qag_dataset_free(back);

    qag_dataset* missing = nullptr;
    CHECK(qag_dataset_load_csv((tmp.path / "absent.csv").string().c_str(), &missing) == QAG_ERR_IO);
    CHECK(qag_dataset_synthesize("not json", 1, &missing) == QAG_ERR_PARSE);
}

TEST_CASE("noise model parsing reports invalid probabilities") {
    qag_noise_model* m = nullptr;
    REQUIRE(qag_noise_model_parse(R"({"readout": 0.05, "cx": 0.01})", 4, &m) == QAG_OK);
    qag_noise_model_free(m);
    CHECK(qag_noise_model_parse(R"({"readout": 2.0})", 4, &m) == QAG_ERR_INVALID_ARGUMENT);
}

TEST_CASE("direct generation fills the caller's buffer deterministically") {
    qag_circuit* c = nullptr;
    REQUIRE(qag_circuit_build("MERA-up", 4, &c) == QAG_OK);
    const int n_params = qag_circuit_param_count(c);
    std::vector<double> params(static_cast<std::size_t>(n_params), 0.4);
    const char* enc = R"({"n_pixels": 4, "pixel_std": [0.04, 0.04, 0.04, 0.04], "shots": 256})";

    std::vector<double> images(5 * 4, -1.0);
    REQUIRE(qag_generate(c, params.data(), params.size(), enc, nullptr, 5, 11, images.data()) ==
            QAG_OK);
    for (double v : images) {
        CHECK(v >= 0.0);
        CHECK(v <= 0.6);
    }
    std::vector<double> again(5 * 4, -2.0);
    REQUIRE(qag_generate(c, params.data(), params.size(), enc, nullptr, 5, 11, again.data()) ==
            QAG_OK);
    CHECK(images == again);

    CHECK(qag_generate(c, params.data(), params.size() - 1, enc, nullptr, 5, 11, images.data()) ==
          QAG_ERR_INVALID_ARGUMENT);
    qag_circuit_free(c);
}

TEST_CASE("run entry points drive a full train/generate/evaluate cycle") {
    TempDir tmp;
    const std::string data_dir = (tmp.path / "data").string();
    REQUIRE(qag_run_data_gen(
                R"({"synthetic": {"n_samples": 150}, "seed": 3, "split": {"train": 90, "test": 50}})",
                data_dir.c_str()) == QAG_OK);

    const std::string train_cfg = R"({"arch": "MERA-up", "epochs": 4, "shots": 128, "seed": 2,
        "batch_switch_epoch": 2, "batch_large": 4, "weight_start_epoch": 2,
        "dataset": {"train_path": ")" + data_dir + R"(/train.csv", "test_path": ")" + data_dir +
                                  R"(/test.csv"}})";
    const std::string train_dir = (tmp.path / "train").string();
    REQUIRE(qag_run_train(train_cfg.c_str(), train_dir.c_str()) == QAG_OK);

    const std::string gen_cfg = R"({"checkpoint": ")" + train_dir + R"(/checkpoint.json",
        "n_images": 20, "seed": 6})";
    const std::string gen_dir = (tmp.path / "gen").string();
    REQUIRE(qag_run_generate(gen_cfg.c_str(), gen_dir.c_str()) == QAG_OK);

    const std::string eval_cfg = R"({"generated": ")" + gen_dir + R"(/images.csv",
        "reference": ")" + data_dir + R"(/test.csv"})";
    REQUIRE(qag_run_evaluate(eval_cfg.c_str(), (tmp.path / "eval").string().c_str()) == QAG_OK);
    CHECK(fs::exists(tmp.path / "eval" / "eval_report.json"));

    REQUIRE(qag_run_circuit_report(R"({"n_qubits": 8})",
                                   (tmp.path / "report").string().c_str()) == QAG_OK);
    CHECK(fs::exists(tmp.path / "report" / "circuit_report.csv"));

    CHECK(qag_run_train(R"({"epochs": 1})", (tmp.path / "x").string().c_str()) ==
          QAG_ERR_INVALID_ARGUMENT);  // missing dataset
    CHECK(qag_run_generate(R"({)", (tmp.path / "y").string().c_str()) == QAG_ERR_PARSE);
}
