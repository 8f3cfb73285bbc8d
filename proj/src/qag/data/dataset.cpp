#include "qag/data/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "qag/util/csv.hpp"
#include "qag/util/rng.hpp"
#include "qag/util/stats.hpp"

namespace qag::data {

using nlohmann::json;

ShowerDataset make_dataset(util::Matrix samples, std::string provenance, double e_max) {
    if (samples.rows() == 0 || samples.cols() == 0)
        throw std::invalid_argument("make_dataset: empty sample matrix");
    ShowerDataset d;
    d.samples = std::move(samples);
    d.provenance = std::move(provenance);
    d.e_max = e_max;
    d.pixel_mean = util::column_means(d.samples);
    d.pixel_std = util::column_stddevs(d.samples);
    if (d.samples.rows() >= 2) {
        d.corr = util::pearson_correlation(d.samples);
    } else {
        d.corr = util::Matrix(d.samples.cols(), d.samples.cols());
        for (std::size_t i = 0; i < d.samples.cols(); ++i) d.corr(i, i) = 1.0;
    }
    return d;
}

std::string SynthParams::to_json() const {
    json j;
    j["n_samples"] = n_samples;
    j["n_pixels"] = n_pixels;
    j["peak_position"] = peak_position;
    j["shape"] = shape;
    j["esum_mean"] = esum_mean;
    j["esum_std"] = esum_std;
    j["e_max"] = e_max;
    if (target_corr) {
        json rows = json::array();
        for (std::size_t i = 0; i < target_corr->rows(); ++i) {
            json row = json::array();
            for (std::size_t k = 0; k < target_corr->cols(); ++k) row.push_back((*target_corr)(i, k));
            rows.push_back(std::move(row));
        }
        j["target_corr"] = std::move(rows);
    }
    return j.dump();
}

SynthParams SynthParams::from_json(const std::string& json_text) {
    json j = json::parse(json_text);
    SynthParams p;
    p.n_samples = j.value("n_samples", p.n_samples);
    p.n_pixels = j.value("n_pixels", p.n_pixels);
    p.peak_position = j.value("peak_position", p.peak_position);
    p.shape = j.value("shape", p.shape);
    p.esum_mean = j.value("esum_mean", p.esum_mean);
    p.esum_std = j.value("esum_std", p.esum_std);
    p.e_max = j.value("e_max", p.e_max);
    if (j.contains("target_corr")) {
        const auto& rows = j.at("target_corr");
        util::Matrix c(rows.size(), rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size())
                throw std::invalid_argument("target_corr must be square");
            for (std::size_t k = 0; k < rows.size(); ++k) c(i, k) = rows[i][k].get<double>();
        }
        p.target_corr = std::move(c);
    }
    return p;
}

namespace {

// The eight pixels window the shower after it has already developed for
// a couple of radiation lengths; the profile is evaluated at z + kWindowShift.
constexpr double kWindowShift = 2.0;

void validate_params(const SynthParams& p) {
    if (p.n_samples < 1) throw std::invalid_argument("synth: n_samples must be >= 1");
    if (p.n_pixels < 2) throw std::invalid_argument("synth: n_pixels must be >= 2");
    if (!(p.shape > 1.0)) throw std::invalid_argument("synth: shape must be > 1");
    if (!(p.peak_position + kWindowShift > 0.0))
        throw std::invalid_argument("synth: peak position too small");
    if (!(p.esum_mean > 0.0) || !(p.esum_std >= 0.0))
        throw std::invalid_argument("synth: bad energy-sum parameters");
}

std::vector<double> raw_profile(const SynthParams& p) {
    const double beta = (p.peak_position + kWindowShift) / (p.shape - 1.0);
    std::vector<double> f(static_cast<std::size_t>(p.n_pixels));
    for (int i = 0; i < p.n_pixels; ++i) {
        const double z = static_cast<double>(i) + 0.5 + kWindowShift;
        f[static_cast<std::size_t>(i)] = std::pow(z, p.shape - 1.0) * std::exp(-z / beta);
    }
    return f;
}

std::vector<double> profile_slope(const SynthParams& p) {
    const double beta = (p.peak_position + kWindowShift) / (p.shape - 1.0);
    const auto f = raw_profile(p);
    std::vector<double> g(f.size());
    for (int i = 0; i < p.n_pixels; ++i) {
        const double z = static_cast<double>(i) + 0.5 + kWindowShift;
        g[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i)] * ((p.shape - 1.0) / z - 1.0 / beta);
    }
    return g;
}

std::vector<double> normalized(std::vector<double> v) {
    double n = 0.0;
    for (double x : v) n += x * x;
    n = std::sqrt(n);
    for (double& x : v) x /= n;
    return v;
}

// Covariance skeleton behind the built-in correlation pattern: a small
// overall-scale component along the profile, a dominant depth-shift
// component along its derivative (sign flip at the peak), and white
// per-pixel noise. Weights picked so every correlation entry is
// decisively signed and the all-ones direction largely cancels.
constexpr double kScaleWeight = 0.45;
constexpr double kShiftWeight = 1.0;
constexpr double kPixelNoise = 0.3;

util::Matrix default_sigma(const SynthParams& p) {
    const auto a = normalized(raw_profile(p));
    const auto b = normalized(profile_slope(p));
    const std::size_t d = a.size();
    util::Matrix sigma(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            sigma(i, j) = kScaleWeight * kScaleWeight * a[i] * a[j] +
                          kShiftWeight * kShiftWeight * b[i] * b[j];
    for (std::size_t i = 0; i < d; ++i) sigma(i, i) += kPixelNoise * kPixelNoise;
    return sigma;
}

util::Matrix corr_from_sigma(const util::Matrix& sigma) {
    const std::size_t d = sigma.rows();
    util::Matrix c(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            c(i, j) = sigma(i, j) / std::sqrt(sigma(i, i) * sigma(j, j));
    return c;
}

void validate_corr(const util::Matrix& c, std::size_t d) {
    if (c.rows() != d || c.cols() != d)
        throw std::invalid_argument("target_corr: wrong dimensions");
    for (std::size_t i = 0; i < d; ++i) {
        if (std::abs(c(i, i) - 1.0) > 1e-9)
            throw std::invalid_argument("target_corr: diagonal must be 1");
        for (std::size_t j = 0; j < d; ++j)
            if (std::abs(c(i, j) - c(j, i)) > 1e-9)
                throw std::invalid_argument("target_corr: must be symmetric");
    }
}

}  // namespace

std::vector<double> synth_profile(const SynthParams& p) {
    validate_params(p);
    auto f = raw_profile(p);
    const double s = std::accumulate(f.begin(), f.end(), 0.0);
    for (double& x : f) x /= s;
    return f;
}

util::Matrix synth_target_corr(const SynthParams& p) {
    validate_params(p);
    if (p.target_corr) {
        validate_corr(*p.target_corr, static_cast<std::size_t>(p.n_pixels));
        return *p.target_corr;
    }
    return corr_from_sigma(default_sigma(p));
}

std::vector<double> synth_pixel_std(const SynthParams& p) {
    validate_params(p);
    const std::size_t d = static_cast<std::size_t>(p.n_pixels);
    std::vector<double> shape(d);
    util::Matrix corr(d, d);
    if (p.target_corr) {
        validate_corr(*p.target_corr, d);
        corr = *p.target_corr;
        const auto f = synth_profile(p);
        for (std::size_t i = 0; i < d; ++i) shape[i] = std::sqrt(f[i]);
    } else {
        const auto sigma = default_sigma(p);
        corr = corr_from_sigma(sigma);
        for (std::size_t i = 0; i < d; ++i) shape[i] = std::sqrt(sigma(i, i));
    }
    double sum_var = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) sum_var += shape[i] * corr(i, j) * shape[j];
    const double lambda = p.esum_std > 0.0 ? p.esum_std / std::sqrt(sum_var) : 0.0;
    for (double& s : shape) s *= lambda;
    return shape;
}

ShowerDataset synth_generate(const SynthParams& p, std::uint64_t seed) {
    validate_params(p);
    const std::size_t d = static_cast<std::size_t>(p.n_pixels);
    const auto f = synth_profile(p);
    const auto corr = synth_target_corr(p);
    const auto s = synth_pixel_std(p);
    const util::Matrix chol = util::cholesky(corr);

    util::Matrix samples(static_cast<std::size_t>(p.n_samples), d);
    util::Rng rng(seed);
    std::vector<double> z(d);
    for (std::size_t i = 0; i < samples.rows(); ++i) {
        for (double& x : z) x = rng.normal();
        for (std::size_t a = 0; a < d; ++a) {
            double fluct = 0.0;
            for (std::size_t b = 0; b <= a; ++b) fluct += chol(a, b) * z[b];
            const double v = p.esum_mean * f[a] + s[a] * fluct;
            samples(i, a) = std::clamp(v, 0.0, p.e_max);
        }
    }
    return make_dataset(std::move(samples), "synthetic:" + p.to_json(), p.e_max);
}

ShowerDataset load_dataset(const std::string& path, double e_max) {
    const util::CsvTable table = util::read_csv(path);
    if (table.header.size() != 8)
        throw std::runtime_error(path + ": expected 8 pixel columns, got " +
                                 std::to_string(table.header.size()));
    if (table.rows.empty()) throw std::runtime_error(path + ": no data rows");
    util::Matrix samples(table.rows.size(), 8);
    long clamped = 0;
    for (std::size_t i = 0; i < table.rows.size(); ++i)
        for (std::size_t j = 0; j < 8; ++j) {
            double v = table.rows[i][j];
            if (!std::isfinite(v)) throw std::runtime_error(path + ": non-finite value");
            if (v < 0.0 || v > e_max) {
                v = std::clamp(v, 0.0, e_max);
                ++clamped;
            }
            samples(i, j) = v;
        }
    if (clamped > 0)
        std::cerr << "warning: " << path << ": clamped " << clamped
                  << " values into [0, " << e_max << "]\n";
    return make_dataset(std::move(samples), "file:" + path, e_max);
}

void save_dataset(const ShowerDataset& dataset, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    std::vector<std::string> header;
    for (std::size_t j = 0; j < dataset.n_pixels(); ++j) header.push_back("p" + std::to_string(j));
    util::write_csv_row(out, header);
    for (std::size_t i = 0; i < dataset.size(); ++i) util::write_csv_row(out, dataset.samples.row(i));
    if (!out) throw std::runtime_error("error while writing " + path);
}

Split split_dataset(const ShowerDataset& dataset, std::size_t train_n, std::size_t test_n,
                    std::uint64_t seed) {
    if (train_n + test_n > dataset.size())
        throw std::invalid_argument("split_dataset: requested " + std::to_string(train_n + test_n) +
                                    " samples from " + std::to_string(dataset.size()));
    if (train_n == 0 || test_n == 0)
        throw std::invalid_argument("split_dataset: empty split requested");
    std::vector<std::size_t> idx(dataset.size());
    std::iota(idx.begin(), idx.end(), 0);
    util::Rng rng(seed);
    for (std::size_t i = idx.size() - 1; i > 0; --i)
        std::swap(idx[i], idx[rng.uniform_int(i + 1)]);

    auto take = [&](std::size_t offset, std::size_t count, const char* tag) {
        util::Matrix m(count, dataset.n_pixels());
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = 0; j < dataset.n_pixels(); ++j)
                m(i, j) = dataset.samples(idx[offset + i], j);
        return make_dataset(std::move(m), dataset.provenance + ":" + tag, dataset.e_max);
    };
    Split s{take(0, train_n, "train"), take(train_n, test_n, "test")};
    return s;
}

}  // namespace qag::data
