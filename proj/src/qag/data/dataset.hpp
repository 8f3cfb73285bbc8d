#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qag/util/matrix.hpp"

namespace qag::data {

/// Downsampled shower images: one row per sample, one column per pixel,
/// energies in decode-range units [0, e_max]. Statistics are computed at
/// construction and kept consistent with the samples.
struct ShowerDataset {
    util::Matrix samples;
    std::vector<double> pixel_mean;
    std::vector<double> pixel_std;  // population std
    util::Matrix corr;
    std::string provenance;
    double e_max = 0.6;

    std::size_t size() const { return samples.rows(); }
    std::size_t n_pixels() const { return samples.cols(); }
};

/// Recompute the derived statistics from `samples`.
ShowerDataset make_dataset(util::Matrix samples, std::string provenance, double e_max = 0.6);

/// Parameters of the synthetic stand-in generator: a Gamma-shaped
/// longitudinal profile scaled by a Gaussian energy sum with correlated
/// per-pixel fluctuations.
struct SynthParams {
    int n_samples = 2000;
    int n_pixels = 8;
    double peak_position = 2.2;  // pixel units, mode of the profile
    double shape = 3.0;          // Gamma shape parameter alpha (> 1)
    double esum_mean = 2.2;
    double esum_std = 0.045;
    double e_max = 0.6;
    /// Optional target pixel correlation; must be PSD with unit diagonal.
    /// When absent a built-in pattern is used (one compact positively
    /// correlated pixel group, negative elsewhere).
    std::optional<util::Matrix> target_corr;

    std::string to_json() const;
    static SynthParams from_json(const std::string& json_text);
};

/// Normalized longitudinal profile at the pixel centres (sums to 1).
std::vector<double> synth_profile(const SynthParams& params);
/// The correlation matrix the generator targets (user-supplied or built-in).
util::Matrix synth_target_corr(const SynthParams& params);
/// Per-pixel standard deviations implied by the parameters (before clamping).
std::vector<double> synth_pixel_std(const SynthParams& params);

ShowerDataset synth_generate(const SynthParams& params, std::uint64_t seed);

/// CSV with header p0..p{d-1}. Out-of-range values are clamped into
/// [0, e_max] with a warning count on stderr.
ShowerDataset load_dataset(const std::string& path, double e_max = 0.6);
void save_dataset(const ShowerDataset& dataset, const std::string& path);

struct Split {
    ShowerDataset train;
    ShowerDataset test;
};

/// Disjoint shuffled subsets of the given sizes.
Split split_dataset(const ShowerDataset& dataset, std::size_t train_n, std::size_t test_n,
                    std::uint64_t seed);

}  // namespace qag::data
