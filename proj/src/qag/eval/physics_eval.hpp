#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qag/util/matrix.hpp"
#include "qag/util/stats.hpp"

namespace qag::eval {

/// Pixel-wise MSE between the per-pixel means of two batches.
double shower_shape_mse(const util::Matrix& generated, const util::Matrix& reference);

struct CorrelationMetric {
    util::Matrix corr_gen;
    util::Matrix corr_ref;
    double corr_mse = 0.0;
    double sign_agreement = 0.0;  // fraction of entries with matching sign
    bool zero_variance = false;
};

CorrelationMetric correlation_metric(const util::Matrix& generated, const util::Matrix& reference);

struct EnergySumStats {
    double mean = 0.0;
    double stddev = 0.0;  // population
    util::Histogram hist;
    std::vector<double> sums;
};

/// Per-image pixel sums with a fixed-bin histogram over [0, n_pixels * e_max].
EnergySumStats energy_sum_stats(const util::Matrix& batch, std::size_t n_bins = 25,
                                double e_max = 0.6);

struct KMeansResult {
    util::Matrix centroids;           // k x d, sorted by descending first-pixel energy
    std::vector<int> assignments;     // per sample, indices into sorted centroids
    std::vector<double> objective_by_iteration;  // within-cluster sum of squares
};

/// Lloyd's algorithm with k-means++ seeding. Throws when the batch has
/// fewer distinct points than k.
KMeansResult kmeans_modes(const util::Matrix& batch, int k, std::uint64_t seed);

/// Pair two centroid sets by the minimal-total-distance assignment;
/// returns the summed pairing distance.
double centroid_pairing_distance(const util::Matrix& a, const util::Matrix& b);

struct PixelHistograms {
    std::vector<util::Histogram> gen;
    std::vector<util::Histogram> ref;
    std::vector<double> overlap;  // normalized histogram intersection per pixel
};

PixelHistograms per_pixel_histograms(const util::Matrix& generated, const util::Matrix& reference,
                                     std::size_t n_bins = 25, double e_max = 0.6);

/// All five metrics bundled, as serialized by the evaluate command.
struct EvalReport {
    double shape_mse = 0.0;
    CorrelationMetric correlation;
    EnergySumStats esum_gen;
    EnergySumStats esum_ref;
    KMeansResult clusters_gen;
    KMeansResult clusters_ref;
    double cluster_pairing_distance = 0.0;
    PixelHistograms pixel_hists;
};

EvalReport evaluate(const util::Matrix& generated, const util::Matrix& reference,
                    std::size_t n_bins = 25, double e_max = 0.6, int k = 4,
                    std::uint64_t seed = 0);

std::string report_to_json(const EvalReport& report);

}  // namespace qag::eval
