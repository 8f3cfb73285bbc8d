#include "qag/eval/physics_eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "qag/util/rng.hpp"

namespace qag::eval {

double shower_shape_mse(const util::Matrix& generated, const util::Matrix& reference) {
    if (generated.cols() != reference.cols())
        throw std::invalid_argument("shower_shape_mse: pixel dimension mismatch");
    const auto mg = util::column_means(generated);
    const auto mr = util::column_means(reference);
    double acc = 0.0;
    for (std::size_t j = 0; j < mg.size(); ++j) acc += (mg[j] - mr[j]) * (mg[j] - mr[j]);
    return acc / static_cast<double>(mg.size());
}

CorrelationMetric correlation_metric(const util::Matrix& generated, const util::Matrix& reference) {
    if (generated.rows() < 2 || reference.rows() < 2)
        throw std::invalid_argument("correlation_metric: need batches of size >= 2");
    if (generated.cols() != reference.cols())
        throw std::invalid_argument("correlation_metric: pixel dimension mismatch");
    CorrelationMetric m;
    m.corr_gen = util::pearson_correlation(generated, &m.zero_variance);
    m.corr_ref = util::pearson_correlation(reference, &m.zero_variance);
    const std::size_t d = m.corr_gen.rows();
    double mse = 0.0, agree = 0.0;
    auto sign = [](double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); };
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const double diff = m.corr_gen(i, j) - m.corr_ref(i, j);
            mse += diff * diff;
            if (sign(m.corr_gen(i, j)) == sign(m.corr_ref(i, j))) agree += 1.0;
        }
    m.corr_mse = mse / static_cast<double>(d * d);
    m.sign_agreement = agree / static_cast<double>(d * d);
    return m;
}

EnergySumStats energy_sum_stats(const util::Matrix& batch, std::size_t n_bins, double e_max) {
    if (batch.rows() == 0) throw std::invalid_argument("energy_sum_stats: empty batch");
    EnergySumStats s;
    s.sums.resize(batch.rows());
    for (std::size_t i = 0; i < batch.rows(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < batch.cols(); ++j) acc += batch(i, j);
        s.sums[i] = acc;
    }
    s.mean = util::mean(s.sums);
    s.stddev = util::stddev(s.sums);
    s.hist = util::histogram(s.sums, n_bins, 0.0, e_max * static_cast<double>(batch.cols()));
    return s;
}

namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d += (a[k] - b[k]) * (a[k] - b[k]);
    return d;
}

}  // namespace

KMeansResult kmeans_modes(const util::Matrix& batch, int k, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("kmeans_modes: k must be >= 1");
    const std::size_t n = batch.rows(), d = batch.cols();
    if (n < static_cast<std::size_t>(k))
        throw std::invalid_argument("kmeans_modes: fewer samples than clusters");
    {
        std::set<std::vector<double>> distinct;
        for (std::size_t i = 0; i < n && distinct.size() < static_cast<std::size_t>(k); ++i)
            distinct.emplace(batch.row(i).begin(), batch.row(i).end());
        if (distinct.size() < static_cast<std::size_t>(k))
            throw std::invalid_argument("kmeans_modes: fewer distinct points than clusters");
    }

    util::Rng rng(seed);
    util::Matrix centroids(static_cast<std::size_t>(k), d);

    // k-means++ seeding
    std::vector<double> min_d2(n, std::numeric_limits<double>::infinity());
    {
        const std::size_t first = rng.uniform_int(n);
        for (std::size_t j = 0; j < d; ++j) centroids(0, j) = batch(first, j);
        for (int c = 1; c < k; ++c) {
            double total = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                min_d2[i] = std::min(min_d2[i], sq_dist(batch.row(i), centroids.row(c - 1)));
                total += min_d2[i];
            }
            std::size_t pick = 0;
            if (total > 0.0) {
                const double target = rng.uniform() * total;
                double acc = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    acc += min_d2[i];
                    if (acc >= target) {
                        pick = i;
                        break;
                    }
                }
            } else {
                pick = rng.uniform_int(n);
            }
            for (std::size_t j = 0; j < d; ++j) centroids(c, j) = batch(pick, j);
        }
    }

    KMeansResult res;
    res.assignments.assign(n, 0);
    for (int iter = 0; iter < 100; ++iter) {
        bool changed = false;
        double objective = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (int c = 0; c < k; ++c) {
                const double dist = sq_dist(batch.row(i), centroids.row(c));
                if (dist < best_d) {
                    best_d = dist;
                    best = c;
                }
            }
            objective += best_d;
            if (res.assignments[i] != best) {
                res.assignments[i] = best;
                changed = true;
            }
        }
        res.objective_by_iteration.push_back(objective);
        if (!changed && iter > 0) break;

        util::Matrix sums(static_cast<std::size_t>(k), d);
        std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto c = static_cast<std::size_t>(res.assignments[i]);
            ++counts[c];
            for (std::size_t j = 0; j < d; ++j) sums(c, j) += batch(i, j);
        }
        for (int c = 0; c < k; ++c)
            if (counts[static_cast<std::size_t>(c)] > 0)
                for (std::size_t j = 0; j < d; ++j)
                    centroids(static_cast<std::size_t>(c), j) =
                        sums(static_cast<std::size_t>(c), j) /
                        static_cast<double>(counts[static_cast<std::size_t>(c)]);
    }

    // Sort clusters by descending first-pixel energy and remap labels.
    std::vector<int> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return centroids(static_cast<std::size_t>(a), 0) > centroids(static_cast<std::size_t>(b), 0);
    });
    util::Matrix sorted(static_cast<std::size_t>(k), d);
    std::vector<int> relabel(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) {
        relabel[static_cast<std::size_t>(order[static_cast<std::size_t>(c)])] = c;
        for (std::size_t j = 0; j < d; ++j)
            sorted(static_cast<std::size_t>(c), j) =
                centroids(static_cast<std::size_t>(order[static_cast<std::size_t>(c)]), j);
    }
    for (auto& a : res.assignments) a = relabel[static_cast<std::size_t>(a)];
    res.centroids = std::move(sorted);
    return res;
}

double centroid_pairing_distance(const util::Matrix& a, const util::Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("centroid_pairing_distance: shape mismatch");
    const int k = static_cast<int>(a.rows());
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    // Minimal-cost assignment; k is tiny (4), so scanning permutations is exact.
    double best = std::numeric_limits<double>::infinity();
    do {
        double total = 0.0;
        for (int i = 0; i < k; ++i)
            total += std::sqrt(sq_dist(a.row(static_cast<std::size_t>(i)),
                                       b.row(static_cast<std::size_t>(perm[static_cast<std::size_t>(i)]))));
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

PixelHistograms per_pixel_histograms(const util::Matrix& generated, const util::Matrix& reference,
                                     std::size_t n_bins, double e_max) {
    if (generated.cols() != reference.cols())
        throw std::invalid_argument("per_pixel_histograms: pixel dimension mismatch");
    PixelHistograms out;
    const std::size_t d = generated.cols();
    std::vector<double> col;
    for (std::size_t j = 0; j < d; ++j) {
        col.resize(generated.rows());
        for (std::size_t i = 0; i < generated.rows(); ++i) col[i] = generated(i, j);
        out.gen.push_back(util::histogram(col, n_bins, 0.0, e_max));
        col.resize(reference.rows());
        for (std::size_t i = 0; i < reference.rows(); ++i) col[i] = reference(i, j);
        out.ref.push_back(util::histogram(col, n_bins, 0.0, e_max));

        const double ng = static_cast<double>(generated.rows());
        const double nr = static_cast<double>(reference.rows());
        double overlap = 0.0;
        for (std::size_t b = 0; b < n_bins; ++b)
            overlap += std::min(out.gen[j].counts[b] / ng, out.ref[j].counts[b] / nr);
        out.overlap.push_back(overlap);
    }
    return out;
}

EvalReport evaluate(const util::Matrix& generated, const util::Matrix& reference,
                    std::size_t n_bins, double e_max, int k, std::uint64_t seed) {
    EvalReport r;
    r.shape_mse = shower_shape_mse(generated, reference);
    r.correlation = correlation_metric(generated, reference);
    r.esum_gen = energy_sum_stats(generated, n_bins, e_max);
    r.esum_ref = energy_sum_stats(reference, n_bins, e_max);
    // Same seeding for both sides: the identical-input case must produce
    // identical clusterings.
    r.clusters_gen = kmeans_modes(generated, k, util::derive_seed(seed, 1));
    r.clusters_ref = kmeans_modes(reference, k, util::derive_seed(seed, 1));
    r.cluster_pairing_distance =
        centroid_pairing_distance(r.clusters_gen.centroids, r.clusters_ref.centroids);
    r.pixel_hists = per_pixel_histograms(generated, reference, n_bins, e_max);
    return r;
}

namespace {

nlohmann::json matrix_to_json(const util::Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::string report_to_json(const EvalReport& r) {
    nlohmann::json j;
    j["shape_mse"] = r.shape_mse;
    j["corr_mse"] = r.correlation.corr_mse;
    j["corr_sign_agreement"] = r.correlation.sign_agreement;
    j["corr_zero_variance"] = r.correlation.zero_variance;
    j["corr_gen"] = matrix_to_json(r.correlation.corr_gen);
    j["corr_ref"] = matrix_to_json(r.correlation.corr_ref);
    j["esum_mean_gen"] = r.esum_gen.mean;
    j["esum_std_gen"] = r.esum_gen.stddev;
    j["esum_mean_ref"] = r.esum_ref.mean;
    j["esum_std_ref"] = r.esum_ref.stddev;
    j["cluster_centroids_gen"] = matrix_to_json(r.clusters_gen.centroids);
    j["cluster_centroids_ref"] = matrix_to_json(r.clusters_ref.centroids);
    j["cluster_pairing_distance"] = r.cluster_pairing_distance;
    j["pixel_hist_overlap"] = r.pixel_hists.overlap;
    return j.dump(2);
}

}  // namespace qag::eval
