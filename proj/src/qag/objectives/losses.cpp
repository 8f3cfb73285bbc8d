#include "qag/objectives/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qag/util/stats.hpp"

namespace qag::objectives {

namespace {

const double kDefaultBandwidths[] = {0.01, 0.1, 0.5, 1.0};

double sq_distance(std::span<const double> a, std::span<const double> b, double inv_scale) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = (a[k] - b[k]) * inv_scale;
        d += diff * diff;
    }
    return d;
}

double kernel_mixture(double sq_dist, std::span<const double> bandwidths) {
    double k = 0.0;
    for (double sigma : bandwidths) k += std::exp(-sq_dist / (2.0 * sigma * sigma));
    return k;
}

}  // namespace

std::span<const double> default_mmd_bandwidths() { return kDefaultBandwidths; }

double mmd_loss(const util::Matrix& generated, const util::Matrix& reference,
                std::span<const double> bandwidths, double scale) {
    const std::size_t m = generated.rows(), n = reference.rows();
    if (m == 0 || n == 0) throw std::invalid_argument("mmd_loss: empty batch");
    if (generated.cols() != reference.cols())
        throw std::invalid_argument("mmd_loss: dimension mismatch");
    if (bandwidths.empty()) throw std::invalid_argument("mmd_loss: no kernel bandwidths");
    const double inv_scale = 1.0 / scale;

    if (m == n) {
        // Fused V-statistic: each (i, j) term cancels exactly when the
        // batches are identical, so the estimator is 0.0 there.
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                const double kxx =
                    kernel_mixture(sq_distance(generated.row(i), generated.row(j), inv_scale), bandwidths);
                const double kyy =
                    kernel_mixture(sq_distance(reference.row(i), reference.row(j), inv_scale), bandwidths);
                const double kxy =
                    kernel_mixture(sq_distance(generated.row(i), reference.row(j), inv_scale), bandwidths);
                const double kyx =
                    kernel_mixture(sq_distance(reference.row(i), generated.row(j), inv_scale), bandwidths);
                acc += kxx + kyy - kxy - kyx;
            }
        return acc / (static_cast<double>(m) * static_cast<double>(m));
    }

    double kxx = 0.0, kyy = 0.0, kxy = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            kxx += kernel_mixture(sq_distance(generated.row(i), generated.row(j), inv_scale), bandwidths);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            kyy += kernel_mixture(sq_distance(reference.row(i), reference.row(j), inv_scale), bandwidths);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            kxy += kernel_mixture(sq_distance(generated.row(i), reference.row(j), inv_scale), bandwidths);
    return kxx / (static_cast<double>(m) * m) + kyy / (static_cast<double>(n) * n) -
           2.0 * kxy / (static_cast<double>(m) * n);
}

double corr_loss(const util::Matrix& generated, const util::Matrix& reference_corr,
                 bool* zero_variance_flag) {
    if (generated.rows() < 2)
        throw std::invalid_argument("corr_loss: need at least 2 generated samples");
    const std::size_t d = generated.cols();
    if (reference_corr.rows() != d || reference_corr.cols() != d)
        throw std::invalid_argument("corr_loss: reference correlation shape mismatch");
    const util::Matrix corr = util::pearson_correlation(generated, zero_variance_flag);
    double acc = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const double diff = corr(i, j) - reference_corr(i, j);
            acc += diff * diff;
        }
    return acc / static_cast<double>(d * d);
}

LossWeights loss_weights(int epoch, const WeightSchedule& schedule) {
    LossWeights w;
    w.epoch = epoch;
    if (epoch < schedule.start_epoch) return w;
    const double decayed = schedule.mode == WeightScheduleMode::kContinuous
                               ? schedule.rate * (epoch - schedule.start_epoch)
                               : schedule.rate * epoch;
    w.w_mmd = std::max(0.0, 1.0 - decayed);
    w.w_corr = 1.0 - w.w_mmd;
    return w;
}

TotalLoss total_loss(const util::Matrix& generated, const util::Matrix& reference,
                     const util::Matrix& reference_corr, const LossWeights& weights,
                     std::span<const double> bandwidths, double scale) {
    TotalLoss out;
    out.mmd = mmd_loss(generated, reference, bandwidths, scale);
    if (weights.w_corr != 0.0) out.corr = corr_loss(generated, reference_corr);
    out.total = weights.w_mmd * out.mmd + weights.w_corr * out.corr;
    return out;
}

}  // namespace qag::objectives
