#include "qag/util/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qag::util {

double mean(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("mean: empty input");
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double stddev(std::span<const double> xs) {
    const double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(xs.size()));
}

std::vector<double> column_means(const Matrix& samples) {
    if (samples.rows() == 0) throw std::invalid_argument("column_means: empty matrix");
    std::vector<double> out(samples.cols(), 0.0);
    for (std::size_t i = 0; i < samples.rows(); ++i)
        for (std::size_t j = 0; j < samples.cols(); ++j) out[j] += samples(i, j);
    for (double& v : out) v /= static_cast<double>(samples.rows());
    return out;
}

std::vector<double> column_stddevs(const Matrix& samples) {
    const auto mu = column_means(samples);
    std::vector<double> out(samples.cols(), 0.0);
    for (std::size_t i = 0; i < samples.rows(); ++i)
        for (std::size_t j = 0; j < samples.cols(); ++j) {
            const double d = samples(i, j) - mu[j];
            out[j] += d * d;
        }
    for (double& v : out) v = std::sqrt(v / static_cast<double>(samples.rows()));
    return out;
}

Matrix pearson_correlation(const Matrix& samples, bool* zero_variance_flag) {
    const std::size_t n = samples.rows();
    const std::size_t d = samples.cols();
    if (n < 2) throw std::invalid_argument("pearson_correlation: need at least 2 samples");

    const auto mu = column_means(samples);
    Matrix cov(d, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < d; ++a) {
            const double da = samples(i, a) - mu[a];
            for (std::size_t b = a; b < d; ++b)
                cov(a, b) += da * (samples(i, b) - mu[b]);
        }

    std::vector<double> sd(d);
    bool degenerate = false;
    for (std::size_t a = 0; a < d; ++a) {
        sd[a] = std::sqrt(cov(a, a));
        if (sd[a] == 0.0) degenerate = true;
    }
    if (degenerate && zero_variance_flag) *zero_variance_flag = true;

    Matrix corr(d, d);
    for (std::size_t a = 0; a < d; ++a) {
        corr(a, a) = 1.0;
        for (std::size_t b = a + 1; b < d; ++b) {
            double r = 0.0;
            if (sd[a] > 0.0 && sd[b] > 0.0) {
                r = cov(a, b) / (sd[a] * sd[b]);
                r = std::clamp(r, -1.0, 1.0);
            }
            corr(a, b) = r;
            corr(b, a) = r;
        }
    }
    return corr;
}

Histogram histogram(std::span<const double> xs, std::size_t n_bins, double lo, double hi) {
    if (n_bins == 0 || !(hi > lo)) throw std::invalid_argument("histogram: bad bin spec");
    Histogram h;
    h.edges.resize(n_bins + 1);
    for (std::size_t i = 0; i <= n_bins; ++i)
        h.edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_bins);
    h.counts.assign(n_bins, 0.0);
    const double w = (hi - lo) / static_cast<double>(n_bins);
    for (double x : xs) {
        auto bin = static_cast<long>(std::floor((x - lo) / w));
        bin = std::clamp<long>(bin, 0, static_cast<long>(n_bins) - 1);
        h.counts[static_cast<std::size_t>(bin)] += 1.0;
    }
    return h;
}

Matrix cholesky(const Matrix& a) {
    const std::size_t d = a.rows();
    if (a.cols() != d) throw std::invalid_argument("cholesky: matrix not square");
    Matrix l(d, d);
    // Tiny negative pivots from rounding are tolerated; anything below
    // -1e-10 relative is treated as non-PSD.
    for (std::size_t j = 0; j < d; ++j) {
        double diag = a(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
        if (diag < -1e-10 * std::max(1.0, std::abs(a(j, j))))
            throw std::invalid_argument("cholesky: matrix is not positive semidefinite");
        diag = std::max(diag, 0.0);
        l(j, j) = std::sqrt(diag);
        for (std::size_t i = j + 1; i < d; ++i) {
            double v = a(i, j);
            for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
            l(i, j) = l(j, j) > 0.0 ? v / l(j, j) : 0.0;
        }
    }
    return l;
}

}  // namespace qag::util
