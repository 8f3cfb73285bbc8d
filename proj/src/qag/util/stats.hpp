#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qag/util/matrix.hpp"

namespace qag::util {

double mean(std::span<const double> xs);
/// Population standard deviation (divide by n).
double stddev(std::span<const double> xs);

/// Per-column means of a sample matrix (rows = samples).
std::vector<double> column_means(const Matrix& samples);
/// Per-column population standard deviations.
std::vector<double> column_stddevs(const Matrix& samples);

/// Pearson correlation matrix of a sample matrix (rows = samples,
/// columns = variables). Columns with zero variance get correlation 0
/// against everything else while keeping a unit diagonal; when that
/// happens *zero_variance_flag (if given) is set.
Matrix pearson_correlation(const Matrix& samples, bool* zero_variance_flag = nullptr);

struct Histogram {
    std::vector<double> edges;   // n_bins + 1
    std::vector<double> counts;  // n_bins
};

/// Fixed-range histogram; values outside [lo, hi] are clamped into the
/// first/last bin.
Histogram histogram(std::span<const double> xs, std::size_t n_bins, double lo, double hi);

/// Cholesky factor L (lower) of a symmetric PSD matrix. Throws
/// std::invalid_argument if the matrix is not positive semidefinite.
Matrix cholesky(const Matrix& a);

}  // namespace qag::util
