#pragma once

#include <span>
#include <vector>

#include "qag/util/matrix.hpp"

namespace qag::objectives {

/// Default Gaussian-kernel bandwidths of the MMD mixture, applied to
/// energies normalized by e_max.
std::span<const double> default_mmd_bandwidths();

/// Squared-MMD V-statistic between two sample batches (rows = samples)
/// under a Gaussian kernel mixture. Values are divided by `scale` before
/// distances are taken. Symmetric, >= 0 up to rounding, exactly 0 on
/// identical batches.
double mmd_loss(const util::Matrix& generated, const util::Matrix& reference,
                std::span<const double> bandwidths = default_mmd_bandwidths(), double scale = 1.0);

/// Mean squared error over all d^2 entries between the Pearson
/// correlation matrix of the generated batch and a reference correlation
/// matrix. A zero-variance pixel contributes 0 correlation off-diagonal
/// and sets *zero_variance_flag.
double corr_loss(const util::Matrix& generated, const util::Matrix& reference_corr,
                 bool* zero_variance_flag = nullptr);

/// How the decay epoch enters the MMD weight after the switch-on epoch.
enum class WeightScheduleMode {
    kContinuous,  // 1 - rate * (epoch - start): continuous at the start epoch
    kAbsolute,    // 1 - rate * epoch: the literal reading, 0.1 lower at the start
};

struct WeightSchedule {
    int start_epoch = 100;
    double rate = 0.001;
    WeightScheduleMode mode = WeightScheduleMode::kContinuous;
};

struct LossWeights {
    double w_mmd = 1.0;
    double w_corr = 0.0;
    int epoch = 0;
};

/// (1, 0) before the start epoch; afterwards w_mmd decays linearly and
/// w_corr = 1 - w_mmd.
LossWeights loss_weights(int epoch, const WeightSchedule& schedule = {});

struct TotalLoss {
    double total = 0.0;
    double mmd = 0.0;   // unweighted
    double corr = 0.0;  // unweighted; 0 when its weight is 0 (not evaluated)
};

/// total = w_mmd * MMD + w_corr * Corr. The correlation term is skipped
/// when its weight is zero, which also keeps single-image batches legal.
TotalLoss total_loss(const util::Matrix& generated, const util::Matrix& reference,
                     const util::Matrix& reference_corr, const LossWeights& weights,
                     std::span<const double> bandwidths = default_mmd_bandwidths(),
                     double scale = 1.0);

}  // namespace qag::objectives
