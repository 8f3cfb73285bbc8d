#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "qag/circuits/architectures.hpp"
#include "qag/codec/angle_codec.hpp"
#include "qag/data/dataset.hpp"
#include "qag/objectives/losses.hpp"
#include "qag/sim/noise_model.hpp"

namespace qag::train {

struct TrainConfig {
    int epochs = 500;
    long shots = 512;
    std::uint64_t seed = 0;

    double lr_c0 = 1.0;        // SPSA step size
    double lr_decay = 0.006;   // exponential decay rate
    int lr_decay_start = 50;   // decay kicks in at this epoch
    double perturbation_c = 0.1;

    int batch_small = 1;
    int batch_large = 20;
    int batch_switch_epoch = 100;

    objectives::WeightSchedule weights;
    std::vector<double> mmd_bandwidths{0.01, 0.1, 0.5, 1.0};
    bool reference_full_set = false;     // else: minibatch of the generated size
    bool common_random_numbers = true;   // share latents between the +/- evaluations

    sim::NoiseModel noise;  // active from epoch 0; empty = noiseless
    /// (epoch, model): the active NoiseModel is swapped at these epochs.
    std::vector<std::pair<int, sim::NoiseModel>> noise_schedule;

    double lr(int epoch) const;
    int batch_size(int epoch) const;
    /// Model active at `epoch` after applying the schedule.
    const sim::NoiseModel& active_noise(int epoch) const;
    void validate() const;
};

struct EpochRecord {
    int epoch = 0;
    double mmd = 0.0;   // unweighted, averaged over the two SPSA evaluations
    double corr = 0.0;  // unweighted
    double w_mmd = 1.0;
    double w_corr = 0.0;
    double total = 0.0;
};

struct TrainState {
    std::vector<double> params;
    int epoch = 0;
    std::vector<EpochRecord> history;
    std::uint64_t seed = 0;
    long loss_evaluations = 0;
};

struct SpsaStepResult {
    double loss_plus = 0.0;
    double loss_minus = 0.0;
    bool updated = false;  // false when a loss came back non-finite
};

/// One SPSA update: g_i = (L(p + c d) - L(p - c d)) / (2 c d_i) with
/// d uniform over {-1, +1}^n, then p <- p - lr g. Exactly two loss
/// evaluations. Non-finite losses leave the parameters untouched.
SpsaStepResult spsa_step(std::vector<double>& params,
                         const std::function<double(std::span<const double>)>& loss_fn, double c,
                         double lr, util::Rng& rng);

/// Fresh training run: parameters initialized U[-pi, pi] from the config
/// seed, then cfg.epochs epochs of generate -> weighted loss -> SPSA.
TrainState train(const circuits::CircuitSpec& circuit, const data::ShowerDataset& train_set,
                 const TrainConfig& cfg);

/// Continue a (possibly deserialized) state up to cfg.epochs; epochs
/// already completed are kept as-is. Per-epoch RNG streams derive from
/// the config seed, so resuming reproduces an uninterrupted run.
void train_from(TrainState& state, const circuits::CircuitSpec& circuit,
                const data::ShowerDataset& train_set, const TrainConfig& cfg);

/// Encoding configuration a training/inference run derives from its
/// training data.
codec::EncodingConfig encoding_for(const data::ShowerDataset& train_set, long shots);

struct TrialStats {
    std::vector<double> mse;        // one entry per trial, trial order
    std::vector<double> kept;       // after dropping extremes, sorted
    double mean = 0.0;
    double stddev = 0.0;            // population std over kept trials
    std::vector<TrainState> states; // final state per trial
};

struct RepeatConfig {
    int n_trials = 25;
    int drop_extremes = 2;
    int n_eval_images = 980;
    unsigned threads = 1;
};

/// Independent seeded trials; the final model of each trial is scored by
/// the shower-shape MSE of freshly generated images against
/// `reference`, generated under the trial's final active noise model.
TrialStats repeat_trials(const circuits::CircuitSpec& circuit, const data::ShowerDataset& train_set,
                         const data::ShowerDataset& reference, const TrainConfig& cfg,
                         const RepeatConfig& repeat);

}  // namespace qag::train
