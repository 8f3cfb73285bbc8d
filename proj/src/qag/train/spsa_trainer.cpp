#include "qag/train/spsa_trainer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qag/eval/physics_eval.hpp"
#include "qag/util/threads.hpp"

namespace qag::train {

namespace {
constexpr double kPi = 3.14159265358979323846;

// Sub-stream tags for per-epoch seed derivation.
enum : std::uint64_t { kInitStream = 0, kEpochBase = 1000, kTrialBase = 1u << 20 };
enum : std::uint64_t { kDeltaStream = 0, kRefStream = 1, kGenPlus = 2, kGenMinus = 3 };
}  // namespace

double TrainConfig::lr(int epoch) const {
    if (epoch < lr_decay_start) return lr_c0;
    return lr_c0 * std::exp(-lr_decay * static_cast<double>(epoch - lr_decay_start));
}

int TrainConfig::batch_size(int epoch) const {
    return epoch < batch_switch_epoch ? batch_small : batch_large;
}

const sim::NoiseModel& TrainConfig::active_noise(int epoch) const {
    const sim::NoiseModel* active = &noise;
    for (const auto& [swap_epoch, model] : noise_schedule) {
        if (swap_epoch <= epoch) active = &model;
    }
    return *active;
}

void TrainConfig::validate() const {
    if (epochs < 0) throw std::invalid_argument("TrainConfig: epochs must be >= 0");
    if (shots < 1 || shots > 100000)
        throw std::invalid_argument("TrainConfig: shots must be in [1, 100000]");
    if (batch_small < 1 || batch_large < 1)
        throw std::invalid_argument("TrainConfig: batch sizes must be >= 1");
    if (!(perturbation_c > 0.0)) throw std::invalid_argument("TrainConfig: perturbation_c must be > 0");
    if (!(lr_c0 > 0.0)) throw std::invalid_argument("TrainConfig: lr_c0 must be > 0");
    for (std::size_t i = 1; i < noise_schedule.size(); ++i)
        if (noise_schedule[i].first < noise_schedule[i - 1].first)
            throw std::invalid_argument("TrainConfig: noise_schedule must be sorted by epoch");
}

SpsaStepResult spsa_step(std::vector<double>& params,
                         const std::function<double(std::span<const double>)>& loss_fn, double c,
                         double lr, util::Rng& rng) {
    const std::size_t n = params.size();
    std::vector<double> delta(n);
    for (double& d : delta) d = rng.uniform() < 0.5 ? -1.0 : 1.0;

    std::vector<double> shifted(n);
    for (std::size_t i = 0; i < n; ++i) shifted[i] = params[i] + c * delta[i];
    const double loss_plus = loss_fn(shifted);
    for (std::size_t i = 0; i < n; ++i) shifted[i] = params[i] - c * delta[i];
    const double loss_minus = loss_fn(shifted);

    SpsaStepResult res{loss_plus, loss_minus, false};
    if (!std::isfinite(loss_plus) || !std::isfinite(loss_minus)) return res;

    const double diff = (loss_plus - loss_minus) / (2.0 * c);
    for (std::size_t i = 0; i < n; ++i) params[i] -= lr * diff * delta[i];
    res.updated = true;
    return res;
}

codec::EncodingConfig encoding_for(const data::ShowerDataset& train_set, long shots) {
    codec::EncodingConfig enc;
    enc.n_pixels = static_cast<int>(train_set.n_pixels());
    enc.pixel_std = train_set.pixel_std;
    enc.e_max = train_set.e_max;
    enc.shots = shots;
    return enc;
}

namespace {

util::Matrix sample_reference(const data::ShowerDataset& set, int count, util::Rng& rng) {
    util::Matrix ref(static_cast<std::size_t>(count), set.n_pixels());
    for (int i = 0; i < count; ++i) {
        const std::size_t pick = rng.uniform_int(set.size());
        for (std::size_t j = 0; j < set.n_pixels(); ++j)
            ref(static_cast<std::size_t>(i), j) = set.samples(pick, j);
    }
    return ref;
}

}  // namespace

void train_from(TrainState& state, const circuits::CircuitSpec& circuit,
                const data::ShowerDataset& train_set, const TrainConfig& cfg) {
    cfg.validate();
    if (static_cast<int>(state.params.size()) != circuit.n_params)
        throw std::invalid_argument("train_from: parameter vector does not match the circuit");
    if (static_cast<int>(train_set.n_pixels()) != circuit.n_qubits)
        throw std::invalid_argument("train_from: dataset pixel count does not match the circuit");

    const codec::EncodingConfig enc = encoding_for(train_set, cfg.shots);
    enc.validate();

    for (int epoch = state.epoch; epoch < cfg.epochs; ++epoch) {
        const sim::NoiseModel& noise = cfg.active_noise(epoch);
        const int batch_n = cfg.batch_size(epoch);
        const objectives::LossWeights weights = objectives::loss_weights(epoch, cfg.weights);
        const std::uint64_t epoch_seed = util::derive_seed(cfg.seed, kEpochBase + epoch);

        util::Matrix reference;
        if (cfg.reference_full_set) {
            reference = train_set.samples;
        } else {
            util::Rng ref_rng(util::derive_seed(epoch_seed, kRefStream));
            reference = sample_reference(train_set, batch_n, ref_rng);
        }

        objectives::TotalLoss plus_parts, minus_parts;
        bool first_eval = true;
        auto loss_fn = [&](std::span<const double> params) {
            const std::uint64_t gen_stream =
                cfg.common_random_numbers ? kGenPlus : (first_eval ? kGenPlus : kGenMinus);
            const util::Matrix images =
                codec::generate_images(circuit, params, enc, batch_n, noise,
                                       util::derive_seed(epoch_seed, gen_stream));
            const auto parts = objectives::total_loss(images, reference, train_set.corr, weights,
                                                      cfg.mmd_bandwidths, enc.e_max);
            (first_eval ? plus_parts : minus_parts) = parts;
            first_eval = false;
            ++state.loss_evaluations;
            return parts.total;
        };

        util::Rng delta_rng(util::derive_seed(epoch_seed, kDeltaStream));
        spsa_step(state.params, loss_fn, cfg.perturbation_c, cfg.lr(epoch), delta_rng);

        EpochRecord rec;
        rec.epoch = epoch;
        rec.mmd = 0.5 * (plus_parts.mmd + minus_parts.mmd);
        rec.corr = 0.5 * (plus_parts.corr + minus_parts.corr);
        rec.w_mmd = weights.w_mmd;
        rec.w_corr = weights.w_corr;
        rec.total = 0.5 * (plus_parts.total + minus_parts.total);
        state.history.push_back(rec);
        state.epoch = epoch + 1;
    }
}

TrainState train(const circuits::CircuitSpec& circuit, const data::ShowerDataset& train_set,
                 const TrainConfig& cfg) {
    TrainState state;
    state.seed = cfg.seed;
    state.params.resize(static_cast<std::size_t>(circuit.n_params));
    util::Rng init_rng(util::derive_seed(cfg.seed, kInitStream));
    for (double& p : state.params) p = init_rng.uniform(-kPi, kPi);
    train_from(state, circuit, train_set, cfg);
    return state;
}

TrialStats repeat_trials(const circuits::CircuitSpec& circuit, const data::ShowerDataset& train_set,
                         const data::ShowerDataset& reference, const TrainConfig& cfg,
                         const RepeatConfig& repeat) {
    if (repeat.n_trials <= 2 * repeat.drop_extremes)
        throw std::invalid_argument("repeat_trials: need n_trials > 2 * drop_extremes");
    if (repeat.drop_extremes < 0 || repeat.n_eval_images < 1)
        throw std::invalid_argument("repeat_trials: bad configuration");

    TrialStats stats;
    stats.mse.resize(static_cast<std::size_t>(repeat.n_trials));
    stats.states.resize(static_cast<std::size_t>(repeat.n_trials));

    const codec::EncodingConfig enc = encoding_for(train_set, cfg.shots);
    util::parallel_for(static_cast<std::size_t>(repeat.n_trials), repeat.threads, [&](std::size_t t) {
        TrainConfig trial_cfg = cfg;
        trial_cfg.seed = util::derive_seed(cfg.seed, kTrialBase + t);
        TrainState state = train(circuit, train_set, trial_cfg);
        const sim::NoiseModel& eval_noise =
            cfg.epochs > 0 ? cfg.active_noise(cfg.epochs - 1) : cfg.noise;
        const util::Matrix images =
            codec::generate_images(circuit, state.params, enc, repeat.n_eval_images, eval_noise,
                                   util::derive_seed(trial_cfg.seed, 777));
        stats.mse[t] = eval::shower_shape_mse(images, reference.samples);
        stats.states[t] = std::move(state);
    });

    stats.kept = stats.mse;
    std::sort(stats.kept.begin(), stats.kept.end());
    stats.kept.erase(stats.kept.end() - repeat.drop_extremes, stats.kept.end());
    stats.kept.erase(stats.kept.begin(), stats.kept.begin() + repeat.drop_extremes);
    stats.mean = util::mean(stats.kept);
    stats.stddev = util::stddev(stats.kept);
    return stats;
}

}  // namespace qag::train
