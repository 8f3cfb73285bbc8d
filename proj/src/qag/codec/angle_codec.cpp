#include "qag/codec/angle_codec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qag/sim/sampler.hpp"
#include "qag/sim/state_vector.hpp"

namespace qag::codec {

void EncodingConfig::validate() const {
    if (n_pixels < 1) throw std::invalid_argument("EncodingConfig: n_pixels must be >= 1");
    if (static_cast<int>(pixel_std.size()) != n_pixels)
        throw std::invalid_argument("EncodingConfig: pixel_std length must equal n_pixels");
    for (double s : pixel_std)
        if (!(s >= 0.0) || !std::isfinite(s))
            throw std::invalid_argument("EncodingConfig: pixel_std must be finite and >= 0");
    if (!(e_max > e_min) || e_min != 0.0)
        throw std::invalid_argument("EncodingConfig: requires e_min = 0 and e_max > 0");
    if (!(theta_max > 0.0)) throw std::invalid_argument("EncodingConfig: theta_max must be > 0");
    if (shots < 1 || shots > 100000)
        throw std::invalid_argument("EncodingConfig: shots must be in [1, 100000]");
    if (!(global_factor_max >= global_factor_min))
        throw std::invalid_argument("EncodingConfig: empty global factor range");
}

LatentDraw draw_latent(const EncodingConfig& cfg, util::Rng& rng) {
    LatentDraw d;
    d.omega.resize(static_cast<std::size_t>(cfg.n_pixels));
    const double scale = cfg.angle_scale();
    for (int i = 0; i < cfg.n_pixels; ++i)
        d.omega[static_cast<std::size_t>(i)] =
            rng.uniform(-1.0, 1.0) * cfg.pixel_std[static_cast<std::size_t>(i)] * scale;
    d.global_factor = rng.uniform(cfg.global_factor_min, cfg.global_factor_max);
    for (double& w : d.omega) w *= d.global_factor;
    return d;
}

std::vector<sim::Gate> prepare_state_circuit(const LatentDraw& draw) {
    std::vector<sim::Gate> gates;
    gates.reserve(2 * draw.omega.size());
    for (std::size_t q = 0; q < draw.omega.size(); ++q) {
        if (!std::isfinite(draw.omega[q]))
            throw std::invalid_argument("prepare_state_circuit: non-finite omega");
        gates.push_back(sim::Gate::h(static_cast<int>(q)));
        gates.push_back(sim::Gate::ry(static_cast<int>(q), draw.omega[q]));
    }
    return gates;
}

double decode_count(long counts0, long shots, const EncodingConfig& cfg) {
    if (shots < 1) throw std::invalid_argument("decode_count: shots must be >= 1");
    if (counts0 < 0 || counts0 > shots)
        throw std::invalid_argument("decode_count: counts outside [0, shots]");
    const double intersection =
        2.0 * static_cast<double>(counts0) / static_cast<double>(shots) - 1.0;
    const double theta = std::asin(std::clamp(intersection, -1.0, 1.0));
    // e_max * (theta + theta_max) / (2 theta_max), grouped so the
    // endpoints come out as exactly 0 and e_max.
    return cfg.e_max * ((theta + cfg.theta_max) / (2.0 * cfg.theta_max));
}

std::vector<double> decode_counts(std::span<const long> counts0, long shots,
                                  const EncodingConfig& cfg) {
    std::vector<double> energies(counts0.size());
    for (std::size_t i = 0; i < counts0.size(); ++i)
        energies[i] = decode_count(counts0[i], shots, cfg);
    return energies;
}

util::Matrix generate_images(const circuits::CircuitSpec& circuit, std::span<const double> params,
                             const EncodingConfig& cfg, int n_images,
                             const sim::NoiseModel& noise, std::uint64_t seed) {
    cfg.validate();
    if (n_images < 1) throw std::invalid_argument("generate_images: n_images must be >= 1");
    if (circuit.n_qubits != cfg.n_pixels)
        throw std::invalid_argument("generate_images: circuit qubit count != n_pixels");

    const auto bound = circuits::bind_params(circuit, params);
    util::Matrix images(static_cast<std::size_t>(n_images), static_cast<std::size_t>(cfg.n_pixels));

    for (int img = 0; img < n_images; ++img) {
        const std::uint64_t image_seed = seed ^ static_cast<std::uint64_t>(img);
        util::Rng latent_rng(util::derive_seed(image_seed, 0));
        const LatentDraw draw = draw_latent(cfg, latent_rng);

        std::vector<sim::Gate> gates = prepare_state_circuit(draw);
        gates.insert(gates.end(), bound.begin(), bound.end());

        sim::StateVector state(cfg.n_pixels);
        state.apply(gates);
        const auto counts =
            sim::sample_counts(state, cfg.shots, noise, gates, util::derive_seed(image_seed, 1));
        for (int p = 0; p < cfg.n_pixels; ++p)
            images(static_cast<std::size_t>(img), static_cast<std::size_t>(p)) =
                decode_count(counts[static_cast<std::size_t>(p)], cfg.shots, cfg);
    }
    return images;
}

}  // namespace qag::codec
