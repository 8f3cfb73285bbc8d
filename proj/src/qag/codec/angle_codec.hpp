#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qag/circuits/architectures.hpp"
#include "qag/sim/gate.hpp"
#include "qag/sim/noise_model.hpp"
#include "qag/util/matrix.hpp"
#include "qag/util/rng.hpp"

namespace qag::codec {

/// Angle-encoding configuration: one qubit per pixel, energies decoded
/// from per-qubit |0> frequencies onto [e_min, e_max].
struct EncodingConfig {
    int n_pixels = 8;
    std::vector<double> pixel_std;  // per-pixel std of training energies (energy units)
    double global_factor_min = -0.25;
    double global_factor_max = 0.25;
    double e_min = 0.0;
    double e_max = 0.6;
    double theta_max = 1.5707963267948966;  // pi/2
    long shots = 512;

    void validate() const;

    /// Slope of the energy->angle map, 2*theta_max / e_max. Pixel stds
    /// are multiplied by this before scaling the preparation angles, so
    /// their magnitudes live on the decode angle scale.
    double angle_scale() const { return 2.0 * theta_max / e_max; }
};

/// One image's randomness: per-qubit preparation angles and the shared
/// per-image scale factor.
struct LatentDraw {
    std::vector<double> omega;
    double global_factor = 0.0;
};

/// omega_i = u_i * pixel_std_i * angle_scale * g with u_i ~ U[-1,1] and
/// g ~ U[global_factor_min, global_factor_max].
LatentDraw draw_latent(const EncodingConfig& cfg, util::Rng& rng);

/// Per qubit: H then Ry(omega_i). Prepended to the trainable circuit.
std::vector<sim::Gate> prepare_state_circuit(const LatentDraw& draw);

/// Decode one qubit's |0> count: I = 2 c / s - 1, theta = asin(I),
/// E = (e_max / (2 theta_max)) (theta + theta_max).
double decode_count(long counts0, long shots, const EncodingConfig& cfg);
std::vector<double> decode_counts(std::span<const long> counts0, long shots,
                                  const EncodingConfig& cfg);

/// Full generation pipeline: for each image draw a latent, run prep +
/// bound circuit, sample, decode. Image i uses the derived seed
/// (seed ^ i) so batches can be produced concurrently and reproducibly.
util::Matrix generate_images(const circuits::CircuitSpec& circuit, std::span<const double> params,
                             const EncodingConfig& cfg, int n_images,
                             const sim::NoiseModel& noise, std::uint64_t seed);

}  // namespace qag::codec
