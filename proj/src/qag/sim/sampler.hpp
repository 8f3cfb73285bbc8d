#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qag/sim/gate.hpp"
#include "qag/sim/noise_model.hpp"
#include "qag/sim/state_vector.hpp"

namespace qag::sim {

/// Shot-based Z-basis measurement of a prepared state, returning per-qubit
/// counts of outcome |0>.
///
/// `gates` must be the bound gate sequence that produced `state`; it is
/// re-executed only for shots on which a CX error fires (Monte-Carlo
/// trajectory method): after each CX whose edge error p trips, a uniformly
/// random non-identity two-qubit Pauli is applied to the (control, target)
/// pair. Each measured bit is then flipped with its readout probability.
///
/// RNG draws per shot, in order: one uniform per CX site with p > 0
/// (immediately followed by the Pauli choice when it fires), one uniform
/// for the basis-state sample, one uniform per qubit with readout p > 0.
/// A zero NoiseModel therefore consumes exactly one draw per shot,
/// identical to the noiseless path.
std::vector<long> sample_counts(const StateVector& state, long shots, const NoiseModel& noise,
                                std::span<const Gate> gates, std::uint64_t seed);

/// Noiseless convenience overload.
std::vector<long> sample_counts(const StateVector& state, long shots, std::uint64_t seed);

}  // namespace qag::sim
