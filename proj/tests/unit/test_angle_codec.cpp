#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "qag/codec/angle_codec.hpp"
#include "qag/sim/sampler.hpp"
#include "qag/sim/state_vector.hpp"
#include "qag/util/stats.hpp"

using namespace qag;
using codec::EncodingConfig;

namespace {

EncodingConfig config_for(int n_pixels, double std_value = 0.05, long shots = 512) {
    EncodingConfig cfg;
    cfg.n_pixels = n_pixels;
    cfg.pixel_std.assign(static_cast<std::size_t>(n_pixels), std_value);
    cfg.shots = shots;
    return cfg;
}

}  // namespace

TEST_CASE("decode endpoints and midpoint are exact") {
    const auto cfg = config_for(1);
    CHECK(codec::decode_count(0, 512, cfg) == 0.0);
    CHECK(codec::decode_count(512, 512, cfg) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(codec::decode_count(256, 512, cfg) == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("decode is strictly increasing in counts and stays in range") {
    const auto cfg = config_for(1);
    double prev = -1.0;
    for (long c = 0; c <= 512; ++c) {
        const double e = codec::decode_count(c, 512, cfg);
        CHECK(e > prev);
        CHECK(e >= 0.0);
        CHECK(e <= 0.6);
        prev = e;
    }
}

TEST_CASE("number of distinct decodable energies equals shots + 1") {
    const auto cfg = config_for(1, 0.05, 64);
    std::set<double> values;
    for (long c = 0; c <= 64; ++c) values.insert(codec::decode_count(c, 64, cfg));
    CHECK(values.size() == 65);
}

TEST_CASE("decode error paths") {
    const auto cfg = config_for(1);
    CHECK_THROWS_AS(codec::decode_count(-1, 512, cfg), std::invalid_argument);
    CHECK_THROWS_AS(codec::decode_count(513, 512, cfg), std::invalid_argument);
    CHECK_THROWS_AS(codec::decode_count(1, 0, cfg), std::invalid_argument);
}

TEST_CASE("zero omega leaves every qubit in |+>, decoding to e_max/2") {
    codec::LatentDraw draw;
    draw.omega.assign(3, 0.0);
    const auto gates = codec::prepare_state_circuit(draw);
    REQUIRE(gates.size() == 6);
    sim::StateVector s(3);
    s.apply(gates);
    for (int q = 0; q < 3; ++q) CHECK(s.prob_zero(q) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("zero pixel std pins omega to zero regardless of draws") {
    auto cfg = config_for(4, 0.0);
    util::Rng rng(5);
    for (int i = 0; i < 10; ++i) {
        const auto draw = codec::draw_latent(cfg, rng);
        for (double w : draw.omega) CHECK(w == 0.0);
    }
}

TEST_CASE("omega spread matches the monte-carlo moment oracle") {
    // Oracle: independent draws of u * g with u ~ U[-1,1], g ~ U[-1/4,1/4].
    util::Rng oracle_rng(999);
    const int n = 1000000;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = oracle_rng.uniform(-1.0, 1.0);
        const double g = oracle_rng.uniform(-0.25, 0.25);
        acc += u * g * u * g;
    }
    const double oracle_std = std::sqrt(acc / n);

    auto cfg = config_for(1, 0.05);
    const double angle_std = cfg.pixel_std[0] * cfg.angle_scale();
    util::Rng rng(31337);
    std::vector<double> omegas(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) omegas[static_cast<std::size_t>(i)] = codec::draw_latent(cfg, rng).omega[0];
    const double measured = util::stddev(omegas);
    CHECK(measured == doctest::Approx(angle_std * oracle_std).epsilon(0.01));
}

TEST_CASE("single-qubit ry preparation decodes to pi/2 - omega") {
    // P(0) = cos^2(w/2) => I = cos w => theta = pi/2 - w for w in [0, pi].
    const auto cfg = config_for(1, 0.05, 100000);
    for (const double w :
         {0.0, std::numbers::pi / 4, std::numbers::pi / 2, 3 * std::numbers::pi / 4, std::numbers::pi}) {
        sim::StateVector s(1);
        s.apply_ry(0, w);
        const auto counts = sim::sample_counts(s, cfg.shots, 1234 + static_cast<int>(w * 100));
        const double energy = codec::decode_count(counts[0], cfg.shots, cfg);
        const double theta = energy * (2.0 * cfg.theta_max) / cfg.e_max - cfg.theta_max;
        CHECK(std::abs(theta - (std::numbers::pi / 2 - w)) < 0.02);
    }
}

TEST_CASE("identity circuit with zero latent spread decodes to 0.3 everywhere") {
    auto cfg = config_for(2, 0.0, 100000);
    circuits::CircuitSpec identity{"identity", 2, {}, 0};
    const auto images =
        codec::generate_images(identity, {}, cfg, 3, sim::NoiseModel::zero(2), 77);
    for (std::size_t i = 0; i < images.rows(); ++i)
        for (std::size_t j = 0; j < images.cols(); ++j)
            CHECK(images(i, j) == doctest::Approx(0.3).epsilon(0.017));
}

TEST_CASE("generate_images is reproducible and validates input") {
    auto cfg = config_for(4, 0.05);
    const auto circuit = circuits::build_architecture("MERA-up", 4);
    std::vector<double> params(static_cast<std::size_t>(circuit.n_params), 0.3);
    const auto a = codec::generate_images(circuit, params, cfg, 5, sim::NoiseModel::zero(4), 42);
    const auto b = codec::generate_images(circuit, params, cfg, 5, sim::NoiseModel::zero(4), 42);
    CHECK(a.data() == b.data());

    const auto c = codec::generate_images(circuit, params, cfg, 5, sim::NoiseModel::zero(4), 43);
    CHECK(a.data() != c.data());

    CHECK_THROWS_AS(codec::generate_images(circuit, params, cfg, 0, sim::NoiseModel::zero(4), 1),
                    std::invalid_argument);
    auto bad = cfg;
    bad.shots = 200000;
    CHECK_THROWS_AS(codec::generate_images(circuit, params, bad, 1, sim::NoiseModel::zero(4), 1),
                    std::invalid_argument);
}

TEST_CASE("generated energies always stay inside [0, e_max]") {
    auto cfg = config_for(4, 0.3);  // unusually wide latents
    const auto circuit = circuits::build_architecture("Linear", 4);
    std::vector<double> params(static_cast<std::size_t>(circuit.n_params));
    util::Rng rng(8);
    for (double& p : params) p = rng.uniform(-3.0, 3.0);
    const auto images = codec::generate_images(circuit, params, cfg, 50, sim::NoiseModel::zero(4), 3);
    for (double v : images.data()) {
        CHECK(v >= 0.0);
        CHECK(v <= 0.6);
    }
}
