#include <doctest.h>

#include <cmath>

#include "qag/data/dataset.hpp"
#include "qag/eval/physics_eval.hpp"
#include "qag/util/rng.hpp"

using namespace qag;
using util::Matrix;

namespace {

Matrix noisy_clouds(const Matrix& centers, std::size_t per_cluster, double spread, util::Rng& rng) {
    Matrix out(centers.rows() * per_cluster, centers.cols());
    for (std::size_t c = 0; c < centers.rows(); ++c)
        for (std::size_t i = 0; i < per_cluster; ++i)
            for (std::size_t j = 0; j < centers.cols(); ++j)
                out(c * per_cluster + i, j) = centers(c, j) + spread * rng.normal();
    return out;
}

}  // namespace

TEST_CASE("shape mse: zero on identical batches, closed form on a shift") {
    const auto d = data::synth_generate(data::SynthParams{.n_samples = 100}, 1);
    CHECK(eval::shower_shape_mse(d.samples, d.samples) == 0.0);

    Matrix shifted = d.samples;
    for (double& v : shifted.data()) v += 0.01;
    CHECK(eval::shower_shape_mse(shifted, d.samples) == doctest::Approx(1e-4).epsilon(1e-9));
}

TEST_CASE("correlation metric: identical batches are optimal") {
    const auto d = data::synth_generate(data::SynthParams{.n_samples = 200}, 2);
    const auto m = eval::correlation_metric(d.samples, d.samples);
    CHECK(m.corr_mse == 0.0);
    CHECK(m.sign_agreement == 1.0);
}

TEST_CASE("anti-correlated pair vs correlated reference agrees only on the diagonal") {
    Matrix gen(12, 2), ref(12, 2);
    for (std::size_t i = 0; i < 12; ++i) {
        const double t = 0.04 * static_cast<double>(i);
        gen(i, 0) = t;
        gen(i, 1) = 0.5 - t;  // corr -1
        ref(i, 0) = t;
        ref(i, 1) = t;  // corr +1
    }
    const auto m = eval::correlation_metric(gen, ref);
    CHECK(m.sign_agreement == doctest::Approx(0.5));
}

TEST_CASE("same-distribution batches have small correlation mse") {
    data::SynthParams p;
    p.n_samples = 980;
    const auto a = data::synth_generate(p, 10);
    const auto b = data::synth_generate(p, 11);
    const auto m = eval::correlation_metric(a.samples, b.samples);
    CHECK(m.corr_mse < 0.01);
    CHECK(m.sign_agreement > 0.9);
}

TEST_CASE("energy sum stats on degenerate batches") {
    Matrix zeros(10, 8);
    const auto sz = eval::energy_sum_stats(zeros);
    CHECK(sz.mean == 0.0);
    CHECK(sz.stddev == 0.0);

    Matrix constant(10, 8, 0.3);
    const auto sc = eval::energy_sum_stats(constant);
    CHECK(sc.mean == doctest::Approx(2.4).epsilon(1e-12));
    CHECK(sc.stddev == doctest::Approx(0.0));
    CHECK(sc.hist.counts.size() == 25);
}

TEST_CASE("energy sum stats match the generator's parameters") {
    data::SynthParams p;
    p.n_samples = 20000;
    const auto d = data::synth_generate(p, 21);
    const auto s = eval::energy_sum_stats(d.samples);
    const double se_mean = p.esum_std / std::sqrt(static_cast<double>(p.n_samples));
    CHECK(std::abs(s.mean - p.esum_mean) < 3.0 * se_mean);
    CHECK(s.stddev == doctest::Approx(p.esum_std).epsilon(0.05));
}

TEST_CASE("kmeans recovers well-separated clouds") {
    Matrix centers(4, 8);
    for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t j = 0; j < 8; ++j)
            centers(c, j) = 0.1 + 0.12 * static_cast<double>(c) + 0.01 * static_cast<double>(j);
    util::Rng rng(3);
    const Matrix batch = noisy_clouds(centers, 50, 1e-4, rng);
    const auto res = eval::kmeans_modes(batch, 4, 7);

    // Sorted by descending first-pixel energy: cluster 0 = highest center.
    for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t j = 0; j < 8; ++j)
            CHECK(res.centroids(c, j) == doctest::Approx(centers(3 - c, j)).epsilon(1e-3));

    // objective is non-increasing per Lloyd iteration
    for (std::size_t i = 1; i < res.objective_by_iteration.size(); ++i)
        CHECK(res.objective_by_iteration[i] <= res.objective_by_iteration[i - 1] + 1e-12);
}

TEST_CASE("kmeans is deterministic per seed and validates inputs") {
    const auto d = data::synth_generate(data::SynthParams{.n_samples = 300}, 4);
    const auto a = eval::kmeans_modes(d.samples, 4, 5);
    const auto b = eval::kmeans_modes(d.samples, 4, 5);
    CHECK(a.centroids.data() == b.centroids.data());
    CHECK(a.assignments == b.assignments);

    Matrix dup(6, 2);
    for (std::size_t i = 0; i < 6; ++i) {
        dup(i, 0) = i < 3 ? 0.1 : 0.5;
        dup(i, 1) = i < 3 ? 0.1 : 0.5;
    }
    CHECK_THROWS_AS(eval::kmeans_modes(dup, 4, 1), std::invalid_argument);  // 2 distinct points
    CHECK_THROWS_AS(eval::kmeans_modes(Matrix(2, 2), 4, 1), std::invalid_argument);
}

TEST_CASE("centroid pairing distance stays below inter-cluster spacing") {
    Matrix centers(4, 8);
    for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t j = 0; j < 8; ++j) centers(c, j) = 0.1 + 0.12 * static_cast<double>(c);
    util::Rng rng(9);
    const Matrix a = noisy_clouds(centers, 60, 0.01, rng);
    const Matrix b = noisy_clouds(centers, 60, 0.01, rng);
    const auto ca = eval::kmeans_modes(a, 4, 1);
    const auto cb = eval::kmeans_modes(b, 4, 2);
    const double spacing = 0.12 * std::sqrt(8.0);  // distance between adjacent centers
    CHECK(eval::centroid_pairing_distance(ca.centroids, cb.centroids) < spacing);
}

TEST_CASE("per-pixel histogram overlap: identical = 1, disjoint = 0") {
    const auto d = data::synth_generate(data::SynthParams{.n_samples = 500}, 6);
    const auto same = eval::per_pixel_histograms(d.samples, d.samples);
    for (double o : same.overlap) CHECK(o == doctest::Approx(1.0).epsilon(1e-12));

    Matrix lo(100, 8, 0.1), hi(100, 8, 0.5);
    const auto disjoint = eval::per_pixel_histograms(lo, hi);
    for (double o : disjoint.overlap) CHECK(o == 0.0);
}

TEST_CASE("same-distribution batches overlap by at least 0.9 per pixel") {
    data::SynthParams p;
    p.n_samples = 980;
    const auto a = data::synth_generate(p, 30);
    const auto b = data::synth_generate(p, 31);
    const auto h = eval::per_pixel_histograms(a.samples, b.samples);
    for (double o : h.overlap) CHECK(o >= 0.9);
}

TEST_CASE("full evaluation on identical batches is optimal everywhere") {
    const auto d = data::synth_generate(data::SynthParams{.n_samples = 400}, 8);
    const auto r = eval::evaluate(d.samples, d.samples);
    CHECK(r.shape_mse == 0.0);
    CHECK(r.correlation.corr_mse == 0.0);
    CHECK(r.correlation.sign_agreement == 1.0);
    CHECK(r.esum_gen.mean == r.esum_ref.mean);
    CHECK(r.cluster_pairing_distance < 1e-9);
    for (double o : r.pixel_hists.overlap) CHECK(o == doctest::Approx(1.0).epsilon(1e-12));
    const auto js = eval::report_to_json(r);
    CHECK(js.find("shape_mse") != std::string::npos);
}

TEST_CASE("metrics are invariant to batch row order") {
    const auto d = data::synth_generate(data::SynthParams{.n_samples = 200}, 13);
    Matrix reversed(d.samples.rows(), d.samples.cols());
    for (std::size_t i = 0; i < d.samples.rows(); ++i)
        for (std::size_t j = 0; j < d.samples.cols(); ++j)
            reversed(d.samples.rows() - 1 - i, j) = d.samples(i, j);
    const auto ref = data::synth_generate(data::SynthParams{.n_samples = 200}, 14);
    CHECK(eval::shower_shape_mse(d.samples, ref.samples) ==
          doctest::Approx(eval::shower_shape_mse(reversed, ref.samples)).epsilon(1e-12));
    CHECK(eval::correlation_metric(d.samples, ref.samples).corr_mse ==
          doctest::Approx(eval::correlation_metric(reversed, ref.samples).corr_mse).epsilon(1e-9));
}
