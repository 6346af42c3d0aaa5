#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "diar/embedding.hpp"
#include "diar/rng.hpp"

using diar::EmbeddingVector;

TEST_CASE("norms and normalization") {
    CHECK(diar::l2_norm({3.0, 4.0}) == doctest::Approx(5.0));
    const EmbeddingVector unit = diar::normalized({3.0, 4.0});
    CHECK(unit[0] == doctest::Approx(0.6));
    CHECK(unit[1] == doctest::Approx(0.8));
    CHECK_THROWS_AS(diar::normalized({0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("cosine similarity is scale-invariant and clamped") {
    CHECK(diar::cosine_similarity({1.0, 0.0}, {0.0, 2.0}) == doctest::Approx(0.0));
    CHECK(diar::cosine_similarity({1.0, 1.0}, {5.0, 5.0}) == doctest::Approx(1.0));
    CHECK(diar::cosine_similarity({1.0, 0.0}, {-3.0, 0.0}) == doctest::Approx(-1.0));
    CHECK(diar::cosine_similarity({1.0, 1.0}, {1.0, 1.0}) <= 1.0);
    CHECK_THROWS_AS(diar::cosine_similarity({1.0}, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(diar::cosine_similarity({0.0, 0.0}, {1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("centroid is the normalized mean") {
    const EmbeddingVector c = diar::centroid({{1.0, 0.0}, {0.0, 1.0}});
    CHECK(c[0] == doctest::Approx(0.70710678));
    CHECK(c[1] == doctest::Approx(0.70710678));
    CHECK_THROWS_AS(diar::centroid({}), std::invalid_argument);
    CHECK_THROWS_AS(diar::centroid({{1.0, 0.0}, {1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(diar::centroid({{1.0, 0.0}, {-1.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("cosine against a centroid matches the raw-mean computation") {
    diar::Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dim = 1 + static_cast<std::size_t>(rng.uniform_int(1, 16));
        std::vector<EmbeddingVector> vectors;
        const int count = static_cast<int>(rng.uniform_int(1, 8));
        for (int i = 0; i < count; ++i) {
            vectors.push_back(rng.unit_vector(dim));
        }
        const EmbeddingVector probe = rng.unit_vector(dim);

        EmbeddingVector mean(dim, 0.0);
        for (const EmbeddingVector& v : vectors) {
            diar::add_in_place(mean, v);
        }
        for (double& x : mean) {
            x /= count;
        }
        CHECK(diar::cosine_similarity(diar::centroid(vectors), probe) ==
              doctest::Approx(diar::cosine_similarity(mean, probe)).epsilon(1e-12));
    }
}

TEST_CASE("embedding stream frame geometry") {
    diar::EmbeddingStream stream;
    stream.dim = 2;
    stream.frame_period_ms = 80;
    CHECK(stream.frame_start_ms(0) == 0);
    CHECK(stream.frame_end_ms(0) == 80);
    CHECK(stream.frame_center_ms(0) == 40);
    CHECK(stream.frame_center_ms(3) == 280);
    stream.start_offset_ms = 20;
    CHECK(stream.frame_start_ms(1) == 100);
    CHECK(stream.frame_center_ms(1) == 140);
}

TEST_CASE("rng streams are deterministic and well-ranged") {
    diar::Rng a(99);
    diar::Rng b(99);
    for (int i = 0; i < 1000; ++i) {
        const double u = a.uniform();
        CHECK(u == b.uniform());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    diar::Rng c(100);
    bool saw_low = false;
    bool saw_high = false;
    for (int i = 0; i < 2000; ++i) {
        const std::int64_t v = c.uniform_int(3, 7);
        CHECK(v >= 3);
        CHECK(v <= 7);
        saw_low = saw_low || v == 3;
        saw_high = saw_high || v == 7;
    }
    CHECK(saw_low);
    CHECK(saw_high);
    const diar::EmbeddingVector unit = c.unit_vector(64);
    CHECK(diar::l2_norm(unit) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("normal and exponential draws match their moments loosely") {
    diar::Rng rng(5);
    double sum = 0.0;
    double sum_sq = 0.0;
    constexpr int kDraws = 20000;
    for (int i = 0; i < kDraws; ++i) {
        const double x = rng.normal();
        sum += x;
        sum_sq += x * x;
    }
    CHECK(sum / kDraws == doctest::Approx(0.0).epsilon(0.05));
    CHECK(sum_sq / kDraws == doctest::Approx(1.0).epsilon(0.05));

    double exp_sum = 0.0;
    for (int i = 0; i < kDraws; ++i) {
        const double x = rng.exponential(250.0);
        CHECK(x >= 0.0);
        exp_sum += x;
    }
    CHECK(exp_sum / kDraws == doctest::Approx(250.0).epsilon(0.05));
}
