#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "diar/clustering.hpp"
#include "diar/rng.hpp"
#include "oracles.hpp"

using diar::ClusteringConfig;
using diar::EmbeddedSegment;
using diar::EmbeddingVector;
using diar::Segment;
using diar::Timeline;

namespace {

EmbeddedSegment seg(std::int64_t start, std::int64_t end, EmbeddingVector sum, int channel = 0) {
    return EmbeddedSegment{Segment(start, end), channel, diar::normalized(sum), std::move(sum),
                           0, 1};
}

}  // namespace

TEST_CASE("clustering groups by direction and labels speakers in time order") {
    ClusteringConfig cfg;
    cfg.ahc_stop_threshold = 0.5;
    cfg.min_speaker_duration_ms = 2500;
    cfg.sv_threshold = 0.0;
    const std::vector<EmbeddedSegment> segments{
        seg(0, 3000, {0.0, 4.0}),
        seg(3000, 6000, {2.0, 0.0}),
        seg(6000, 9000, {4.0, 0.25}),
    };
    const diar::DiarizationResult result = diar::cluster_segments(segments, cfg, "rec");
    REQUIRE(result.speaker_clusters.size() == 2);
    CHECK(!result.unassigned_label);
    CHECK(result.hypothesis.recording_id == "rec");
    CHECK(result.speaker_clusters[0].label == "spk00");
    CHECK(result.speaker_clusters[1].label == "spk01");
    CHECK(result.hypothesis.tracks.at("spk00") == Timeline{{Segment(0, 3000)}});
    CHECK(result.hypothesis.tracks.at("spk01") == Timeline{{Segment(3000, 9000)}});
    CHECK(result.speaker_clusters[1].centroid == diar::normalized({6.0, 0.25}));
}

TEST_CASE("the stop threshold is a weak inequality") {
    const std::vector<EmbeddedSegment> orthogonal{
        seg(0, 3000, {1.0, 0.0}),
        seg(3000, 6000, {0.0, 1.0}),
    };
    CHECK(diar::ahc_cluster(orthogonal, 0.0).size() == 1);
    CHECK(diar::ahc_cluster(orthogonal, 0.1).size() == 2);
}

TEST_CASE("speaker selection requires strictly more than the minimum duration") {
    ClusteringConfig cfg;
    cfg.min_speaker_duration_ms = 2500;
    const auto split = diar::select_speakers(
        diar::ahc_cluster({seg(0, 2500, {1.0, 0.0}), seg(10000, 12501, {0.0, 1.0})}, 0.9), cfg);
    REQUIRE(split.speakers.size() == 1);
    REQUIRE(split.minor.size() == 1);
    CHECK(split.speakers[0].total_duration_ms == 2501);
    CHECK(split.minor[0].total_duration_ms == 2500);
}

TEST_CASE("minor clusters join the closest speaker when verification passes") {
    ClusteringConfig cfg;
    cfg.ahc_stop_threshold = 0.99;
    cfg.min_speaker_duration_ms = 2500;
    cfg.sv_threshold = 0.0;
    const std::vector<EmbeddedSegment> segments{
        seg(0, 3000, {4.0, 0.0}),
        seg(4000, 7000, {0.0, 4.0}),
        seg(8000, 9000, {3.0, 1.0}),
    };
    const auto result = diar::cluster_segments(segments, cfg, "rec");
    REQUIRE(result.speaker_clusters.size() == 2);
    CHECK(!result.unassigned_label);
    CHECK(result.hypothesis.tracks.at("spk00") ==
          Timeline{{Segment(0, 3000), Segment(8000, 9000)}});
    CHECK(result.speaker_clusters[0].centroid == diar::normalized({7.0, 1.0}));
}

TEST_CASE("a verification tie joins the earlier speaker") {
    ClusteringConfig cfg;
    cfg.ahc_stop_threshold = 0.9;
    cfg.min_speaker_duration_ms = 2500;
    cfg.sv_threshold = 0.0;
    const std::vector<EmbeddedSegment> segments{
        seg(0, 3000, {1.0, 0.0}),
        seg(4000, 7000, {0.0, 1.0}),
        seg(8000, 9000, {1.0, 1.0}),
    };
    const auto result = diar::cluster_segments(segments, cfg, "rec");
    CHECK(result.hypothesis.tracks.at("spk00") ==
          Timeline{{Segment(0, 3000), Segment(8000, 9000)}});
    CHECK(result.hypothesis.tracks.at("spk01") == Timeline{{Segment(4000, 7000)}});
}

TEST_CASE("failed verification pools all minors into one unassigned track") {
    ClusteringConfig cfg;
    cfg.ahc_stop_threshold = 0.99;
    cfg.min_speaker_duration_ms = 2500;
    cfg.sv_threshold = 0.5;
    const std::vector<EmbeddedSegment> segments{
        seg(0, 3000, {1.0, 0.0}),
        seg(4000, 5000, {0.0, 1.0}),
        seg(6000, 7000, {0.0, -1.0}),
    };
    const auto result = diar::cluster_segments(segments, cfg, "rec");
    REQUIRE(result.speaker_clusters.size() == 1);
    REQUIRE(result.unassigned_label.has_value());
    CHECK(*result.unassigned_label == diar::kUnassignedLabel);
    CHECK(result.hypothesis.tracks.at(diar::kUnassignedLabel) ==
          Timeline{{Segment(4000, 5000), Segment(6000, 7000)}});
    CHECK(result.hypothesis.num_speakers() == 2);
}

TEST_CASE("with no major speaker every cluster pools as unassigned") {
    ClusteringConfig cfg;
    cfg.min_speaker_duration_ms = 2500;
    const auto result =
        diar::cluster_segments({seg(0, 1000, {1.0, 0.0}), seg(2000, 3000, {0.0, 1.0})}, cfg,
                               "rec");
    CHECK(result.speaker_clusters.empty());
    REQUIRE(result.unassigned_label.has_value());
    CHECK(result.hypothesis.num_speakers() == 1);
}

TEST_CASE("clustering nothing yields an empty hypothesis") {
    const auto result = diar::cluster_segments({}, ClusteringConfig{}, "rec");
    CHECK(result.hypothesis.recording_id == "rec");
    CHECK(result.hypothesis.tracks.empty());
    CHECK(result.speaker_clusters.empty());
    CHECK(!result.unassigned_label);
}

TEST_CASE("agglomeration matches the from-scratch quadratic oracle") {
    diar::Rng rng(909);
    for (int trial = 0; trial < 400; ++trial) {
        const int count = static_cast<int>(rng.uniform_int(1, 8));
        std::vector<EmbeddedSegment> segments;
        std::int64_t t = 0;
        for (int i = 0; i < count; ++i) {
            EmbeddingVector sum(3);
            sum[0] = static_cast<double>(rng.uniform_int(1, 4)) / 4.0;
            sum[1] = static_cast<double>(rng.uniform_int(-4, 4)) / 4.0;
            sum[2] = static_cast<double>(rng.uniform_int(-4, 4)) / 4.0;
            segments.push_back(seg(t, t + rng.uniform_int(100, 4000), std::move(sum)));
            t = segments.back().segment.end_ms + rng.uniform_int(0, 500);
        }
        const double stop = 0.25 * static_cast<double>(rng.uniform_int(0, 4));

        const auto clusters = diar::ahc_cluster(segments, stop);
        const auto expected = oracle::quadratic_ahc(segments, stop);
        REQUIRE(clusters.size() == expected.size());
        for (std::size_t k = 0; k < clusters.size(); ++k) {
            std::vector<std::int64_t> got;
            for (const EmbeddedSegment& member : clusters[k].members) {
                got.push_back(member.segment.start_ms);
            }
            std::vector<std::int64_t> want;
            for (const std::size_t index : expected[k]) {
                want.push_back(segments[index].segment.start_ms);
            }
            std::sort(want.begin(), want.end());
            CHECK(got == want);
        }
    }
}

TEST_CASE("the leakage filter keeps segments at or above the threshold") {
    const std::vector<EmbeddingVector> centroids{{1.0, 0.0}};
    std::vector<EmbeddedSegment> segments{
        seg(0, 1000, {1.0, 0.0}),
        seg(1000, 2000, {0.0, 1.0}),
        seg(2000, 3000, {-1.0, 0.0}),
    };
    const auto all = diar::leakage_filter(segments, centroids, -1.0);
    CHECK(all.size() == 3);
    const auto nonnegative = diar::leakage_filter(segments, centroids, 0.0);
    REQUIRE(nonnegative.size() == 2);
    CHECK(nonnegative[1].segment == Segment(1000, 2000));
    const auto exact = diar::leakage_filter(segments, centroids, 1.0);
    REQUIRE(exact.size() == 1);
    CHECK(exact[0].segment == Segment(0, 1000));
    CHECK_THROWS_AS(diar::leakage_filter(segments, {}, 0.2), std::invalid_argument);

    SUBCASE("the best centroid decides") {
        const std::vector<EmbeddingVector> two{{1.0, 0.0}, {0.0, 1.0}};
        CHECK(diar::leakage_filter(segments, two, 0.9).size() == 2);
    }
}
