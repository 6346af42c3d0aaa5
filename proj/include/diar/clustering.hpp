#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diar/embedding.hpp"
#include "diar/segmentation.hpp"
#include "diar/timeline.hpp"

namespace diar {

inline constexpr const char* kUnassignedLabel = "UNASSIGNED";

struct ClusteringConfig {
    double ahc_stop_threshold = 0.55;
    std::int64_t min_speaker_duration_ms = 2500;
    double sv_threshold = 0.0;
};

// Working cluster: a time-ordered group of segments with the raw frame sum,
// so the centroid (normalized mean of member frames) is exact.
struct SegmentCluster {
    std::vector<EmbeddedSegment> members;
    EmbeddingVector frame_sum;
    std::int64_t total_duration_ms = 0;
    std::int64_t earliest_start_ms = 0;

    EmbeddingVector centroid() const { return normalized(frame_sum); }
};

struct SpeakerCluster {
    std::string label;
    std::vector<EmbeddedSegment> members;
    EmbeddingVector centroid;
};

struct DiarizationResult {
    Hypothesis hypothesis;
    std::vector<SpeakerCluster> speaker_clusters;
    std::optional<std::string> unassigned_label;
};

// Global agglomerative clustering: every pair of clusters is a candidate;
// repeatedly merges the pair with the highest centroid cosine similarity
// while that similarity is at least stop_threshold. Ties break toward the
// pair with the earliest member start times. Input order must be
// time-sorted for the tie-break to be meaningful.
std::vector<SegmentCluster> ahc_cluster(const std::vector<EmbeddedSegment>& segments,
                                        double stop_threshold);

// Splits clusters into speakers (total member duration strictly greater
// than cfg.min_speaker_duration_ms) and minor clusters.
struct ClusterSplit {
    std::vector<SegmentCluster> speakers;
    std::vector<SegmentCluster> minor;
};
ClusterSplit select_speakers(std::vector<SegmentCluster> clusters, const ClusteringConfig& cfg);

// Joins each minor cluster to its most similar speaker cluster when that
// similarity reaches sv_threshold, else pools it into one unassigned track.
// Speaker centroids stay frozen while minors are assigned and are
// recomputed afterwards. Speakers are labeled spk00, spk01, ... by earliest
// member start.
DiarizationResult assign_minor_clusters(std::vector<SegmentCluster> speakers,
                                        std::vector<SegmentCluster> minor, double sv_threshold,
                                        const std::string& recording_id);

// Keeps a segment iff the maximum cosine similarity of its embedding to any
// reference centroid reaches filter_threshold. Throws on an empty centroid
// list; callers that have no centroids must skip filtering instead.
std::vector<EmbeddedSegment> leakage_filter(std::vector<EmbeddedSegment> segments,
                                            const std::vector<EmbeddingVector>& reference_centroids,
                                            double filter_threshold);

// ahc_cluster + select_speakers + assign_minor_clusters.
DiarizationResult cluster_segments(std::vector<EmbeddedSegment> segments,
                                   const ClusteringConfig& cfg, const std::string& recording_id);

}  // namespace diar
