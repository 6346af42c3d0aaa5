#include "diar/clustering.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace diar {

namespace {

SegmentCluster singleton(const EmbeddedSegment& seg) {
    SegmentCluster cluster;
    cluster.members.push_back(seg);
    cluster.frame_sum = seg.frame_sum;
    cluster.total_duration_ms = seg.segment.duration_ms();
    cluster.earliest_start_ms = seg.segment.start_ms;
    return cluster;
}

void absorb(SegmentCluster& into, SegmentCluster&& other) {
    into.members.insert(into.members.end(), std::make_move_iterator(other.members.begin()),
                        std::make_move_iterator(other.members.end()));
    add_in_place(into.frame_sum, other.frame_sum);
    into.total_duration_ms += other.total_duration_ms;
    into.earliest_start_ms = std::min(into.earliest_start_ms, other.earliest_start_ms);
    std::sort(into.members.begin(), into.members.end(),
              [](const EmbeddedSegment& a, const EmbeddedSegment& b) {
                  return std::tie(a.segment.start_ms, a.channel, a.segment.end_ms) <
                         std::tie(b.segment.start_ms, b.channel, b.segment.end_ms);
              });
}

std::string speaker_label(std::size_t index) {
    std::ostringstream out;
    out << "spk" << std::setw(2) << std::setfill('0') << index;
    return out.str();
}

Timeline member_timeline(const std::vector<EmbeddedSegment>& members) {
    std::vector<Segment> segments;
    segments.reserve(members.size());
    for (const EmbeddedSegment& seg : members) {
        segments.push_back(seg.segment);
    }
    return Timeline{std::move(segments)};
}

}  // namespace

std::vector<SegmentCluster> ahc_cluster(const std::vector<EmbeddedSegment>& segments,
                                        double stop_threshold) {
    std::vector<SegmentCluster> clusters;
    clusters.reserve(segments.size());
    std::vector<EmbeddingVector> centroids;
    centroids.reserve(segments.size());
    for (const EmbeddedSegment& seg : segments) {
        clusters.push_back(singleton(seg));
        centroids.push_back(clusters.back().centroid());
    }
    if (clusters.size() < 2) {
        return clusters;
    }
    // similarity[i][j] for j < i; rows grow as clusters are appended, so the
    // matrix is triangular.
    std::vector<std::vector<double>> similarity(clusters.size());
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        similarity[i].resize(i);
        for (std::size_t j = 0; j < i; ++j) {
            similarity[i][j] = cosine_similarity(centroids[i], centroids[j]);
        }
    }
    std::vector<bool> alive(clusters.size(), true);
    std::size_t alive_count = clusters.size();
    while (alive_count > 1) {
        double best = -2.0;
        std::size_t bi = 0;
        std::size_t bj = 0;
        bool found = false;
        // Indices follow earliest member start, so ties prefer the earliest
        // pair: smaller j first, then smaller i.
        for (std::size_t j = 0; j + 1 < clusters.size(); ++j) {
            if (!alive[j]) {
                continue;
            }
            for (std::size_t i = j + 1; i < clusters.size(); ++i) {
                if (alive[i] && (!found || similarity[i][j] > best)) {
                    best = similarity[i][j];
                    bi = i;
                    bj = j;
                    found = true;
                }
            }
        }
        if (best < stop_threshold) {
            break;
        }
        // Input is time-sorted, so the lower index holds the earlier start.
        absorb(clusters[bj], std::move(clusters[bi]));
        alive[bi] = false;
        --alive_count;
        centroids[bj] = clusters[bj].centroid();
        for (std::size_t k = 0; k < clusters.size(); ++k) {
            if (!alive[k] || k == bj) {
                continue;
            }
            const double sim = cosine_similarity(centroids[k], centroids[bj]);
            if (k > bj) {
                similarity[k][bj] = sim;
            } else {
                similarity[bj][k] = sim;
            }
        }
    }
    std::vector<SegmentCluster> out;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        if (alive[i]) {
            out.push_back(std::move(clusters[i]));
        }
    }
    return out;
}

ClusterSplit select_speakers(std::vector<SegmentCluster> clusters, const ClusteringConfig& cfg) {
    ClusterSplit split;
    for (SegmentCluster& cluster : clusters) {
        if (cluster.total_duration_ms > cfg.min_speaker_duration_ms) {
            split.speakers.push_back(std::move(cluster));
        } else {
            split.minor.push_back(std::move(cluster));
        }
    }
    return split;
}

DiarizationResult assign_minor_clusters(std::vector<SegmentCluster> speakers,
                                        std::vector<SegmentCluster> minor, double sv_threshold,
                                        const std::string& recording_id) {
    std::vector<EmbeddingVector> frozen;
    frozen.reserve(speakers.size());
    for (const SegmentCluster& speaker : speakers) {
        frozen.push_back(speaker.centroid());
    }
    SegmentCluster unassigned;
    bool have_unassigned = false;
    for (SegmentCluster& cluster : minor) {
        std::size_t best = 0;
        double best_sim = -2.0;
        const EmbeddingVector cluster_centroid =
            frozen.empty() ? EmbeddingVector{} : cluster.centroid();
        for (std::size_t s = 0; s < frozen.size(); ++s) {
            const double sim = cosine_similarity(cluster_centroid, frozen[s]);
            if (sim > best_sim) {
                best_sim = sim;
                best = s;
            }
        }
        if (!frozen.empty() && best_sim >= sv_threshold) {
            absorb(speakers[best], std::move(cluster));
        } else if (have_unassigned) {
            absorb(unassigned, std::move(cluster));
        } else {
            unassigned = std::move(cluster);
            have_unassigned = true;
        }
    }

    std::sort(speakers.begin(), speakers.end(),
              [](const SegmentCluster& a, const SegmentCluster& b) {
                  return a.earliest_start_ms < b.earliest_start_ms;
              });
    DiarizationResult result;
    result.hypothesis.recording_id = recording_id;
    for (std::size_t i = 0; i < speakers.size(); ++i) {
        SpeakerCluster out;
        out.label = speaker_label(i);
        out.centroid = speakers[i].centroid();
        out.members = std::move(speakers[i].members);
        result.hypothesis.add_track(out.label, member_timeline(out.members));
        result.speaker_clusters.push_back(std::move(out));
    }
    if (have_unassigned) {
        result.unassigned_label = kUnassignedLabel;
        result.hypothesis.add_track(kUnassignedLabel, member_timeline(unassigned.members));
    }
    return result;
}

std::vector<EmbeddedSegment> leakage_filter(std::vector<EmbeddedSegment> segments,
                                            const std::vector<EmbeddingVector>& reference_centroids,
                                            double filter_threshold) {
    if (reference_centroids.empty()) {
        throw std::invalid_argument("leakage_filter: no reference centroids");
    }
    std::erase_if(segments, [&](const EmbeddedSegment& seg) {
        double best = -2.0;
        for (const EmbeddingVector& centroid : reference_centroids) {
            best = std::max(best, cosine_similarity(seg.embedding, centroid));
        }
        return best < filter_threshold;
    });
    return segments;
}

DiarizationResult cluster_segments(std::vector<EmbeddedSegment> segments,
                                   const ClusteringConfig& cfg, const std::string& recording_id) {
    std::sort(segments.begin(), segments.end(),
              [](const EmbeddedSegment& a, const EmbeddedSegment& b) {
                  return std::tie(a.segment.start_ms, a.channel, a.segment.end_ms) <
                         std::tie(b.segment.start_ms, b.channel, b.segment.end_ms);
              });
    DiarizationResult result;
    result.hypothesis.recording_id = recording_id;
    if (segments.empty()) {
        return result;
    }
    ClusterSplit split = select_speakers(ahc_cluster(segments, cfg.ahc_stop_threshold), cfg);
    return assign_minor_clusters(std::move(split.speakers), std::move(split.minor),
                                 cfg.sv_threshold, recording_id);
}

}  // namespace diar
