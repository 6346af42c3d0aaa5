#pragma once

#include <cstdint>
#include <vector>

#include "diar/embedding.hpp"
#include "diar/timeline.hpp"

namespace diar {

// A speaker-homogeneous stretch of one channel. `embedding` is the
// unit-normalized mean of the member frames; `frame_sum` keeps their raw
// sum so merges and downstream centroids stay exact and order-independent.
struct EmbeddedSegment {
    Segment segment;
    int channel = 0;
    EmbeddingVector embedding;
    EmbeddingVector frame_sum;
    std::int64_t first_frame = 0;
    std::int64_t frame_count = 0;
};

struct SegmentationConfig {
    double merge_threshold = 0.55;
};

// Groups the region's frames into consecutive pairs (the last segment takes
// 3 frames when the count is odd, and a single-frame run yields a 1-frame
// segment). A frame belongs to the region when its center does. All-zero
// frames mean the channel is silent there; they split the region into runs
// that are paired independently. Segment boundaries lie on the frame grid,
// clipped to the region edges.
std::vector<EmbeddedSegment> initial_segments(const EmbeddingStream& stream,
                                              const Segment& region);

// Agglomerative merging of neighboring segments: repeatedly merges the
// time-touching adjacent pair with the highest cosine similarity between
// mean embeddings, until that similarity drops below cfg.merge_threshold or
// one segment remains. Ties break toward the earliest pair. Segments must
// be time-ordered.
std::vector<EmbeddedSegment> ahc_merge_neighbors(std::vector<EmbeddedSegment> segments,
                                                 const SegmentationConfig& cfg);

// Runs initial_segments and ahc_merge_neighbors over every speech region.
std::vector<EmbeddedSegment> segment_stream(const EmbeddingStream& stream,
                                            const Timeline& regions,
                                            const SegmentationConfig& cfg);

}  // namespace diar
