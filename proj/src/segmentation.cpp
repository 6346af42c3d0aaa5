#include "diar/segmentation.hpp"

#include <algorithm>
#include <stdexcept>

namespace diar {

namespace {

EmbeddedSegment make_segment(const EmbeddingStream& stream, const Segment& region,
                             std::int64_t first, std::int64_t count) {
    EmbeddingVector frame_sum(stream.dim, 0.0);
    for (std::int64_t i = first; i < first + count; ++i) {
        add_in_place(frame_sum, stream.frames[static_cast<std::size_t>(i)]);
    }
    EmbeddingVector embedding = normalized(frame_sum);
    const std::int64_t start =
        std::max(stream.frame_start_ms(static_cast<std::size_t>(first)), region.start_ms);
    const std::int64_t end =
        std::min(stream.frame_end_ms(static_cast<std::size_t>(first + count - 1)), region.end_ms);
    return EmbeddedSegment{Segment(start, end), stream.channel, std::move(embedding),
                           std::move(frame_sum), first, count};
}

void pair_run(const EmbeddingStream& stream, const Segment& region, std::int64_t first,
              std::int64_t count, std::vector<EmbeddedSegment>& out) {
    std::int64_t i = first;
    std::int64_t remaining = count;
    while (remaining > 0) {
        std::int64_t take = remaining >= 2 ? 2 : 1;
        if (remaining == 3) {
            take = 3;
        }
        out.push_back(make_segment(stream, region, i, take));
        i += take;
        remaining -= take;
    }
}

bool touching(const EmbeddedSegment& a, const EmbeddedSegment& b) {
    return a.segment.end_ms == b.segment.start_ms;
}

}  // namespace

std::vector<EmbeddedSegment> initial_segments(const EmbeddingStream& stream,
                                              const Segment& region) {
    std::vector<EmbeddedSegment> out;
    if (stream.frames.empty()) {
        return out;
    }
    const auto frame_count = static_cast<std::int64_t>(stream.frames.size());
    std::int64_t run_start = -1;
    for (std::int64_t i = 0; i <= frame_count; ++i) {
        const bool active =
            i < frame_count &&
            stream.frame_center_ms(static_cast<std::size_t>(i)) >= region.start_ms &&
            stream.frame_center_ms(static_cast<std::size_t>(i)) < region.end_ms &&
            l2_norm(stream.frames[static_cast<std::size_t>(i)]) != 0.0;
        if (active && run_start < 0) {
            run_start = i;
        } else if (!active && run_start >= 0) {
            pair_run(stream, region, run_start, i - run_start, out);
            run_start = -1;
        }
    }
    return out;
}

std::vector<EmbeddedSegment> ahc_merge_neighbors(std::vector<EmbeddedSegment> segments,
                                                 const SegmentationConfig& cfg) {
    if (segments.size() < 2) {
        return segments;
    }
    // similarity[i] pairs segment i with i+1; -2 marks non-touching pairs.
    std::vector<double> similarity(segments.size() - 1);
    const auto pair_similarity = [&](std::size_t i) {
        return touching(segments[i], segments[i + 1])
                   ? cosine_similarity(segments[i].embedding, segments[i + 1].embedding)
                   : -2.0;
    };
    for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
        similarity[i] = pair_similarity(i);
    }
    while (segments.size() > 1) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < similarity.size(); ++i) {
            if (similarity[i] > similarity[best]) {
                best = i;
            }
        }
        if (similarity[best] < cfg.merge_threshold) {
            break;
        }
        EmbeddedSegment& left = segments[best];
        const EmbeddedSegment& right = segments[best + 1];
        left.segment = Segment(left.segment.start_ms, right.segment.end_ms);
        add_in_place(left.frame_sum, right.frame_sum);
        left.embedding = normalized(left.frame_sum);
        left.frame_count += right.frame_count;
        segments.erase(segments.begin() + static_cast<std::ptrdiff_t>(best) + 1);
        similarity.erase(similarity.begin() + static_cast<std::ptrdiff_t>(best));
        if (best > 0) {
            similarity[best - 1] = pair_similarity(best - 1);
        }
        if (best < similarity.size()) {
            similarity[best] = pair_similarity(best);
        }
    }
    return segments;
}

std::vector<EmbeddedSegment> segment_stream(const EmbeddingStream& stream,
                                            const Timeline& regions,
                                            const SegmentationConfig& cfg) {
    std::vector<EmbeddedSegment> out;
    for (const Segment& region : regions.segments()) {
        std::vector<EmbeddedSegment> segs =
            ahc_merge_neighbors(initial_segments(stream, region), cfg);
        out.insert(out.end(), std::make_move_iterator(segs.begin()),
                   std::make_move_iterator(segs.end()));
    }
    return out;
}

}  // namespace diar
